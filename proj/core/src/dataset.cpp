#include "mcv/dataset.hpp"

#include <cmath>
#include <string>

#include "mcv/errors.hpp"

namespace mcv {

std::vector<std::string> default_column_names(Index n) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

DataSet::DataSet(Matrix values, std::vector<std::string> column_names)
    : values_(std::move(values)), names_(std::move(column_names)) {
  if (values_.rows() < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "a data set needs at least 2 observations, got " + std::to_string(values_.rows()));
  }
  if (values_.cols() < 1) throw Error(ErrorCode::InvalidArgument, "a data set needs at least 1 column");
  if (static_cast<Index>(names_.size()) != values_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "got " + std::to_string(names_.size()) +
                                                  " column names for " + std::to_string(values_.cols()) +
                                                  " columns");
  }
  if (!values_.allFinite()) {
    for (Index i = 0; i < values_.rows(); ++i) {
      for (Index j = 0; j < values_.cols(); ++j) {
        if (!std::isfinite(values_(i, j))) {
          throw Error(ErrorCode::NonFinite, "non-finite value at row " + std::to_string(i + 1) +
                                                ", column '" + names_[static_cast<std::size_t>(j)] + "'");
        }
      }
    }
  }
}

DataSet::DataSet(Matrix values) : DataSet(values, default_column_names(values.cols())) {}

DataSet transform_rows(const DataSet& data, const Matrix& A) {
  if (A.rows() != data.dim() || A.cols() != data.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "transform must be " + std::to_string(data.dim()) + "x" +
                                                  std::to_string(data.dim()));
  }
  return DataSet(data.values() * A.transpose(), data.column_names());
}

DataSet shift_rows(const DataSet& data, const Vector& c) {
  if (c.size() != data.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "shift has length " + std::to_string(c.size()) +
                                                  ", data dimension is " + std::to_string(data.dim()));
  }
  Matrix shifted = data.values().rowwise() + c.transpose();
  return DataSet(std::move(shifted), data.column_names());
}

DataSet independent_coupling(const DataSet& data) {
  const Index N = data.observations();
  const Index n = data.dim();
  Matrix out(N * N, 2 * n);
  for (Index i = 0; i < N; ++i) {
    for (Index j = 0; j < N; ++j) {
      out.block(i * N + j, 0, 1, n) = data.row(i);
      out.block(i * N + j, n, 1, n) = data.row(j);
    }
  }
  auto names = data.column_names();
  for (const auto& name : data.column_names()) names.push_back(name + "'");
  return DataSet(std::move(out), std::move(names));
}

}  // namespace mcv
