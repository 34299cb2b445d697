#pragma once

#include <string>
#include <vector>

#include "mcv/types.hpp"

namespace mcv {

/// N observations (rows) of an n-dimensional real vector (columns).
///
/// Construction validates N >= 2, n >= 1, finite entries and a column-name
/// list of length n; a DataSet that exists is always well formed.
class DataSet {
 public:
  DataSet(Matrix values, std::vector<std::string> column_names);
  /// Columns are named x1..xn.
  explicit DataSet(Matrix values);

  const Matrix& values() const noexcept { return values_; }
  const std::vector<std::string>& column_names() const noexcept { return names_; }
  Index observations() const noexcept { return values_.rows(); }
  Index dim() const noexcept { return values_.cols(); }
  auto row(Index i) const { return values_.row(i); }

 private:
  Matrix values_;
  std::vector<std::string> names_;
};

std::vector<std::string> default_column_names(Index n);

/// Each row x replaced by A x.
DataSet transform_rows(const DataSet& data, const Matrix& A);
/// Each row x replaced by x + c.
DataSet shift_rows(const DataSet& data, const Vector& c);
/// Empirical independent coupling: the N^2 rows (x_i, x_j) of the product
/// measure of the empirical distribution with itself.
DataSet independent_coupling(const DataSet& data);

}  // namespace mcv
