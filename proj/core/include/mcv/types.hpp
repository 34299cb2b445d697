#pragma once

#include <Eigen/Dense>

namespace mcv {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace mcv
