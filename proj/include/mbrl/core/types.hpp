#pragma once

#include <Eigen/Core>

namespace mbrl {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
// Row-major so a batch row is a contiguous double span.
using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Wrap an angle into [-pi, pi].
double wrap_to_pi(double theta);

}  // namespace mbrl
