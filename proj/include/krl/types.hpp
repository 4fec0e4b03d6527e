#pragma once

#include <Eigen/Core>

namespace krl {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

}  // namespace krl
