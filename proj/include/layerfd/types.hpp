#pragma once

#include <Eigen/Core>

#include <functional>

namespace layerfd {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using ScalarFn = std::function<Scalar(Scalar)>;

using Index = Eigen::Index;

}  // namespace layerfd
