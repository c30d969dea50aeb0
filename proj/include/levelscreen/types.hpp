#pragma once

#include <Eigen/Core>

namespace levelscreen {

using Scalar = double;
using Index = Eigen::Index;

template <typename T>
using MatrixX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using VectorX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using Matrix = MatrixX<Scalar>;
using Vector = VectorX<Scalar>;
using IntVector = VectorX<int>;

// Missing-value masks; true = value was missing in the source level.
using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace levelscreen
