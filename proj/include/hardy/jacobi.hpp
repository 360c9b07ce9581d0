#pragma once

#include <array>

namespace hardy::linalg {

using Mat3 = std::array<std::array<double, 3>, 3>;

struct SymmetricEigen3 {
  std::array<double, 3> values{};  // ascending
  Mat3 vectors{};                  // column k is the eigenvector of values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi rotations on a symmetric 3x3 matrix. Only the upper
/// triangle is read.
SymmetricEigen3 jacobi_eigen(const Mat3& a, int max_sweeps = 50);

/// Q diag(values) Q^T, for reconstruction checks.
Mat3 reconstruct(const SymmetricEigen3& e);

}  // namespace hardy::linalg
