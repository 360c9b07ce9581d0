#include "hardy/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hardy::linalg {

SymmetricEigen3 jacobi_eigen(const Mat3& input, int max_sweeps) {
  Mat3 a{};
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) a[i][j] = a[j][i] = input[i][j];
  Mat3 v{};
  for (int i = 0; i < 3; ++i) v[i][i] = 1.0;

  SymmetricEigen3 out;
  for (; out.sweeps < max_sweeps; ++out.sweeps) {
    double off = 0.0, scale = 0.0;
    for (int i = 0; i < 3; ++i) {
      scale += a[i][i] * a[i][i];
      for (int j = i + 1; j < 3; ++j) off += a[i][j] * a[i][j];
    }
    if (off == 0.0 || off <= 1e-34 * scale) break;

    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        a[p][q] = a[q][p] = 0.0;
        for (int k = 0; k < 3; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }

  std::array<int, 3> order{};
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a[i][i] < a[j][j]; });
  for (int k = 0; k < 3; ++k) {
    out.values[k] = a[order[k]][order[k]];
    for (int i = 0; i < 3; ++i) out.vectors[i][k] = v[i][order[k]];
  }
  return out;
}

Mat3 reconstruct(const SymmetricEigen3& e) {
  Mat3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) m[i][j] += e.vectors[i][k] * e.values[k] * e.vectors[j][k];
  return m;
}

}  // namespace hardy::linalg
