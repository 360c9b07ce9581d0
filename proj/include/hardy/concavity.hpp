#pragma once

#include <array>
#include <string>
#include <vector>

#include "hardy/behavior.hpp"
#include "hardy/jacobi.hpp"

namespace hardy {

struct Point3 {
  double r = 0.0;
  double s = 0.0;
  double t = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

struct AxisSpec {
  double min = 0.01;
  double max = 0.99;
  int count = 60;

  double value(int i) const;
};

/// Tensor grid over (r, s, t). Points are ordered with t fastest.
struct GridSpec {
  AxisSpec r;
  AxisSpec s;
  AxisSpec t;

  /// `n` points per axis on [margin, 1 - margin].
  static GridSpec cube(int n, double margin = 0.01);

  void validate() const;  // throws DomainError
  std::size_t size() const;
  Point3 point(std::size_t k) const;
  std::vector<Point3> points() const;
};

namespace concavity {

enum class Scheme { Analytic, FiniteDifference };

/// Analytic Hessian of omega(r, s, t); defined wherever rs, rt < 1.
linalg::Mat3 hessian_at(const Point3& x);

/// Central differences of omega with step `step`. Throws DomainError when
/// x +- step leaves the open unit cube.
linalg::Mat3 hessian_fd(const Point3& x, double step = 1e-4);

/// Hessian of the Hardy probability at valid parameters.
linalg::Mat3 hessian(const HardyParams& params, Scheme scheme = Scheme::Analytic, double step = 1e-4);

enum class Label { StrictlyConcave, StrictlyConvex, Indefinite, Degenerate };

std::string to_string(Label l);

struct HessianClassification {
  Point3 point;
  std::array<double, 3> eigenvalues{};
  Label label = Label::Degenerate;
};

Label label_from_eigenvalues(const std::array<double, 3>& ascending, double zero_threshold);

HessianClassification classify_point(const Point3& x, double zero_threshold = 1e-9);

/// One classification per grid point, in grid order.
std::vector<HessianClassification> classify_grid(const GridSpec& grid, double zero_threshold = 1e-9,
                                                 unsigned threads = 0);

std::string to_csv(const std::vector<HessianClassification>& rows);

/// 3-D scatter of the strictly concave points read from `csv_name`.
std::string gnuplot_script(const std::string& csv_name);

}  // namespace concavity
}  // namespace hardy
