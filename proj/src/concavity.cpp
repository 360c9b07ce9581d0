#include "hardy/concavity.hpp"

#include <cmath>

#include "hardy/io.hpp"
#include "hardy/parallel.hpp"

namespace hardy {

double AxisSpec::value(int i) const {
  if (count == 1) return min;
  return min + (max - min) * i / (count - 1);
}

GridSpec GridSpec::cube(int n, double margin) {
  const AxisSpec axis{margin, 1.0 - margin, n};
  return {axis, axis, axis};
}

void GridSpec::validate() const {
  for (const AxisSpec* a : {&r, &s, &t}) {
    if (a->count < 2) throw DomainError("grid axis needs at least 2 points");
    if (!(a->min > 0.0 && a->max < 1.0 && a->min < a->max))
      throw DomainError("grid axis must satisfy 0 < min < max < 1");
  }
}

std::size_t GridSpec::size() const {
  return static_cast<std::size_t>(r.count) * static_cast<std::size_t>(s.count) *
         static_cast<std::size_t>(t.count);
}

Point3 GridSpec::point(std::size_t k) const {
  const auto nt = static_cast<std::size_t>(t.count);
  const auto ns = static_cast<std::size_t>(s.count);
  const int it = static_cast<int>(k % nt);
  const int is = static_cast<int>((k / nt) % ns);
  const int ir = static_cast<int>(k / (nt * ns));
  return {r.value(ir), s.value(is), t.value(it)};
}

std::vector<Point3> GridSpec::points() const {
  std::vector<Point3> out(size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = point(k);
  return out;
}

namespace concavity {

namespace {

struct Grad3 {
  double f;
  std::array<double, 3> d;
  linalg::Mat3 dd;
};

Grad3 product(const Grad3& p, const Grad3& q) {
  Grad3 out{p.f * q.f, {}, {}};
  for (int i = 0; i < 3; ++i) out.d[i] = p.d[i] * q.f + p.f * q.d[i];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out.dd[i][j] = q.f * p.dd[i][j] + p.f * q.dd[i][j] + p.d[i] * q.d[j] + q.d[i] * p.d[j];
  return out;
}

}  // namespace

// omega = a(r) g(r,s,t) u(r,s) v(r,t) with a = r^2 - r^3,
// g = st - s^2 t - s t^2 + r s^2 t^2, u = 1/(1-rs), v = 1/(1-rt).
linalg::Mat3 hessian_at(const Point3& x) {
  const double r = x.r, s = x.s, t = x.t;

  Grad3 a{r * r - r * r * r, {2 * r - 3 * r * r, 0, 0}, {}};
  a.dd[0][0] = 2 - 6 * r;

  Grad3 g{s * t - s * s * t - s * t * t + r * s * s * t * t,
          {s * s * t * t, t - 2 * s * t - t * t + 2 * r * s * t * t, s - s * s - 2 * s * t + 2 * r * s * s * t},
          {}};
  g.dd[0][1] = g.dd[1][0] = 2 * s * t * t;
  g.dd[0][2] = g.dd[2][0] = 2 * s * s * t;
  g.dd[1][1] = -2 * t + 2 * r * t * t;
  g.dd[1][2] = g.dd[2][1] = 1 - 2 * s - 2 * t + 4 * r * s * t;
  g.dd[2][2] = -2 * s + 2 * r * s * s;

  const double u0 = 1.0 / (1.0 - r * s);
  Grad3 u{u0, {s * u0 * u0, r * u0 * u0, 0}, {}};
  u.dd[0][0] = 2 * s * s * u0 * u0 * u0;
  u.dd[0][1] = u.dd[1][0] = u0 * u0 + 2 * r * s * u0 * u0 * u0;
  u.dd[1][1] = 2 * r * r * u0 * u0 * u0;

  const double v0 = 1.0 / (1.0 - r * t);
  Grad3 v{v0, {t * v0 * v0, 0, r * v0 * v0}, {}};
  v.dd[0][0] = 2 * t * t * v0 * v0 * v0;
  v.dd[0][2] = v.dd[2][0] = v0 * v0 + 2 * r * t * v0 * v0 * v0;
  v.dd[2][2] = 2 * r * r * v0 * v0 * v0;

  linalg::Mat3 h = product(product(a, g), product(u, v)).dd;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) h[i][j] = h[j][i] = 0.5 * (h[i][j] + h[j][i]);
  return h;
}

linalg::Mat3 hessian_fd(const Point3& x, double step) {
  const std::array<double, 3> c{x.r, x.s, x.t};
  for (double v : c)
    if (v - step <= 0.0 || v + step >= 1.0) throw DomainError("finite-difference stencil leaves the unit cube");

  auto f = [](std::array<double, 3> p) { return omega(p[0], p[1], p[2]); };
  linalg::Mat3 h{};
  const double f0 = f(c);
  for (int i = 0; i < 3; ++i) {
    auto p = c, m = c;
    p[i] += step;
    m[i] -= step;
    h[i][i] = (f(p) - 2 * f0 + f(m)) / (step * step);
    for (int j = i + 1; j < 3; ++j) {
      auto pp = c, pm = c, mp = c, mm = c;
      pp[i] += step, pp[j] += step;
      pm[i] += step, pm[j] -= step;
      mp[i] -= step, mp[j] += step;
      mm[i] -= step, mm[j] -= step;
      h[i][j] = h[j][i] = (f(pp) - f(pm) - f(mp) + f(mm)) / (4 * step * step);
    }
  }
  return h;
}

linalg::Mat3 hessian(const HardyParams& params, Scheme scheme, double step) {
  const Point3 x{params.r(), params.s(), params.t()};
  return scheme == Scheme::Analytic ? hessian_at(x) : hessian_fd(x, step);
}

std::string to_string(Label l) {
  switch (l) {
    case Label::StrictlyConcave: return "strictly-concave";
    case Label::StrictlyConvex: return "strictly-convex";
    case Label::Indefinite: return "indefinite";
    case Label::Degenerate: return "degenerate";
  }
  return "?";
}

Label label_from_eigenvalues(const std::array<double, 3>& ev, double zero_threshold) {
  for (double v : ev)
    if (std::abs(v) <= zero_threshold) return Label::Degenerate;
  if (ev[2] < 0) return Label::StrictlyConcave;
  if (ev[0] > 0) return Label::StrictlyConvex;
  return Label::Indefinite;
}

HessianClassification classify_point(const Point3& x, double zero_threshold) {
  const auto e = linalg::jacobi_eigen(hessian_at(x));
  return {x, e.values, label_from_eigenvalues(e.values, zero_threshold)};
}

std::vector<HessianClassification> classify_grid(const GridSpec& grid, double zero_threshold, unsigned threads) {
  grid.validate();
  std::vector<HessianClassification> out(grid.size());
  parallel_for(out.size(), threads, [&](std::size_t k) { out[k] = classify_point(grid.point(k), zero_threshold); });
  return out;
}

std::string to_csv(const std::vector<HessianClassification>& rows) {
  std::string out = "r,s,t,l1,l2,l3,label\n";
  for (const auto& row : rows) {
    out += io::format_double(row.point.r) + ',' + io::format_double(row.point.s) + ',' +
           io::format_double(row.point.t);
    for (double v : row.eigenvalues) out += ',' + io::format_double(v);
    out += ',' + to_string(row.label) + '\n';
  }
  return out;
}

std::string gnuplot_script(const std::string& csv_name) {
  return "set datafile separator ','\n"
         "set xlabel 'r'\nset ylabel 's'\nset zlabel 't'\n"
         "set xrange [0:1]\nset yrange [0:1]\nset zrange [0:1]\n"
         "set title 'Strictly concave points of the Hardy probability'\n"
         "splot '" + csv_name + "' every ::1 using 1:2:(strcol(7) eq 'strictly-concave' ? $3 : 1/0) "
         "with points pt 7 ps 0.3 lc rgb 'dark-violet' title 'strictly concave'\n";
}

}  // namespace concavity
}  // namespace hardy
