#include "hardy/randomness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hardy/io.hpp"
#include "hardy/npa.hpp"

namespace hardy::randomness {

double guessing_probability(const Behavior& b, Settings settings) {
  const auto row = b.row(settings);
  return *std::max_element(row.begin(), row.end());
}

double global_guessing_probability(const Behavior& b) {
  return *std::max_element(b.table().begin(), b.table().end());
}

RandomnessReport certified_bits(const HardyParams& params, Settings settings, bool in_self_test_region) {
  RandomnessReport rep;
  rep.params = {params.r(), params.s(), params.t()};
  rep.settings = settings;
  rep.guess_prob = guessing_probability(hardy_behavior(params), settings);
  rep.bits = -std::log2(rep.guess_prob);
  rep.certified = in_self_test_region;
  return rep;
}

double IsoHardySlice::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const double dr = members[i].r - members[j].r, ds = members[i].s - members[j].s,
                   dt = members[i].t - members[j].t;
      d = std::max(d, std::sqrt(dr * dr + ds * ds + dt * dt));
    }
  return d;
}

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta <= npa::kMaxDelta))
    throw DomainError("delta must lie in (0, " + io::format_double(npa::kMaxDelta) + "]");
}

}  // namespace

IsoHardySlice iso_hardy_slice(double delta, std::span<const cover::CoverResult> classified, double tolerance,
                              bool region_only) {
  check_delta(delta);
  if (!(tolerance > 0.0)) throw DomainError("slice tolerance must be positive");
  IsoHardySlice slice;
  slice.delta = delta;
  slice.tolerance = tolerance;
  for (const auto& c : classified) {
    if (std::abs(c.omega - delta) > tolerance) continue;
    if (region_only && !c.in_region) continue;
    slice.members.push_back(c.point);
  }
  return slice;
}

RegionReport randomness_region(double delta, std::span<const cover::CoverResult> classified, Settings settings,
                               double tolerance) {
  const IsoHardySlice slice = iso_hardy_slice(delta, classified, tolerance, true);
  RegionReport rep;
  rep.delta = delta;
  rep.settings = settings;
  rep.empty = slice.members.empty();
  rep.diameter = slice.diameter();
  for (const auto& p : slice.members) rep.members.push_back(certified_bits(HardyParams(p.r, p.s, p.t), settings, true));
  if (!rep.empty) {
    const auto [lo, hi] = std::minmax_element(rep.members.begin(), rep.members.end(),
                                              [](const auto& a, const auto& b) { return a.bits < b.bits; });
    rep.min_bits = lo->bits;
    rep.max_bits = hi->bits;
  }
  return rep;
}

RegionReport randomness_region(double delta, const GridSpec& grid, Settings settings,
                               const cover::CoverOptions& options, double tolerance) {
  check_delta(delta);
  const auto classified = cover::self_test_region(grid, options);
  return randomness_region(delta, classified, settings, tolerance);
}

double uniform_row_r(double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("s must lie in (0,1)");
  return (3.0 - std::sqrt(4.0 / s - 3.0)) / (2.0 * s);
}

namespace {

// Worst deviation of the seven cells other than p_H in row (0,0,0) from
// their uniform share (1 - p_H)/7; +inf outside the domain.
double row000_deviation(double r, double s, double t) {
  if (!HardyParams::in_domain(r, s, t)) return std::numeric_limits<double>::infinity();
  const auto row = hardy_behavior(HardyParams(r, s, t)).row({0, 0, 0});
  const double share = (1.0 - row[0]) / 7.0;
  double worst = 0.0;
  for (std::size_t k = 1; k < 8; ++k) worst = std::max(worst, std::abs(row[k] - share));
  return worst;
}

}  // namespace

UniformityReport row_uniformity_analysis() {
  UniformityReport rep;
  rep.r_at_four_sevenths = uniform_row_r(4.0 / 7.0);

  const HardyParams point(7.0 / 8.0, 4.0 / 7.0, 4.0 / 7.0);
  const auto row = hardy_behavior(point).row({1, 1, 1});
  for (std::size_t k = 0; k < 7; ++k) rep.row111_max_deviation = std::max(rep.row111_max_deviation, std::abs(row[k] - 1.0 / 7.0));
  rep.row111_last_cell_zero = row[7] == 0.0;

  // Grid over (r, s, u) with t = u (1-s)/(1-rs), then compass refinement.
  constexpr int n = 40;
  double best = std::numeric_limits<double>::infinity();
  double br = 0.5, bs = 0.5, bu = 0.5;
  auto eval = [](double r, double s, double u) { return row000_deviation(r, s, u * (1 - s) / (1 - r * s)); };
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        const double v = eval(i / (n + 1.0), j / (n + 1.0), k / (n + 1.0));
        if (v < best) best = v, br = i / (n + 1.0), bs = j / (n + 1.0), bu = k / (n + 1.0);
      }
  for (double step = 1.0 / (n + 1); step > 1e-10;) {
    bool improved = false;
    for (int axis = 0; axis < 3; ++axis)
      for (double dir : {1.0, -1.0}) {
        double c[3] = {br, bs, bu};
        c[axis] += dir * step;
        if (c[axis] <= 0.0 || c[axis] >= 1.0) continue;
        const double v = eval(c[0], c[1], c[2]);
        if (v < best) best = v, br = c[0], bs = c[1], bu = c[2], improved = true;
      }
    if (!improved) step *= 0.5;
  }
  rep.row000_best_deviation = best;
  rep.row000_best_point = {br, bs, bu * (1 - bs) / (1 - br * bs)};
  rep.row000_uniform_impossible = best > 1e-3;
  return rep;
}

std::string to_csv(const std::vector<RegionReport>& regions) {
  std::string out = "delta,r,s,t,x,y,z,guess_prob,bits,certified\n";
  for (const auto& reg : regions) {
    std::vector<const RandomnessReport*> rows;
    for (const auto& m : reg.members) rows.push_back(&m);
    std::stable_sort(rows.begin(), rows.end(), [](const RandomnessReport* a, const RandomnessReport* b) {
      if (a->params.r != b->params.r) return a->params.r < b->params.r;
      if (a->params.s != b->params.s) return a->params.s < b->params.s;
      return a->params.t < b->params.t;
    });
    for (const auto* m : rows) {
      out += io::format_double(reg.delta) + ',' + io::format_double(m->params.r) + ',' +
             io::format_double(m->params.s) + ',' + io::format_double(m->params.t) + ',' +
             std::to_string(m->settings.x) + ',' + std::to_string(m->settings.y) + ',' +
             std::to_string(m->settings.z) + ',' + io::format_double(m->guess_prob) + ',' +
             io::format_double(m->bits) + ',' + (m->certified ? "1" : "0") + '\n';
    }
  }
  return out;
}

}  // namespace hardy::randomness
