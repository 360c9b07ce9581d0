#include "hardy/cover.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/io.hpp"
#include "hardy/parallel.hpp"
#include "hardy/simplex.hpp"

namespace hardy::cover {

HullLp upper_hull_lp(std::span<const double> query, std::size_t dim, std::span<const double> points,
                     std::span<const double> values) {
  const std::size_t n = values.size();
  if (points.size() != n * dim || query.size() != dim) throw DomainError("upper_hull_lp: inconsistent sizes");
  HullLp out;
  if (n == 0) return out;

  // Coordinates are shifted to the query so the right-hand side is (0,..,0,1).
  lp::Problem prob(dim + 1, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t d = 0; d < dim; ++d) prob.at(d, k) = points[k * dim + d] - query[d];
    prob.at(dim, k) = 1.0;
    prob.c[k] = values[k];
  }
  prob.b[dim] = 1.0;
  const lp::Solution sol = lp::solve(prob);
  if (sol.status != lp::Status::Optimal) return out;
  out.feasible = true;
  out.value = sol.objective;
  out.weights = sol.x;
  return out;
}

namespace {

HullLp solve_subset(const Point3& x, std::span<const HypographSample> samples, const std::vector<std::size_t>& ids) {
  std::vector<double> pts;
  std::vector<double> vals;
  pts.reserve(ids.size() * 3);
  vals.reserve(ids.size());
  for (std::size_t id : ids) {
    const auto& s = samples[id];
    pts.insert(pts.end(), {s.point.r, s.point.s, s.point.t});
    vals.push_back(s.value);
  }
  const double q[3] = {x.r, x.s, x.t};
  return upper_hull_lp(q, 3, pts, vals);
}

// Index range [lo, hi) of axis values within `w` of v.
std::pair<int, int> axis_window(const AxisSpec& a, double v, double w) {
  int lo = 0, hi = a.count;
  while (lo < a.count && a.value(lo) < v - w) ++lo;
  while (hi > lo && a.value(hi - 1) > v + w) --hi;
  return {lo, hi};
}

}  // namespace

HullLp cover_value_at(const Point3& x, std::span<const HypographSample> samples) {
  std::vector<std::size_t> ids(samples.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  return solve_subset(x, samples, ids);
}

std::vector<Point3> named_points() { return {{0.8392, 0.5436, 0.5436}, {7.0 / 8.0, 4.0 / 7.0, 4.0 / 7.0}}; }

std::vector<HypographSample> sample_grid(const GridSpec& grid, std::span<const Point3> extra) {
  std::vector<HypographSample> out;
  out.reserve(grid.size() + extra.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Point3 p = grid.point(k);
    out.push_back({p, omega(p.r, p.s, p.t)});
  }
  for (const auto& p : extra) out.push_back({p, omega(p.r, p.s, p.t)});
  return out;
}

std::vector<CoverResult> self_test_region(const GridSpec& grid, const CoverOptions& options) {
  grid.validate();
  if (!(options.tol > 0.0)) throw DomainError("cover tolerance must be positive");
  const auto samples = sample_grid(grid, options.extra_points);
  const std::size_t n_grid = grid.size();
  const bool windowed = std::max({grid.r.count, grid.s.count, grid.t.count}) > options.full_grid_limit;

  auto competitors = [&](std::size_t self, bool full) {
    const Point3& x = samples[self].point;
    std::vector<std::size_t> ids;
    auto keep = [&](std::size_t id) {
      if (id != self && !(samples[id].point == x)) ids.push_back(id);
    };
    if (!full) {
      const auto [r0, r1] = axis_window(grid.r, x.r, options.window);
      const auto [s0, s1] = axis_window(grid.s, x.s, options.window);
      const auto [t0, t1] = axis_window(grid.t, x.t, options.window);
      const auto ns = static_cast<std::size_t>(grid.s.count), nt = static_cast<std::size_t>(grid.t.count);
      for (int ir = r0; ir < r1; ++ir)
        for (int is = s0; is < s1; ++is)
          for (int it = t0; it < t1; ++it)
            keep((static_cast<std::size_t>(ir) * ns + static_cast<std::size_t>(is)) * nt + static_cast<std::size_t>(it));
      for (std::size_t id = n_grid; id < samples.size(); ++id) {
        const Point3& p = samples[id].point;
        if (std::abs(p.r - x.r) <= options.window && std::abs(p.s - x.s) <= options.window &&
            std::abs(p.t - x.t) <= options.window)
          keep(id);
      }
    } else {
      for (std::size_t id = 0; id < samples.size(); ++id) keep(id);
    }
    return ids;
  };

  auto classify = [&](std::size_t k, bool full) {
    const auto& sample = samples[k];
    CoverResult res;
    res.point = sample.point;
    res.omega = sample.value;
    const HullLp lp = solve_subset(sample.point, samples, competitors(k, full));
    if (lp.feasible) {
      res.support_margin = sample.value - lp.value;
      res.cover_value = std::max(sample.value, lp.value);
    } else {
      res.cover_value = sample.value;
    }
    res.gap = res.cover_value - res.omega;
    res.on_cover = res.gap <= options.tol;
    res.in_region = res.on_cover && res.omega > 0.0;
    return res;
  };

  std::vector<CoverResult> out(samples.size());
  parallel_for(out.size(), options.threads, [&](std::size_t k) { out[k] = classify(k, !windowed); });
  if (windowed) {
    std::vector<std::size_t> recheck;
    for (std::size_t k = 0; k < out.size(); ++k)
      if (out[k].on_cover) recheck.push_back(k);
    parallel_for(recheck.size(), options.threads,
                 [&](std::size_t i) { out[recheck[i]] = classify(recheck[i], true); });
  }
  return out;
}

double RegionSummary::off_cover_fraction() const {
  return positive == 0 ? 0.0 : static_cast<double>(positive - in_region) / static_cast<double>(positive);
}

RegionSummary summarize(const std::vector<CoverResult>& results, double zero_threshold) {
  RegionSummary sum;
  sum.points = results.size();
  for (const auto& r : results) {
    if (r.omega <= 0.0) continue;
    ++sum.positive;
    const bool concave =
        concavity::classify_point(r.point, zero_threshold).label == concavity::Label::StrictlyConcave;
    if (concave) ++sum.concave_positive;
    if (r.in_region) {
      ++sum.in_region;
      if (concave) ++sum.intersection;
    }
  }
  return sum;
}

std::string to_csv(const std::vector<CoverResult>& results) {
  std::vector<const CoverResult*> rows;
  for (const auto& r : results) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(), [](const CoverResult* a, const CoverResult* b) {
    if (a->point.r != b->point.r) return a->point.r < b->point.r;
    if (a->point.s != b->point.s) return a->point.s < b->point.s;
    return a->point.t < b->point.t;
  });
  std::string out = "r,s,t,omega,cover,gap,in_region\n";
  for (const auto* r : rows) {
    out += io::format_double(r->point.r) + ',' + io::format_double(r->point.s) + ',' +
           io::format_double(r->point.t) + ',' + io::format_double(r->omega) + ',' +
           io::format_double(r->cover_value) + ',' + io::format_double(r->gap) + ',' + (r->in_region ? "1" : "0") +
           '\n';
  }
  return out;
}

std::string gnuplot_script(const std::string& csv_name) {
  std::string s =
      "set datafile separator ','\n"
      "set multiplot layout 1,3\n"
      "set xrange [0:1]\nset yrange [0:1]\nunset key\n";
  const char* names[3][2] = {{"r", "s"}, {"r", "t"}, {"s", "t"}};
  const int cols[3][2] = {{1, 2}, {1, 3}, {2, 3}};
  for (int k = 0; k < 3; ++k) {
    const std::string x = std::to_string(cols[k][0]), y = std::to_string(cols[k][1]);
    s += std::string("set xlabel '") + names[k][0] + "'\nset ylabel '" + names[k][1] + "'\n";
    s += "plot '" + csv_name + "' every ::1 using " + x + ":($7 == 0 ? $" + y +
         " : 1/0) with points pt 7 ps 0.2 lc rgb 'red', \\\n     '" + csv_name + "' every ::1 using " + x +
         ":($7 == 1 ? $" + y + " : 1/0) with points pt 7 ps 0.4 lc rgb 'forest-green'\n";
  }
  return s + "unset multiplot\n";
}

}  // namespace hardy::cover
