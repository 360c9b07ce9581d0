#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hardy/concavity.hpp"

namespace hardy::cover {

struct HypographSample {
  Point3 point;
  double value = 0.0;  // omega at point
};

/// Result of the upper-hull LP
///   max sum_i l_i v_i  s.t.  sum_i l_i p_i = x, sum_i l_i = 1, l >= 0.
struct HullLp {
  bool feasible = false;
  double value = 0.0;
  std::vector<double> weights;
};

/// Generic-dimension form. `points` holds n rows of `dim` coordinates.
HullLp upper_hull_lp(std::span<const double> query, std::size_t dim, std::span<const double> points,
                     std::span<const double> values);

/// Concave cover of the sampled hypograph at x. Infeasible when x lies
/// outside the convex hull of the sample points.
HullLp cover_value_at(const Point3& x, std::span<const HypographSample> samples);

struct CoverResult {
  Point3 point;
  double omega = 0.0;
  double cover_value = 0.0;
  double gap = 0.0;  // cover_value - omega
  bool on_cover = false;
  bool in_region = false;  // on_cover and omega > 0
  // omega minus the LP optimum without the query's own sample; +inf when
  // the other samples cannot represent the point at all.
  double support_margin = std::numeric_limits<double>::infinity();
};

struct CoverOptions {
  double tol = 1e-8;
  double window = 0.25;     // axis half-width of competitor windows
  int full_grid_limit = 30;  // grids up to this many points per axis use all samples
  unsigned threads = 0;
  std::vector<Point3> extra_points;  // sampled and classified alongside the grid
};

/// The named points of interest: the Hardy optimum and the maximal
/// randomness point.
std::vector<Point3> named_points();

/// Hypograph samples of omega on the grid followed by the extra points.
std::vector<HypographSample> sample_grid(const GridSpec& grid, std::span<const Point3> extra);

/// Classifies every grid point and extra point against the concave cover of
/// all samples. On fine grids each LP first uses a window of nearby
/// competitors; points that pass are re-checked against every sample.
std::vector<CoverResult> self_test_region(const GridSpec& grid, const CoverOptions& options = {});

struct RegionSummary {
  std::size_t points = 0;
  std::size_t positive = 0;          // omega > 0
  std::size_t in_region = 0;         // on cover with omega > 0
  std::size_t concave_positive = 0;  // omega > 0 and strictly concave Hessian
  std::size_t intersection = 0;      // in region and strictly concave

  double off_cover_fraction() const;  // among positive points
};

RegionSummary summarize(const std::vector<CoverResult>& results, double zero_threshold = 1e-9);

/// CSV `r,s,t,omega,cover,gap,in_region`, rows sorted by (r, s, t).
std::string to_csv(const std::vector<CoverResult>& results);

/// Three 2-D projections; green rows are in the region, red are not.
std::string gnuplot_script(const std::string& csv_name);

}  // namespace hardy::cover
