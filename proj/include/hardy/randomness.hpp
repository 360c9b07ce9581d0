#pragma once

#include <span>
#include <string>
#include <vector>

#include "hardy/behavior.hpp"
#include "hardy/cover.hpp"

namespace hardy::randomness {

struct RandomnessReport {
  Point3 params;
  Settings settings;
  double guess_prob = 1.0;
  double bits = 0.0;
  bool certified = false;  // params lie in the self-test region
};

/// Largest of the eight outcome probabilities at `settings`.
double guessing_probability(const Behavior& b, Settings settings);

/// Largest entry of the whole table; a more conservative figure than the
/// per-settings value.
double global_guessing_probability(const Behavior& b);

/// bits = -log2 of the guessing probability of the Hardy behavior.
RandomnessReport certified_bits(const HardyParams& params, Settings settings, bool in_self_test_region);

struct IsoHardySlice {
  double delta = 0.0;
  double tolerance = 1e-4;
  std::vector<Point3> members;

  double diameter() const;
};

/// Points of `classified` with |omega - delta| <= tolerance, restricted to
/// the self-test region unless `region_only` is false.
IsoHardySlice iso_hardy_slice(double delta, std::span<const cover::CoverResult> classified,
                              double tolerance = 1e-4, bool region_only = true);

struct RegionReport {
  double delta = 0.0;
  Settings settings;
  bool empty = true;
  double min_bits = 0.0;
  double max_bits = 0.0;
  double diameter = 0.0;
  std::vector<RandomnessReport> members;
};

RegionReport randomness_region(double delta, std::span<const cover::CoverResult> classified, Settings settings,
                               double tolerance = 1e-4);

/// Convenience form that classifies `grid` first.
RegionReport randomness_region(double delta, const GridSpec& grid, Settings settings,
                               const cover::CoverOptions& options = {}, double tolerance = 1e-4);

/// r(s) = (3 - sqrt(4/s - 3)) / (2s), which equalizes the (1,1,1) row for
/// s = t.
double uniform_row_r(double s);

struct UniformityReport {
  double r_at_four_sevenths = 0.0;
  double row111_max_deviation = 0.0;   // from 1/7 over the seven nonzero cells
  bool row111_last_cell_zero = false;  // structural zero, so 1/8 is unattainable
  double row000_best_deviation = 0.0;  // min over the domain of the worst deviation from (1 - p_H)/7
  Point3 row000_best_point;
  bool row000_uniform_impossible = false;
};

UniformityReport row_uniformity_analysis();

/// CSV `delta,r,s,t,x,y,z,guess_prob,bits,certified`.
std::string to_csv(const std::vector<RegionReport>& regions);

}  // namespace hardy::randomness
