#pragma once

#include <string>
#include <vector>

#include "hardy/behavior.hpp"
#include "hardy/npa.hpp"

namespace hardy::pipeline {

struct Config {
  int concavity_grid = 60;
  int cover_grid = 40;
  double margin = 0.01;
  double zero_threshold = 1e-9;
  double cover_tol = 1e-8;
  double cover_window = 0.25;
  double slice_tol = 1e-4;
  std::vector<double> deltas{0.001, 0.002, 0.004, 0.006, 0.008, 0.01, 0.012, 0.014, 0.016, 0.0179, 0.0181};
  Settings settings{1, 1, 1};      // self-tested region
  Settings npa_settings{0, 0, 0};  // NPA curve
  npa::Level level = npa::Level::Local1;
  unsigned threads = 0;
  std::string output_dir = "hardy-out";

  /// Keys not present in `json_text` keep their current values.
  void merge_json(const std::string& json_text);
  /// Canonical JSON of every field except threads and output_dir.
  std::string to_json() const;
  void validate() const;  // throws DomainError
};

struct StageReport {
  std::string name;
  bool ok = false;
  std::string message;
  double seconds = 0.0;
};

struct Result {
  std::vector<StageReport> stages;
  std::vector<std::string> outputs;  // paths written
  std::string manifest;              // JSON text
  bool ok() const;
};

/// Concavity scan, cover classification, randomness regions and the NPA
/// curve; writes fig1/fig2/fig3 CSVs, gnuplot scripts and manifest.json.
Result run(const Config& config);

}  // namespace hardy::pipeline
