#include "hardy/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include <json.hpp>

#include "hardy/concavity.hpp"
#include "hardy/cover.hpp"
#include "hardy/io.hpp"
#include "hardy/randomness.hpp"

#ifndef HARDY_VERSION
#define HARDY_VERSION "0.0.0"
#endif

namespace hardy::pipeline {

using nlohmann::json;

void Config::merge_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_object()) throw DomainError("pipeline config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "concavity_grid") concavity_grid = value.get<int>();
    else if (key == "cover_grid") cover_grid = value.get<int>();
    else if (key == "margin") margin = value.get<double>();
    else if (key == "zero_threshold") zero_threshold = value.get<double>();
    else if (key == "cover_tol") cover_tol = value.get<double>();
    else if (key == "cover_window") cover_window = value.get<double>();
    else if (key == "slice_tol") slice_tol = value.get<double>();
    else if (key == "deltas") deltas = value.get<std::vector<double>>();
    else if (key == "settings") settings = parse_settings(value.get<std::string>());
    else if (key == "npa_settings") npa_settings = parse_settings(value.get<std::string>());
    else if (key == "level") level = npa::parse_level(value.get<std::string>());
    else if (key == "threads") threads = value.get<unsigned>();
    else if (key == "output_dir") output_dir = value.get<std::string>();
    else throw DomainError("unknown pipeline config key '" + key + "'");
  }
}

std::string Config::to_json() const {
  json j;
  j["concavity_grid"] = concavity_grid;
  j["cover_grid"] = cover_grid;
  j["margin"] = margin;
  j["zero_threshold"] = zero_threshold;
  j["cover_tol"] = cover_tol;
  j["cover_window"] = cover_window;
  j["slice_tol"] = slice_tol;
  j["deltas"] = deltas;
  j["settings"] = to_string(settings);
  j["npa_settings"] = to_string(npa_settings);
  j["level"] = npa::to_string(level);
  return j.dump();
}

void Config::validate() const {
  GridSpec::cube(concavity_grid, margin).validate();
  GridSpec::cube(cover_grid, margin).validate();
  for (double tol : {zero_threshold, cover_tol, cover_window, slice_tol})
    if (!(tol > 0.0)) throw DomainError("tolerances and the cover window must be positive");
  if (deltas.empty()) throw DomainError("at least one delta is required");
  for (double d : deltas)
    if (!(d > 0.0 && d <= npa::kMaxDelta)) throw DomainError("delta " + io::format_double(d) + " outside (0, 0.0182]");
  if (output_dir.empty()) throw DomainError("output directory must not be empty");
}

bool Result::ok() const {
  for (const auto& s : stages)
    if (!s.ok) return false;
  return true;
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string fig3_script() {
  return "set datafile separator ','\n"
         "set xlabel 'p_H'\nset ylabel 'certified bits'\nset key top left\n"
         "plot 'fig3.csv' every ::1 using 1:4:5 with filledcurves lc rgb 'skyblue' title 'self-tested region', \\\n"
         "     'fig3.csv' every ::1 using 1:8 with linespoints dt 3 lc rgb 'purple' title 'NPA bound'\n";
}

}  // namespace

Result run(const Config& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::string dir = config.output_dir;
  Result result;
  json stages = json::object();

  auto stage = [&](const std::string& name, const std::function<json()>& body) {
    StageReport rep{name, false, "", 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      stages[name] = body();
      rep.ok = true;
      rep.message = "ok";
    } catch (const std::exception& e) {
      rep.message = e.what();
      stages[name] = {{"status", "failed"}, {"error", e.what()}};
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.stages.push_back(rep);
  };
  auto emit = [&](const std::string& name, const std::string& text) {
    const std::string path = dir + "/" + name;
    io::write_file(path, text);
    result.outputs.push_back(path);
  };

  stage("concavity", [&] {
    const auto rows = concavity::classify_grid(GridSpec::cube(config.concavity_grid, config.margin),
                                               config.zero_threshold, config.threads);
    std::size_t counts[4] = {0, 0, 0, 0};
    for (const auto& r : rows) ++counts[static_cast<int>(r.label)];
    emit("fig1.csv", concavity::to_csv(rows));
    emit("fig1.gp", concavity::gnuplot_script("fig1.csv"));
    return json{{"status", "ok"},
                {"points", rows.size()},
                {"strictly_concave", counts[0]},
                {"strictly_convex", counts[1]},
                {"indefinite", counts[2]},
                {"degenerate", counts[3]}};
  });

  std::vector<cover::CoverResult> classified;
  stage("cover", [&] {
    cover::CoverOptions opt;
    opt.tol = config.cover_tol;
    opt.window = config.cover_window;
    opt.threads = config.threads;
    opt.extra_points = cover::named_points();
    classified = cover::self_test_region(GridSpec::cube(config.cover_grid, config.margin), opt);
    const auto sum = cover::summarize(classified, config.zero_threshold);
    emit("fig2.csv", cover::to_csv(classified));
    emit("fig2.gp", cover::gnuplot_script("fig2.csv"));
    json named = json::array();
    for (std::size_t k = classified.size() - opt.extra_points.size(); k < classified.size(); ++k) {
      const auto& c = classified[k];
      named.push_back({{"point", {c.point.r, c.point.s, c.point.t}}, {"gap", c.gap}, {"in_region", c.in_region}});
    }
    return json{{"status", "ok"},
                {"points", sum.points},
                {"positive", sum.positive},
                {"in_region", sum.in_region},
                {"strictly_concave_positive", sum.concave_positive},
                {"region_and_strictly_concave", sum.intersection},
                {"off_cover_fraction", sum.off_cover_fraction()},
                {"named_points", named}};
  });

  std::vector<randomness::RegionReport> regions;
  stage("randomness", [&] {
    if (classified.empty()) throw DomainError("cover stage produced no classification");
    for (double d : config.deltas)
      regions.push_back(randomness::randomness_region(d, classified, config.settings, config.slice_tol));
    emit("fig3_region.csv", randomness::to_csv(regions));
    std::size_t empty = 0;
    for (const auto& r : regions) empty += r.empty ? 1 : 0;
    return json{{"status", "ok"}, {"deltas", config.deltas.size()}, {"empty_slices", empty}};
  });

  std::vector<npa::CurvePoint> curve;
  stage("npa", [&] {
    curve = npa::randomness_curve(config.deltas, config.level, config.npa_settings, config.threads);
    emit("fig3_npa.csv", npa::curve_to_csv(curve));
    bool monotone = true;
    for (std::size_t i = 1; i < curve.size(); ++i)
      if (config.deltas[i] >= config.deltas[i - 1] && curve[i].bits < curve[i - 1].bits - 1e-6) monotone = false;
    return json{{"status", "ok"}, {"level", npa::to_string(config.level)}, {"non_decreasing", monotone}};
  });

  stage("fig3", [&] {
    std::string csv = "delta,settings,region_points,min_bits,max_bits,npa_level,npa_settings,npa_bits,npa_status,npa_gap\n";
    for (std::size_t i = 0; i < config.deltas.size(); ++i) {
      csv += io::format_double(config.deltas[i]) + ",\"" + to_string(config.settings) + "\",";
      if (i < regions.size() && !regions[i].empty) {
        csv += std::to_string(regions[i].members.size()) + ',' + io::format_double(regions[i].min_bits) + ',' +
               io::format_double(regions[i].max_bits) + ',';
      } else {
        csv += "0,,,";
      }
      if (i < curve.size()) {
        csv += npa::to_string(curve[i].level) + ",\"" + to_string(config.npa_settings) + "\"," +
               io::format_double(curve[i].bits) + ',' +
               sdp::to_string(curve[i].status) + ',' + io::format_double(curve[i].gap) + '\n';
      } else {
        csv += npa::to_string(config.level) + ",\"" + to_string(config.npa_settings) + "\",,missing,\n";
      }
    }
    emit("fig3.csv", csv);
    emit("fig3.gp", fig3_script());
    return json{{"status", regions.size() == config.deltas.size() && curve.size() == config.deltas.size() ? "ok" : "partial"}};
  });

  const std::string cfg = config.to_json();
  json manifest;
  manifest["tool"] = "hardy";
  manifest["version"] = HARDY_VERSION;
  manifest["config"] = json::parse(cfg);
  manifest["config_hash"] = hex64(io::fnv1a(cfg));
  manifest["threads"] = config.threads;
  manifest["stages"] = stages;
  manifest["partial"] = !result.ok();
  json outputs = json::array();
  for (const auto& p : result.outputs) outputs.push_back(p);
  manifest["outputs"] = outputs;
  manifest["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.manifest = manifest.dump(2) + "\n";
  io::write_file(dir + "/manifest.json", result.manifest);
  result.outputs.push_back(dir + "/manifest.json");
  return result;
}

}  // namespace hardy::pipeline
