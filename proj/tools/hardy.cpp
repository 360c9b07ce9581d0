#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardy/behavior.hpp"
#include "hardy/concavity.hpp"
#include "hardy/cover.hpp"
#include "hardy/io.hpp"
#include "hardy/npa.hpp"
#include "hardy/ontic.hpp"
#include "hardy/parallel.hpp"
#include "hardy/pipeline.hpp"
#include "hardy/quantum.hpp"
#include "hardy/randomness.hpp"

using nlohmann::json;
using namespace hardy;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Common {
  unsigned threads = 0;
  std::string output_dir;
  std::string output;
  std::string format = "json";
  double tol = kProbabilityTolerance;
};

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

std::string resolve_dir(const Common& c) { return c.output_dir.empty() ? env_or("HARDY_OUTPUT_DIR", ".") : c.output_dir; }

void write_out(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
  } else {
    io::write_file(c.output, text);
  }
}

json report_json(const HardyConstraintReport& rep, const NoSignallingReport& ns, double norm_err) {
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"value", c.value}, {"pass", c.pass}});
  return {{"hardy_zeros", checks},
          {"p_hardy", rep.p_hardy},
          {"no_signalling", {{"max_deviation", ns.max_deviation}, {"worst", ns.worst}, {"pass", ns.pass}}},
          {"normalization_error", norm_err}};
}

GridSpec grid_from(int n, double margin) {
  GridSpec g = GridSpec::cube(n, margin);
  g.validate();
  return g;
}

std::vector<double> parse_deltas(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw DomainError("cannot parse delta '" + item + "'");
    }
    if (used != item.size()) throw DomainError("cannot parse delta '" + item + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tripartite Hardy correlations: generation, verification and certification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", HARDY_VERSION);
  Common common;
  app.add_option("--threads", common.threads, "Worker threads (0: HARDY_THREADS or hardware)");
  app.add_option("--output-dir", common.output_dir, "Directory for figure data (default: HARDY_OUTPUT_DIR or .)");

  // behavior
  double r = 0, s = 0, t = 0;
  std::string settings_text;
  auto* behavior = app.add_subcommand("behavior", "Closed-form Hardy behavior and its verification report");
  behavior->add_option("--r", r)->required();
  behavior->add_option("--s", s)->required();
  behavior->add_option("--t", t)->required();
  behavior->add_option("--settings", settings_text, "Print only this row, e.g. 1,1,1");
  behavior->add_option("--format", common.format)->check(CLI::IsMember({"json", "csv"}));
  behavior->add_option("--output,-o", common.output, "Write the table here instead of stdout");
  behavior->add_option("--tol", common.tol)->check(CLI::PositiveNumber);

  // verify
  std::string input;
  auto* verify = app.add_subcommand("verify", "Verify a behavior file, or Born-rule equivalence at (r,s,t)");
  verify->add_option("--input,-i", input, "Behavior as CSV or JSON");
  verify->add_option("--r", r);
  verify->add_option("--s", s);
  verify->add_option("--t", t);
  verify->add_option("--tol", common.tol)->check(CLI::PositiveNumber);

  // ontic-check
  auto* ontic_cmd = app.add_subcommand("ontic-check", "LP optima of p_H over fully-local and NSBL strategies");
  ontic_cmd->add_option("--input,-i", input, "Also test this behavior for predictability failure");
  ontic_cmd->add_option("--output,-o", common.output);

  // concavity
  int grid = 60;
  double margin = 0.01, threshold = 1e-9;
  auto* conc = app.add_subcommand("concavity", "Hessian definiteness scan (fig1.csv)");
  conc->add_option("--grid", grid, "Points per axis")->check(CLI::Range(2, 1000));
  conc->add_option("--margin", margin);
  conc->add_option("--threshold", threshold)->check(CLI::PositiveNumber);

  // cover
  double cover_tol = 1e-8, window = 0.25;
  auto* cov = app.add_subcommand("cover", "Concave cover and self-test region (fig2.csv)");
  cov->add_option("--grid", grid, "Points per axis (default 40)")->check(CLI::Range(2, 1000));
  cov->add_option("--margin", margin);
  cov->add_option("--tol", cover_tol)->check(CLI::PositiveNumber);
  cov->add_option("--window", window)->check(CLI::PositiveNumber);

  // randomness
  std::string deltas_text;
  double slice_tol = 1e-4;
  bool global = false;
  auto* rnd = app.add_subcommand("randomness", "Certified bits at a point, or regions over iso-Hardy slices");
  rnd->add_option("--r", r);
  rnd->add_option("--s", s);
  rnd->add_option("--t", t);
  rnd->add_option("--settings", settings_text, "Settings triple (default 1,1,1)");
  rnd->add_option("--deltas", deltas_text, "Comma-separated p_H values; switches to region mode");
  rnd->add_option("--grid", grid, "Cover grid for region mode (default 40)");
  rnd->add_option("--slice-tol", slice_tol)->check(CLI::PositiveNumber);
  rnd->add_flag("--global", global, "Also report the maximum over all 64 entries");
  rnd->add_option("--output,-o", common.output);

  // npa
  std::string level_text = "local1", export_path;
  bool all_settings = false, max_ph = false;
  auto* npa_cmd = app.add_subcommand("npa", "NPA relaxation: randomness curve or max p_H");
  npa_cmd->add_option("--level", level_text)->check(CLI::IsMember({"level1", "local1", "level2"}));
  npa_cmd->add_option("--deltas", deltas_text, "Comma-separated p_H values");
  npa_cmd->add_option("--settings", settings_text, "Settings triple (default 0,0,0)");
  npa_cmd->add_flag("--all-settings", all_settings, "Guess over all 64 entries");
  npa_cmd->add_flag("--max-ph", max_ph, "Solve max p_H under the zeros instead");
  npa_cmd->add_option("--export-problem", export_path, "Write the first moment problem as JSON");
  npa_cmd->add_option("--output,-o", common.output);

  // pipeline
  std::string config_path;
  std::optional<int> p_conc, p_cover;
  auto* pipe = app.add_subcommand("pipeline", "Figure data for the concavity, cover and randomness stages");
  pipe->add_option("--config", config_path, "JSON config; flags override it");
  pipe->add_option("--concavity-grid", p_conc);
  pipe->add_option("--cover-grid", p_cover);
  pipe->add_option("--deltas", deltas_text);
  pipe->add_option("--level", level_text)->check(CLI::IsMember({"level1", "local1", "level2"}));
  std::string npa_settings_text;
  pipe->add_option("--settings", settings_text, "Region settings (default 1,1,1)");
  pipe->add_option("--npa-settings", npa_settings_text, "NPA curve settings (default 0,0,0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const unsigned threads = common.threads ? common.threads : default_thread_count();
    const Settings settings = settings_text.empty() ? Settings{1, 1, 1} : parse_settings(settings_text);

    if (*behavior) {
      const HardyParams params(r, s, t);
      const Behavior b = hardy_behavior(params);
      const auto rep = check_hardy_constraints(b, common.tol);
      const auto ns = check_no_signalling(b, common.tol);
      const double norm_err = normalization_error(b);
      const bool pass = rep.all_pass() && ns.pass && norm_err <= common.tol;
      if (common.format == "csv") {
        write_out(common, io::behavior_to_csv(b));
        std::cerr << report_json(rep, ns, norm_err).dump(2) << "\n";
      } else {
        json out = report_json(rep, ns, norm_err);
        out["params"] = {{"r", r}, {"s", s}, {"t", t}, {"h", params.h()}};
        out["behavior"] = json::parse(io::behavior_to_json(b));
        if (!settings_text.empty()) {
          json row = json::array();
          for (double v : b.row(settings)) row.push_back(v);
          out["row"] = {{"settings", to_string(settings)}, {"order", "+++,++-,+-+,+--,-++,-+-,--+,---"}, {"p", row}};
        }
        out["pass"] = pass;
        write_out(common, out.dump(2) + "\n");
      }
      return pass ? kOk : kCheckFailed;
    }

    if (*verify) {
      json out;
      bool pass = true;
      Behavior b;
      if (!input.empty()) {
        const std::string text = io::read_file(input);
        const auto first = text.find_first_not_of(" \t\r\n");
        b = first != std::string::npos && text[first] == '{' ? io::behavior_from_json(text) : io::behavior_from_csv(text);
      } else {
        const HardyParams params(r, s, t);
        b = hardy_behavior(params);
        const Behavior born = born_behavior(hardy_state(params), angles_from_params(params));
        double dev = 0.0;
        for (std::size_t k = 0; k < Behavior::kSize; ++k) dev = std::max(dev, std::abs(born.table()[k] - b.table()[k]));
        out["born_max_deviation"] = dev;
        pass = dev <= 1e-10;
      }
      const auto rep = check_hardy_constraints(b, common.tol);
      const auto ns = check_no_signalling(b, common.tol);
      const double norm_err = normalization_error(b);
      out.update(report_json(rep, ns, norm_err));
      pass = pass && rep.all_pass() && ns.pass && norm_err <= common.tol;
      out["pass"] = pass;
      std::cout << out.dump(2) << "\n";
      return pass ? kOk : kCheckFailed;
    }

    if (*ontic_cmd) {
      const auto fl = ontic::enumerate_fully_local();
      const auto ns = ontic::enumerate_nsbl();
      const auto pairs = ontic::enumerate_bipartite_vertices();
      std::size_t pr = 0;
      double min_pr_chsh = 4.0;
      for (const auto& p : pairs)
        if (p.tag == ontic::BoxTag::PR) {
          ++pr;
          min_pr_chsh = std::min(min_pr_chsh, p.box.max_chsh());
        }
      const auto fl_opt = ontic::max_hardy_over_model(fl);
      const auto ns_opt = ontic::max_hardy_over_model(ns);
      const auto relaxed = ontic::max_hardy_over_model(ns, {false});
      auto support = [](const ontic::StrategySet& set, const ontic::ModelOptimum& opt) {
        json w = json::array();
        for (std::size_t k = 0; k < opt.weights.size(); ++k)
          if (opt.weights[k] > 0.0) w.push_back({{"strategy", set.labels[k]}, {"weight", opt.weights[k]}});
        return w;
      };
      json out = {{"fully_local", {{"strategies", fl.size()}, {"max_p_hardy", fl_opt.value}, {"weights", support(fl, fl_opt)}}},
                  {"nsbl",
                   {{"strategies", ns.size()},
                    {"pair_vertices", pairs.size()},
                    {"pr_vertices", pr},
                    {"min_pr_chsh", min_pr_chsh},
                    {"max_p_hardy", ns_opt.value},
                    {"weights", support(ns, ns_opt)}}},
                  {"nsbl_without_triple_zero", {{"max_p_hardy", relaxed.value}, {"weights", support(ns, relaxed)}}}};
      bool pass = std::abs(fl_opt.value) <= 1e-9 && std::abs(ns_opt.value) <= 1e-9;
      if (!input.empty()) {
        const std::string text = io::read_file(input);
        const auto first = text.find_first_not_of(" \t\r\n");
        const Behavior b =
            first != std::string::npos && text[first] == '{' ? io::behavior_from_json(text) : io::behavior_from_csv(text);
        const auto rep = ontic::check_predictability_failure(b);
        out["predictability"] = {{"observed_p_hardy", rep.observed_p_hardy},
                                 {"model_max", rep.model_max},
                                 {"expressible", rep.expressible}};
      }
      out["pass"] = pass;
      write_out(common, out.dump(2) + "\n");
      return pass ? kOk : kCheckFailed;
    }

    if (*conc) {
      const auto rows = concavity::classify_grid(grid_from(grid, margin), threshold, threads);
      const std::string dir = resolve_dir(common);
      io::write_file(dir + "/fig1.csv", concavity::to_csv(rows));
      io::write_file(dir + "/fig1.gp", concavity::gnuplot_script("fig1.csv"));
      std::size_t counts[4] = {0, 0, 0, 0};
      for (const auto& row : rows) ++counts[static_cast<int>(row.label)];
      json out = {{"points", rows.size()},
                  {"strictly_concave", counts[0]},
                  {"strictly_convex", counts[1]},
                  {"indefinite", counts[2]},
                  {"degenerate", counts[3]},
                  {"csv", dir + "/fig1.csv"}};
      for (const auto& p : cover::named_points()) {
        const auto c = concavity::classify_point(p, threshold);
        out["named_points"].push_back({{"point", {p.r, p.s, p.t}},
                                       {"eigenvalues", c.eigenvalues},
                                       {"label", concavity::to_string(c.label)}});
      }
      std::cout << out.dump(2) << "\n";
      return counts[0] > 0 && counts[2] > 0 ? kOk : kCheckFailed;
    }

    if (*cov) {
      if (cov->count("--grid") == 0) grid = 40;
      cover::CoverOptions opt;
      opt.tol = cover_tol;
      opt.window = window;
      opt.threads = threads;
      opt.extra_points = cover::named_points();
      const auto res = cover::self_test_region(grid_from(grid, margin), opt);
      const std::string dir = resolve_dir(common);
      io::write_file(dir + "/fig2.csv", cover::to_csv(res));
      io::write_file(dir + "/fig2.gp", cover::gnuplot_script("fig2.csv"));
      const auto sum = cover::summarize(res);
      json out = {{"points", sum.points},
                  {"positive", sum.positive},
                  {"in_region", sum.in_region},
                  {"strictly_concave_positive", sum.concave_positive},
                  {"region_and_strictly_concave", sum.intersection},
                  {"off_cover_fraction", sum.off_cover_fraction()},
                  {"csv", dir + "/fig2.csv"}};
      bool named_ok = true;
      for (std::size_t k = res.size() - opt.extra_points.size(); k < res.size(); ++k) {
        out["named_points"].push_back({{"point", {res[k].point.r, res[k].point.s, res[k].point.t}},
                                       {"omega", res[k].omega},
                                       {"gap", res[k].gap},
                                       {"support_margin", res[k].support_margin},
                                       {"in_region", res[k].in_region}});
        named_ok = named_ok && res[k].in_region;
      }
      std::cout << out.dump(2) << "\n";
      return named_ok ? kOk : kCheckFailed;
    }

    if (*rnd) {
      json out;
      if (deltas_text.empty()) {
        const HardyParams params(r, s, t);
        const Point3 x{r, s, t};
        cover::CoverOptions opt;
        opt.threads = threads;
        opt.extra_points = {x};
        const int g = rnd->count("--grid") ? grid : 20;
        const auto res = cover::self_test_region(grid_from(g, 0.01), opt);
        const auto rep = randomness::certified_bits(params, settings, res.back().in_region);
        out = {{"params", {r, s, t}},
               {"settings", to_string(settings)},
               {"guess_prob", rep.guess_prob},
               {"bits", rep.bits},
               {"certified", rep.certified},
               {"cover_grid", g}};
        if (global) {
          const double gp = randomness::global_guessing_probability(hardy_behavior(params));
          out["global"] = {{"guess_prob", gp}, {"bits", -std::log2(gp)}};
        }
      } else {
        cover::CoverOptions opt;
        opt.threads = threads;
        opt.extra_points = cover::named_points();
        const int g = rnd->count("--grid") ? grid : 40;
        const auto res = cover::self_test_region(grid_from(g, 0.01), opt);
        std::vector<randomness::RegionReport> regions;
        for (double d : parse_deltas(deltas_text)) regions.push_back(randomness::randomness_region(d, res, settings, slice_tol));
        for (const auto& reg : regions)
          out["regions"].push_back({{"delta", reg.delta},
                                    {"members", reg.members.size()},
                                    {"min_bits", reg.min_bits},
                                    {"max_bits", reg.max_bits},
                                    {"diameter", reg.diameter},
                                    {"empty", reg.empty}});
        if (!common.output.empty()) io::write_file(common.output, randomness::to_csv(regions));
      }
      std::cout << out.dump(2) << "\n";
      return kOk;
    }

    if (*npa_cmd) {
      const npa::Level level = npa::parse_level(level_text);
      if (max_ph) {
        const auto prob = npa::max_hardy_problem(level);
        if (!export_path.empty()) io::write_file(export_path, npa::problem_to_json(prob));
        const auto sol = npa::solve_sdp(prob);
        json out = {{"level", level_text},
                    {"max_p_hardy", sol.optimum},
                    {"status", sdp::to_string(sol.status)},
                    {"duality_gap", sol.duality_gap},
                    {"min_eigenvalue", sol.min_eigenvalue},
                    {"max_residual", sol.max_residual}};
        std::cout << out.dump(2) << "\n";
        return sol.status == sdp::Status::Optimal ? kOk : kCheckFailed;
      }
      if (deltas_text.empty()) deltas_text = "0.0181";
      const auto deltas = parse_deltas(deltas_text);
      const Settings npa_settings = settings_text.empty() ? Settings{0, 0, 0} : settings;
      if (!export_path.empty())
        io::write_file(export_path,
                       npa::problem_to_json(npa::hardy_moment_problem(deltas.front(), {{0, 0, 0}, npa_settings}, level)));
      const auto curve =
          npa::randomness_curve(deltas, level, all_settings ? std::nullopt : std::optional(npa_settings), threads);
      write_out(common, npa::curve_to_csv(curve));
      for (const auto& pt : curve)
        if (pt.status != sdp::Status::Optimal) return kCheckFailed;
      return kOk;
    }

    if (*pipe) {
      pipeline::Config cfg;
      if (!config_path.empty()) cfg.merge_json(io::read_file(config_path));
      if (p_conc) cfg.concavity_grid = *p_conc;
      if (p_cover) cfg.cover_grid = *p_cover;
      if (!deltas_text.empty()) cfg.deltas = parse_deltas(deltas_text);
      if (pipe->count("--level")) cfg.level = npa::parse_level(level_text);
      if (!settings_text.empty()) cfg.settings = settings;
      if (!npa_settings_text.empty()) cfg.npa_settings = parse_settings(npa_settings_text);
      if (common.threads) cfg.threads = common.threads;
      else if (cfg.threads == 0) cfg.threads = default_thread_count();
      if (!common.output_dir.empty()) cfg.output_dir = common.output_dir;
      else if (const char* env = std::getenv("HARDY_OUTPUT_DIR"); env && *env) cfg.output_dir = env;
      const auto result = pipeline::run(cfg);
      for (const auto& st : result.stages)
        std::cerr << st.name << ": " << st.message << " (" << st.seconds << " s)\n";
      std::cout << result.manifest;
      return result.ok() ? kOk : kCheckFailed;
    }
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
