#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hardy/behavior.hpp"
#include "hardy/concavity.hpp"
#include "hardy/cover.hpp"
#include "hardy/io.hpp"
#include "hardy/npa.hpp"
#include "hardy/ontic.hpp"
#include "hardy/pipeline.hpp"
#include "hardy/quantum.hpp"
#include "hardy/randomness.hpp"

using namespace hardy;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;  // runtime budget, 0 for none
  std::function<Verdict()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Random (r, s, t) strictly inside the domain.
std::vector<HardyParams> random_params(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<HardyParams> out;
  while (static_cast<int>(out.size()) < n) {
    const double r = u(rng), s = u(rng), t = u(rng) * (1 - s) / (1 - r * s);
    if (HardyParams::in_domain(r, s, t)) out.emplace_back(r, s, t);
  }
  return out;
}

double r_for_delta(double delta, double s) {
  double lo = 1e-9, hi = 0.8392;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (omega(mid, s, s) < delta ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Verdict optimal_point() {
  const double p = hardy_probability(HardyParams(0.8392, 0.5436, 0.5436));
  const auto best = maximize_hardy_probability(40);
  const double dev = std::max({std::abs(best.r - 0.8392), std::abs(best.s - 0.5436), std::abs(best.t - 0.5436)});
  return {std::abs(p - 0.0181) <= 5e-4 && dev <= 1e-3,
          fmt("p_H=%.6f (|d|<=5e-4 from 0.0181), argmax=(%.4f,%.4f,%.4f) max|d|=%.1e<=1e-3, value=%.7f", p, best.r,
              best.s, best.t, dev, best.value)};
}

Verdict born_equivalence() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * M_PI);
  double worst = 0.0;
  for (const auto& p : random_params(17, 50)) {
    const Phases phases{ph(rng), ph(rng), ph(rng)};
    const Behavior born = born_behavior(hardy_state(p, phases), angles_from_params(p, phases));
    const Behavior closed = hardy_behavior(p);
    for (std::size_t k = 0; k < Behavior::kSize; ++k)
      worst = std::max(worst, std::abs(born.table()[k] - closed.table()[k]));
  }
  return {worst <= 1e-10, fmt("50 random points with phases, max entry deviation %.2e <= 1e-10", worst)};
}

Verdict zeros_and_no_signalling() {
  double zero = 0.0, ns = 0.0, norm = 0.0;
  bool ok = true;
  for (const auto& p : random_params(29, 50)) {
    const Behavior b = hardy_behavior(p);
    const auto rep = check_hardy_constraints(b, 1e-12);
    for (const auto& c : rep.checks) zero = std::max(zero, std::abs(c.value));
    const auto n = check_no_signalling(b, 1e-12);
    ns = std::max(ns, n.max_deviation);
    norm = std::max(norm, normalization_error(b));
    ok = ok && rep.all_pass() && n.pass && normalization_error(b) <= 1e-12;
  }
  return {ok, fmt("50 random points: max |zero| %.2e, max signalling %.2e, max norm error %.2e (tol 1e-12)", zero, ns,
                  norm)};
}

Verdict ontic_oracles() {
  const auto fl = ontic::max_hardy_over_model(ontic::enumerate_fully_local());
  const auto nsbl_set = ontic::enumerate_nsbl();
  const auto ns = ontic::max_hardy_over_model(nsbl_set);
  const auto relaxed = ontic::max_hardy_over_model(nsbl_set, {false});
  const bool ok = std::abs(fl.value) <= 1e-9 && std::abs(ns.value) <= 1e-9 && relaxed.value > 1e-3;
  return {ok, fmt("FL(64) max p_H=%.1e, NSBL(%zu) max p_H=%.1e (tol 1e-9); without 4th zero %.4f > 1e-3", fl.value,
                  nsbl_set.size(), ns.value, relaxed.value)};
}

Verdict randomness_point() {
  const HardyParams p(7.0 / 8.0, 4.0 / 7.0, 4.0 / 7.0);
  const auto row = hardy_behavior(p).row({1, 1, 1});
  double dev = 0.0;
  for (int k = 0; k < 7; ++k) dev = std::max(dev, std::abs(row[static_cast<std::size_t>(k)] - 1.0 / 7.0));
  const double bits = randomness::certified_bits(p, {1, 1, 1}, true).bits;
  const double ph = hardy_probability(p);
  const bool ok = dev <= 1e-14 && row[7] == 0.0 && std::abs(bits - std::log2(7.0)) <= 1e-9 &&
                  std::abs(ph - 1.0 / 56.0) <= 1e-14;
  return {ok, fmt("row(1,1,1) max|p-1/7|=%.1e, last cell %.1f, bits=%.10f (log2 7 within 1e-9), |p_H-1/56|=%.1e", dev,
                  row[7], bits, std::abs(ph - 1.0 / 56.0))};
}

Verdict self_test_region() {
  cover::CoverOptions opt;
  opt.tol = 1e-8;
  opt.extra_points = cover::named_points();
  const auto res = cover::self_test_region(GridSpec::cube(40, 0.01), opt);
  const auto& a = res[res.size() - 2];
  const auto& b = res[res.size() - 1];
  const auto sum = cover::summarize(res);
  const double off = sum.off_cover_fraction();
  const bool ok = a.in_region && b.in_region && a.gap <= 1e-8 && b.gap <= 1e-8 && off >= 0.2;
  return {ok, fmt("40^3: gaps %.1e and %.1e (<=1e-8), region %zu of %zu positive, off-cover fraction %.3f >= 0.2", a.gap,
                  b.gap, sum.in_region, sum.positive, off)};
}

Verdict concavity_structure() {
  const int n = 60;
  const auto rows = concavity::classify_grid(GridSpec::cube(n, 0.01));
  std::size_t concave = 0, indefinite = 0, asym = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const auto& x = rows[static_cast<std::size_t>((i * n + j) * n + k)];
        const auto& y = rows[static_cast<std::size_t>((i * n + k) * n + j)];
        if (x.label != y.label) ++asym;
        if (x.label == concavity::Label::StrictlyConcave) ++concave;
        if (x.label == concavity::Label::Indefinite) ++indefinite;
      }
  return {concave > 0 && indefinite > 0 && asym == 0,
          fmt("60^3: strictly concave %zu, indefinite %zu, s<->t label mismatches %zu", concave, indefinite, asym)};
}

Verdict npa_soundness() {
  std::vector<std::string> notes;
  bool ok = true;

  const auto mx = npa::solve_sdp(npa::max_hardy_problem(npa::Level::Local1));
  ok = ok && mx.status == sdp::Status::Optimal && mx.optimum >= 0.0181 - 1e-6;
  notes.push_back(fmt("(a) max p_H=%.6f", mx.optimum));

  const std::vector<double> deltas{0.002, 0.004, 0.006, 0.008, 0.01, 0.012, 0.014, 0.016, 0.0179, 0.0181};
  const auto curve = npa::randomness_curve(deltas, npa::Level::Local1, Settings{1, 1, 1});
  double worst = 1e300;
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    const Behavior q = hardy_behavior(HardyParams(r_for_delta(deltas[k], 0.5436), 0.5436, 0.5436));
    const double margin = curve[k].guess_prob - randomness::guessing_probability(q, {1, 1, 1});
    worst = std::min(worst, margin);
    ok = ok && curve[k].status == sdp::Status::Optimal && margin >= -1e-6;
  }
  const double last = curve.back().bits;
  const auto anchor = npa::randomness_curve({0.0181}, npa::Level::Local1, Settings{0, 0, 0}).front();
  ok = ok && std::isfinite(last) && anchor.status == sdp::Status::Optimal && anchor.bits <= 0.2387 + 0.02;
  notes.push_back(fmt("(b) bits(0.0181) %.4f at (1,1,1), %.4f at (0,0,0) <= 0.2387+0.02 upper reference; min "
                      "soundness margin %.1e over 10 deltas",
                      last, anchor.bits, worst));

  auto value = [](npa::Level level, int which) {
    if (which == 0) return npa::solve_sdp(npa::max_hardy_problem(level)).optimum;
    const double d = which == 1 ? 0.01 : 0.0179;
    return npa::randomness_curve({d}, level, Settings{1, 1, 1}).front().guess_prob;
  };
  int mono = 0;
  for (int w = 0; w < 3; ++w) {
    const double l1 = value(npa::Level::Level1, w), lo = value(npa::Level::Local1, w), l2 = value(npa::Level::Level2, w);
    if (l1 >= lo - 1e-6 && lo >= l2 - 1e-6) ++mono;
  }
  ok = ok && mono == 3;
  notes.push_back(fmt("(c) level1>=local1>=level2 on %d/3 problems (tol 1e-6)", mono));

  std::string detail;
  for (const auto& n : notes) detail += (detail.empty() ? "" : "; ") + n;
  return {ok, detail};
}

Verdict determinism(const std::string& work_dir) {
  pipeline::Config cfg;
  cfg.concavity_grid = 16;
  cfg.cover_grid = 12;
  cfg.deltas = {0.005, 0.0179};
  std::vector<std::string> files{"fig1.csv", "fig2.csv", "fig3.csv", "fig3_region.csv", "fig3_npa.csv"};
  std::vector<std::string> a, b;
  for (const auto& [dir, store, threads] : {std::tuple{std::string("/run_a"), &a, 1u}, std::tuple{std::string("/run_b"), &b, 2u}}) {
    cfg.output_dir = work_dir + dir;
    cfg.threads = threads;
    std::filesystem::remove_all(cfg.output_dir);
    if (!pipeline::run(cfg).ok()) return {false, "pipeline stage failed"};
    for (const auto& f : files) store->push_back(io::read_file(cfg.output_dir + "/" + f));
  }
  std::size_t same = 0;
  for (std::size_t k = 0; k < files.size(); ++k) same += a[k] == b[k] ? 1 : 0;
  return {same == files.size(), fmt("%zu/%zu CSV outputs byte-identical across two runs (1 and 2 threads)", same,
                                    files.size())};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string work_dir = "acceptance-out";
  std::vector<int> only;
  app.add_option("--work-dir", work_dir, "Scratch directory for pipeline runs");
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "optimal Hardy point", 10, optimal_point},
      {2, "Born-rule equivalence", 5, born_equivalence},
      {3, "Hardy zeros and no-signalling", 2, zeros_and_no_signalling},
      {4, "local and bilocal LP oracles", 30, ontic_oracles},
      {5, "randomness point", 0, randomness_point},
      {6, "self-test region", 600, self_test_region},
      {7, "concavity structure", 0, concavity_structure},
      {8, "NPA soundness", 300, npa_soundness},
      {9, "pipeline determinism", 0, [&] { return determinism(work_dir); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit_s <= 0 || secs < c.limit_s;
    const bool pass = out.pass && in_time;
    if (!pass) ++failed;
    std::string timing = fmt("%.2fs", secs);
    if (c.limit_s > 0) timing += fmt(" < %.0fs%s", c.limit_s, in_time ? "" : " EXCEEDED");
    std::printf("%s criterion %d %s: %s [%s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), out.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
