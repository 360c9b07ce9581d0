#include <cmath>
#include <optional>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hardy/behavior.hpp"
#include "hardy/concavity.hpp"
#include "hardy/cover.hpp"
#include "hardy/npa.hpp"
#include "hardy/ontic.hpp"
#include "hardy/quantum.hpp"
#include "hardy/randomness.hpp"

namespace py = pybind11;
using namespace hardy;

namespace {

Settings to_settings(const std::array<int, 3>& s) {
  for (int v : s)
    if (v != 0 && v != 1) throw DomainError("settings must be 0 or 1");
  return {s[0], s[1], s[2]};
}

Behavior from_list(const std::vector<double>& p) {
  if (p.size() != Behavior::kSize) throw DomainError("behavior needs 64 entries");
  Behavior::Table t{};
  std::copy(p.begin(), p.end(), t.begin());
  return Behavior(t);
}

std::vector<double> to_list(const Behavior& b) { return {b.table().begin(), b.table().end()}; }

py::dict constraint_dict(const Behavior& b, double tol) {
  const auto rep = check_hardy_constraints(b, tol);
  const auto ns = check_no_signalling(b, tol);
  py::dict zeros;
  for (const auto& c : rep.checks) zeros[py::str(c.name)] = c.value;
  py::dict out;
  out["zeros"] = zeros;
  out["p_hardy"] = rep.p_hardy;
  out["no_signalling_deviation"] = ns.max_deviation;
  out["normalization_error"] = normalization_error(b);
  out["pass"] = rep.all_pass() && ns.pass && normalization_error(b) <= tol;
  return out;
}

}  // namespace

PYBIND11_MODULE(_hardy, m) {
  m.doc() = "Tripartite Hardy correlations";
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("in_domain", &HardyParams::in_domain, py::arg("r"), py::arg("s"), py::arg("t"));
  m.def("omega", &omega, py::arg("r"), py::arg("s"), py::arg("t"));
  m.def(
      "hardy_probability", [](double r, double s, double t) { return hardy_probability(HardyParams(r, s, t)); },
      py::arg("r"), py::arg("s"), py::arg("t"));
  m.def(
      "hardy_behavior", [](double r, double s, double t) { return to_list(hardy_behavior(HardyParams(r, s, t))); },
      py::arg("r"), py::arg("s"), py::arg("t"), "64 probabilities, row-major over (x,y,z,a,b,c), outcome 0 = +1");
  m.def(
      "born_behavior",
      [](double r, double s, double t) {
        const HardyParams p(r, s, t);
        return to_list(born_behavior(hardy_state(p), angles_from_params(p)));
      },
      py::arg("r"), py::arg("s"), py::arg("t"));
  m.def(
      "check_behavior", [](const std::vector<double>& p, double tol) { return constraint_dict(from_list(p), tol); },
      py::arg("p"), py::arg("tol") = kProbabilityTolerance);
  m.def("behavior_index", &Behavior::index, py::arg("x"), py::arg("y"), py::arg("z"), py::arg("a"), py::arg("b"),
        py::arg("c"));

  m.def("max_hardy_fully_local", [] { return ontic::max_hardy_over_model(ontic::enumerate_fully_local()).value; });
  m.def(
      "max_hardy_nsbl",
      [](bool include_triple_zero) {
        return ontic::max_hardy_over_model(ontic::enumerate_nsbl(), {include_triple_zero}).value;
      },
      py::arg("include_triple_zero") = true);
  m.def("nsbl_strategy_count", [] { return ontic::enumerate_nsbl().size(); });

  m.def(
      "hessian",
      [](double r, double s, double t) {
        const auto h = concavity::hessian_at({r, s, t});
        return std::vector<std::vector<double>>{{h[0][0], h[0][1], h[0][2]},
                                                {h[1][0], h[1][1], h[1][2]},
                                                {h[2][0], h[2][1], h[2][2]}};
      },
      py::arg("r"), py::arg("s"), py::arg("t"));
  m.def(
      "classify_point",
      [](double r, double s, double t, double threshold) {
        const auto c = concavity::classify_point({r, s, t}, threshold);
        return py::make_tuple(concavity::to_string(c.label), c.eigenvalues);
      },
      py::arg("r"), py::arg("s"), py::arg("t"), py::arg("threshold") = 1e-9);

  m.def(
      "self_test_region",
      [](int grid, double margin, double tol) {
        cover::CoverOptions opt;
        opt.tol = tol;
        opt.extra_points = cover::named_points();
        const auto res = cover::self_test_region(GridSpec::cube(grid, margin), opt);
        py::list out;
        for (const auto& c : res) {
          py::dict d;
          d["point"] = py::make_tuple(c.point.r, c.point.s, c.point.t);
          d["omega"] = c.omega;
          d["cover"] = c.cover_value;
          d["gap"] = c.gap;
          d["in_region"] = c.in_region;
          out.append(d);
        }
        return out;
      },
      py::arg("grid") = 20, py::arg("margin") = 0.01, py::arg("tol") = 1e-8,
      "Cover classification of a cubic grid followed by the two named points");
  m.def("named_points", [] {
    std::vector<std::array<double, 3>> out;
    for (const auto& p : cover::named_points()) out.push_back({p.r, p.s, p.t});
    return out;
  });

  m.def(
      "guessing_probability",
      [](const std::vector<double>& p, const std::array<int, 3>& s) {
        return randomness::guessing_probability(from_list(p), to_settings(s));
      },
      py::arg("p"), py::arg("settings"));
  m.def(
      "certified_bits",
      [](double r, double s, double t, const std::array<int, 3>& settings) {
        return randomness::certified_bits(HardyParams(r, s, t), to_settings(settings), true).bits;
      },
      py::arg("r"), py::arg("s"), py::arg("t"), py::arg("settings") = std::array<int, 3>{1, 1, 1});

  m.def(
      "npa_max_hardy",
      [](const std::string& level) {
        const auto sol = npa::solve_sdp(npa::max_hardy_problem(npa::parse_level(level)));
        return py::make_tuple(sol.optimum, sdp::to_string(sol.status));
      },
      py::arg("level") = "local1");
  m.def(
      "npa_bits",
      [](double delta, const std::string& level, std::optional<std::array<int, 3>> settings) {
        std::optional<Settings> s;
        if (settings) s = to_settings(*settings);
        const auto curve = npa::randomness_curve({delta}, npa::parse_level(level), s, 1);
        return py::make_tuple(curve.front().bits, sdp::to_string(curve.front().status));
      },
      py::arg("delta"), py::arg("level") = "local1", py::arg("settings") = std::array<int, 3>{1, 1, 1},
      "Certified bits lower bound at p_H = delta; settings=None maximizes over all 64 entries");
}
