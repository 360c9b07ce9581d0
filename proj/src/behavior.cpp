#include "hardy/behavior.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace hardy {

Outcome outcome_from_sign(int sign) {
  if (sign == 1) return Outcome::Plus;
  if (sign == -1) return Outcome::Minus;
  throw DomainError("outcome must be +1 or -1, got " + std::to_string(sign));
}

Settings parse_settings(const std::string& text) {
  std::array<int, 3> v{};
  std::istringstream in(text);
  std::string item;
  int n = 0;
  while (std::getline(in, item, ',')) {
    if (n == 3) throw DomainError("settings must have three entries: " + text);
    if (item != "0" && item != "1") throw DomainError("setting must be 0 or 1: " + text);
    v[static_cast<std::size_t>(n++)] = item == "1" ? 1 : 0;
  }
  if (n != 3) throw DomainError("settings must have three entries: " + text);
  return {v[0], v[1], v[2]};
}

std::string to_string(const Settings& s) {
  return std::to_string(s.x) + "," + std::to_string(s.y) + "," + std::to_string(s.z);
}

Behavior::Behavior(const Table& table, double tol) : table_(table) {
  for (double p : table_) {
    if (!std::isfinite(p) || p < -tol || p > 1.0 + tol) {
      throw DomainError("behavior entry outside [0,1]: " + std::to_string(p));
    }
  }
  if (normalization_error(*this) > tol) {
    throw DomainError("behavior rows are not normalized");
  }
}

Behavior make_unchecked(const Behavior::Table& table) { return Behavior(table, Behavior::Unchecked{}); }

std::array<double, 8> Behavior::row(Settings s) const {
  std::array<double, 8> out{};
  const std::size_t base = index(s.x, s.y, s.z, 0, 0, 0);
  std::copy_n(table_.begin() + static_cast<std::ptrdiff_t>(base), 8, out.begin());
  return out;
}

double Behavior::marginal(unsigned parties, std::array<int, 3> outcomes,
                          std::array<int, 3> settings) const {
  double sum = 0.0;
  for (int a = 0; a < 2; ++a) {
    if ((parties & 1u) && a != outcomes[0]) continue;
    for (int b = 0; b < 2; ++b) {
      if ((parties & 2u) && b != outcomes[1]) continue;
      for (int c = 0; c < 2; ++c) {
        if ((parties & 4u) && c != outcomes[2]) continue;
        sum += (*this)(settings[0], settings[1], settings[2], a, b, c);
      }
    }
  }
  return sum;
}

double Behavior::p_ab(int a, int b, int x, int y, int z_other) const {
  return marginal(3u, {a, b, 0}, {x, y, z_other});
}
double Behavior::p_bc(int b, int c, int y, int z, int x_other) const {
  return marginal(6u, {0, b, c}, {x_other, y, z});
}
double Behavior::p_ac(int a, int c, int x, int z, int y_other) const {
  return marginal(5u, {a, 0, c}, {x, y_other, z});
}

Behavior Behavior::mix(const Behavior& lhs, const Behavior& rhs, double theta) {
  Table t{};
  for (std::size_t i = 0; i < kSize; ++i) t[i] = theta * lhs.table_[i] + (1.0 - theta) * rhs.table_[i];
  return Behavior(t, Unchecked{});
}

Behavior uniform_behavior() {
  Behavior::Table t{};
  t.fill(0.125);
  return make_unchecked(t);
}

Behavior deterministic_behavior(const std::array<std::array<Outcome, 2>, 3>& outputs) {
  Behavior::Table t{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        t[Behavior::index(x, y, z, index_of(outputs[0][static_cast<std::size_t>(x)]),
                          index_of(outputs[1][static_cast<std::size_t>(y)]),
                          index_of(outputs[2][static_cast<std::size_t>(z)]))] = 1.0;
  return make_unchecked(t);
}

bool HardyParams::in_domain(double r, double s, double t) {
  if (!(r > 0.0 && r < 1.0)) return false;
  if (!(s > 0.0 && s < 1.0)) return false;
  return t > 0.0 && t < (1.0 - s) / (1.0 - r * s);
}

HardyParams::HardyParams(double r, double s, double t) : r_(r), s_(s), t_(t) {
  if (!in_domain(r, s, t)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "(r,s,t) = (" << r << ", " << s << ", " << t
        << ") outside r in (0,1), s in (0,1), t in (0,(1-s)/(1-rs))";
    throw DomainError(msg.str());
  }
  if (!(h() > 0.0)) throw DomainError("h = 1 - s - t + rst must be positive");
}

double omega(double r, double s, double t) {
  const double h = 1.0 - s - t + r * s * t;
  return r * r * (1.0 - r) * s * t * h / ((1.0 - r * s) * (1.0 - r * t));
}

double hardy_probability(const HardyParams& p) { return omega(p.r(), p.s(), p.t()); }

namespace {

// Column order of the printed table: +++, -++, +-+, ++-, --+, -+-, +--, ---.
constexpr std::array<std::array<int, 3>, 8> kColumnOutcomes{{
    {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}};

void put_row(Behavior::Table& t, int x, int y, int z, const std::array<double, 8>& row) {
  for (std::size_t k = 0; k < 8; ++k) {
    const auto& o = kColumnOutcomes[k];
    t[Behavior::index(x, y, z, o[0], o[1], o[2])] = row[k];
  }
}

}  // namespace

Behavior hardy_behavior(const HardyParams& p) {
  const double r = p.r(), s = p.s(), t = p.t(), h = p.h();
  const double q = 1.0 - r;
  const double us = 1.0 - r * s;
  const double ut = 1.0 - r * t;
  const double uu = us * ut;

  Behavior::Table tab{};
  put_row(tab, 0, 0, 0,
          {q * r * r * s * t * h / uu, q * r * t * h / ut, q * r * s * h / us, q * q * r * s * t / uu,
           q * h, q * q * t / ut, q * q * s / us, r});
  put_row(tab, 1, 0, 0,
          {0.0, q * r * t * h / uu, 0.0, 0.0, q * h / us, q * q * t / uu, s, r * (1 - s) * (1 - s) / us});
  put_row(tab, 0, 1, 0,
          {0.0, 0.0, q * r * s * h / uu, 0.0, q * h / ut, t, q * q * s / uu, r * (1 - t) * (1 - t) / ut});
  put_row(tab, 1, 1, 0, {0.0, 0.0, 0.0, r * s * t, q * h / uu, us * t, s * ut, r * h * h / uu});
  put_row(tab, 0, 0, 1,
          {0.0, 0.0, 0.0, q * r * s * t, h / uu, q * us * t, q * s * ut, r * q * (1 - h) * (1 - h) / uu});
  // The last cells of the (1,0,1) and (0,1,1) rows close the normalization:
  // (1-r) r t^2 / (1-rt) and (1-r) r s^2 / (1-rs). Both match the Born rule.
  put_row(tab, 1, 0, 1, {0.0, 0.0, r * s * h / uu, 0.0, h / ut, q * t, q * s / uu, q * r * t * t / ut});
  put_row(tab, 0, 1, 1, {0.0, r * t * h / uu, 0.0, 0.0, h / us, q * t / uu, q * s, q * r * s * s / us});
  put_row(tab, 1, 1, 1,
          {r * r * s * t * h / uu, r * t * h / ut, r * s * h / us, q * r * s * t / uu, h, q * t / ut,
           q * s / us, 0.0});
  return make_unchecked(tab);
}

bool HardyConstraintReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ConstraintCheck& c) { return c.pass; });
}

HardyConstraintReport check_hardy_constraints(const Behavior& b, double tol) {
  HardyConstraintReport rep;
  // Pairwise zeros hold for either setting of the summed-out party in a
  // no-signalling behavior; report the larger of the two.
  const double ab = std::max(b.p_ab(0, 0, 1, 0, 0), b.p_ab(0, 0, 1, 0, 1));
  const double bc = std::max(b.p_bc(0, 0, 1, 0, 0), b.p_bc(0, 0, 1, 0, 1));
  const double ac = std::max(b.p_ac(0, 0, 0, 1, 0), b.p_ac(0, 0, 0, 1, 1));
  const double mmm = b(1, 1, 1, 1, 1, 1);
  rep.checks = {ConstraintCheck{"p_AB(+1,+1|1,0)", ab, std::abs(ab) <= tol},
                ConstraintCheck{"p_BC(+1,+1|1,0)", bc, std::abs(bc) <= tol},
                ConstraintCheck{"p_AC(+1,+1|0,1)", ac, std::abs(ac) <= tol},
                ConstraintCheck{"p(-1,-1,-1|1,1,1)", mmm, std::abs(mmm) <= tol}};
  rep.p_hardy = b(0, 0, 0, 0, 0, 0);
  return rep;
}

NoSignallingReport check_no_signalling(const Behavior& b, double tol) {
  NoSignallingReport rep;
  // For each kept subset of one or two parties, the marginal must take the
  // same value for every setting of the parties summed out.
  for (unsigned mask : {1u, 2u, 4u, 3u, 5u, 6u}) {
    for (int code = 0; code < 64; ++code) {
      std::array<int, 3> outs{(code >> 5) & 1, (code >> 4) & 1, (code >> 3) & 1};
      std::array<int, 3> sets{(code >> 2) & 1, (code >> 1) & 1, code & 1};
      bool canonical = true;
      for (unsigned k = 0; k < 3; ++k)
        if (!(mask & (1u << k)) && (outs[k] != 0 || sets[k] != 0)) canonical = false;
      if (!canonical) continue;

      double lo = 1e300, hi = -1e300;
      for (int free = 0; free < 8; ++free) {
        std::array<int, 3> s = sets;
        for (unsigned k = 0; k < 3; ++k)
          if (!(mask & (1u << k))) s[k] = (free >> k) & 1;
        const double m = b.marginal(mask, outs, s);
        lo = std::min(lo, m);
        hi = std::max(hi, m);
      }
      if (hi - lo > rep.max_deviation || rep.worst.empty()) {
        rep.max_deviation = std::max(rep.max_deviation, hi - lo);
        std::ostringstream where;
        where << "parties=" << ((mask & 1u) ? "A" : "") << ((mask & 2u) ? "B" : "") << ((mask & 4u) ? "C" : "")
              << " outcomes=" << outs[0] << outs[1] << outs[2] << " settings=" << sets[0] << sets[1] << sets[2];
        rep.worst = where.str();
      }
    }
  }
  rep.pass = rep.max_deviation <= tol;
  return rep;
}

double normalization_error(const Behavior& b) {
  double worst = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) {
        const auto row = b.row({x, y, z});
        double sum = 0.0;
        for (double p : row) sum += p;
        worst = std::max(worst, std::abs(sum - 1.0));
      }
  return worst;
}

}  // namespace hardy
