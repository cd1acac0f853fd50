#include "globalcube/globalness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <string>

#include "globalcube/errors.hpp"
#include "globalcube/families.hpp"
#include "globalcube/fourier.hpp"

namespace globalcube::globalness {

using cube::Mask;

namespace {

constexpr double kTieTolerance = 1e-12;

// Total order used for every argmax over restrictions: |S|, then S as a
// sorted coordinate list, then x read along S.
bool precedes(const Restriction& a, const Restriction& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.coords() != b.coords()) {
    const Mask diff = a.coords() ^ b.coords();
    return (a.coords() & (diff & -diff)) != 0;
  }
  if (a.values() != b.values()) {
    const Mask diff = a.values() ^ b.values();
    return (a.values() & (diff & -diff)) == 0;
  }
  return false;
}

// Two-pass argmax: the maximum first, then the earliest restriction (in
// `precedes` order) whose value is within kTieTolerance of it.
class Argmax {
 public:
  void offer_max(double v) { max_ = std::max(max_, v); }

  void offer_tie(double v, const Restriction& r) {
    if (v >= max_ * (1.0 - kTieTolerance) && (!set_ || precedes(r, where_))) {
      value_ = v;
      where_ = r;
      set_ = true;
    }
  }

  double value() const { return value_; }
  const Restriction& where() const { return where_; }

 private:
  double max_ = -1.0;
  double value_ = 0.0;
  Restriction where_;
  bool set_ = false;
};

using PatternVisitor = std::function<void(const Restriction&, double relative_measure)>;

// Visits every restriction (S, x) with the relative measure mu(f_{S->x}).
void scan_all_patterns(const CubeFamily& family, double p, const PatternVisitor& visit) {
  const int n = family.dim();
  std::vector<std::size_t> pow3(n + 1, 1);
  for (int i = 1; i <= n; ++i) pow3[i] = pow3[i - 1] * 3;
  // Ternary digit per coordinate: 0 fixed to 0, 1 fixed to 1, 2 free.
  std::vector<double> mass(pow3[n], 0.0);
  for (Mask x : family.members()) {
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
      if ((x >> i) & 1U) idx += pow3[i];
    mass[idx] = cube::point_mass(x, n, p);
  }
  for (int i = 0; i < n; ++i) {
    for (std::size_t idx = 0; idx < mass.size(); ++idx)
      if ((idx / pow3[i]) % 3 == 2) mass[idx] = mass[idx - 2 * pow3[i]] + mass[idx - pow3[i]];
  }
  for (std::size_t idx = 0; idx < mass.size(); ++idx) {
    Mask coords = 0, values = 0;
    std::size_t rest = idx;
    for (int i = 0; i < n; ++i, rest /= 3) {
      const std::size_t digit = rest % 3;
      if (digit != 2) coords |= Mask{1} << i;
      if (digit == 1) values |= Mask{1} << i;
    }
    Restriction r(coords, values);
    visit(r, mass[idx] / cube::subcube_mass(r, p));
  }
}

// Monotone shortcut: only S -> 1 patterns, via a superset-sum transform.
void scan_set_to_one(const CubeFamily& family, double p, const PatternVisitor& visit) {
  const int n = family.dim();
  std::vector<double> mass(std::size_t{1} << n, 0.0);
  for (Mask x : family.members()) mass[x] = cube::point_mass(x, n, p);
  for (int i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t s = 0; s < mass.size(); ++s)
      if (!(s & bit)) mass[s] += mass[s | bit];
  }
  for (std::size_t s = 0; s < mass.size(); ++s) {
    Restriction r(static_cast<Mask>(s), static_cast<Mask>(s));
    visit(r, mass[s] / cube::subcube_mass(r, p));
  }
}

bool scan(const CubeFamily& family, double p, const PatternVisitor& visit) {
  if (family.dim() <= kFullScanMaxDim) {
    scan_all_patterns(family, p, visit);
    return true;
  }
  if (!cube::is_monotone(family))
    throw ResourceGuardError("restriction scans above n = " + std::to_string(kFullScanMaxDim) +
                             " require a monotone family");
  scan_set_to_one(family, p, visit);
  return false;
}

}  // namespace

GlobalnessCertificate certify_globalness(const CubeFamily& family, const BiasedMeasure& m) {
  if (family.empty()) throw PreconditionError("globalness of the empty family is undefined");
  GlobalnessCertificate cert;
  cert.mu = cube::measure(family, m);
  cert.worst_ratio.assign(family.dim() + 1, 0.0);
  std::vector<double> gs;
  std::vector<Restriction> where;
  cert.full_scan = scan(family, m.p(), [&](const Restriction& r, double rel) {
    const double ratio = rel / cert.mu;
    const int k = r.size();
    if (ratio > cert.worst_ratio[k]) cert.worst_ratio[k] = ratio;
    // The empty restriction contributes g = 1, which makes g_min >= 1.
    gs.push_back(k == 0 ? 1.0 : std::pow(ratio, 1.0 / k));
    where.push_back(r);
  });
  Argmax best;
  for (double g : gs) best.offer_max(g);
  for (std::size_t i = 0; i < gs.size(); ++i) best.offer_tie(gs[i], where[i]);
  cert.g_min = best.value();
  cert.witness = best.where();
  return cert;
}

GlobalRestriction extract_global_restriction(const CubeFamily& family, double g,
                                             const BiasedMeasure& m) {
  if (family.empty()) throw PreconditionError("cannot extract a global restriction of the empty family");
  if (!(g > 1.0)) throw PreconditionError("globalness parameter g must exceed 1");
  std::vector<double> g_pow(family.dim() + 1, 1.0);
  for (int k = 1; k <= family.dim(); ++k) g_pow[k] = g_pow[k - 1] * g;
  std::vector<double> scores;
  std::vector<Restriction> where;
  scan(family, m.p(), [&](const Restriction& r, double rel) {
    scores.push_back(rel / g_pow[r.size()]);
    where.push_back(r);
  });
  Argmax best;
  for (double s : scores) best.offer_max(s);
  for (std::size_t i = 0; i < scores.size(); ++i) best.offer_tie(scores[i], where[i]);
  GlobalRestriction out{best.where(), cube::restrict_to(family, best.where()), best.value(),
                        cube::measure(family, m), 0.0};
  out.mu_after = cube::measure(out.restricted, m);
  return out;
}

bool global_restriction_inequality_exact(const CubeFamily& family, const GlobalRestriction& r,
                                         const mpq_class& g, const mpq_class& p) {
  mpq_class g_pow(1);
  for (int k = 0; k < r.restriction.size(); ++k) g_pow *= g;
  return cube::measure_exact(r.restricted, p) >= g_pow * cube::measure_exact(family, p);
}

LevelDAudit level_d_audit(const CubeFamily& family, const BiasedMeasure& m, double g, int d_max) {
  const int n = family.dim();
  if (d_max < 1 || d_max > n)
    throw PreconditionError("d_max must lie in 1.." + std::to_string(n));
  if (!(g > 0.0)) throw PreconditionError("g must be positive");
  LevelDAudit audit;
  audit.mu = cube::measure(family, m);
  if (family.empty() || family.size() == (std::size_t{1} << n))
    throw PreconditionError("level-d audit needs 0 < mu_p(F) < 1 (log(1/mu) degenerates)");
  const auto coeffs = fourier::transform(fourier::RealFunctionOnCube::indicator(family), m);
  const auto weights = fourier::level_weights(coeffs);
  audit.level0 = weights[0];
  const double log_inv = std::log(1.0 / audit.mu);
  for (int d = 1; d <= d_max; ++d) {
    LevelDAuditRow row;
    row.d = d;
    row.lhs = weights[d];
    row.frame = audit.mu * audit.mu * std::pow(g, 2.0 * d) * std::pow(log_inv, d) / std::pow(d, d);
    row.implied_c2 = std::pow(row.lhs / row.frame, 1.0 / d);
    audit.rows.push_back(row);
  }
  return audit;
}

SharpThresholdProbe sharp_threshold_probe(const CubeFamily& family, const BiasedMeasure& m, int t) {
  if (!cube::is_monotone(family)) throw PreconditionError("sharp-threshold probe needs a monotone family");
  if (t < 0) throw PreconditionError("t must be non-negative");
  SharpThresholdProbe probe;
  probe.mu_p = cube::measure(family, m);
  probe.mu_third = cube::measure(family, 1.0 / 3.0);
  probe.threshold_rhs = std::pow(0.99, t);
  probe.p_above_third = m.p() > 1.0 / 3.0;
  return probe;
}

GlobalCrossProbe global_cross_probe(const CubeFamily& a, const CubeFamily& b, const BiasedMeasure& m,
                                    double g, int t, double c3) {
  if (a.dim() != b.dim()) throw StructuralError("cross probe: A and B live in different dimensions");
  if (a.empty()) throw PreconditionError("cross probe: A is empty");
  if (b.empty()) throw PreconditionError("cross probe: B is empty");
  if (t < 1) throw PreconditionError("cross probe: t must be at least 1");
  if (!cube::is_monotone(a)) throw PreconditionError("cross probe: A is not monotone");
  if (!cube::is_monotone(b)) throw PreconditionError("cross probe: B is not monotone");
  GlobalCrossProbe probe;
  probe.g_min_a = certify_globalness(a, m).g_min;
  probe.g_min_b = certify_globalness(b, m).g_min;
  if (probe.g_min_a > g * (1.0 + kTieTolerance))
    throw PreconditionError("cross probe: A is not g-global (g_min = " + std::to_string(probe.g_min_a) + ")");
  if (probe.g_min_b > g * (1.0 + kTieTolerance))
    throw PreconditionError("cross probe: B is not g-global (g_min = " + std::to_string(probe.g_min_b) + ")");
  if (!families::is_cross_t_intersecting(a, b, t))
    throw PreconditionError("cross probe: A and B are not cross " + std::to_string(t) + "-intersecting");
  probe.mu_a = cube::measure(a, m);
  probe.mu_b = cube::measure(b, m);
  probe.min_measure = std::min(probe.mu_a, probe.mu_b);
  probe.rhs = std::exp(-c3 * t / (m.p() * g * g));
  return probe;
}

}  // namespace globalcube::globalness
