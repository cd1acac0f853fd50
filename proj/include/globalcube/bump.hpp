#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "globalcube/permutation.hpp"

namespace globalcube::bump {

using families::PermFamily;

struct BumpReport {
  int best_i = 0;
  int best_j = 0;
  double ratio = 0.0;  // |F_{i->j}| n / |F| at (best_i, best_j)
  std::uint64_t family_size = 0;
  // counts[i-1][j-1] = |F_{i->j}|; table holds the matching ratios.
  std::vector<std::vector<std::uint64_t>> counts;
  std::vector<std::vector<double>> table;
};

/// Exact dictatorship densities; ties go to the lexicographically first (i, j).
BumpReport density_bump(const PermFamily& family);

struct ChainStep {
  int i = 0;
  int j = 0;
  std::uint64_t size_a = 0;  // |A restricted to all constraints so far|
  std::uint64_t size_b = 0;
  double retained_a = 0.0;   // size_a / |A|
  double retained_b = 0.0;
};

struct ChainReport {
  std::vector<ChainStep> steps;
  bool final_containment = false;
  std::optional<bool> cross_intersecting;  // nullopt: check budget exhausted
};

/// Picks t constraints i -> j one at a time, each maximising
/// min(retained_a, retained_b) with lexicographic tie-break. Retained sizes
/// are recounted from the original families at every step.
ChainReport restriction_chain(const PermFamily& a, const PermFamily& b, int t,
                              std::uint64_t pair_budget = 200'000'000);

struct AuditCheck {
  std::string name;
  std::string relation;  // the inequality as evaluated
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct ConstantAudit {
  std::vector<std::pair<std::string, double>> inputs;
  std::vector<std::pair<std::string, double>> derived;
  std::vector<AuditCheck> checks;
  bool in_regime = true;

  bool all_hold() const;
  const AuditCheck& check(const std::string& name) const;
};

/// Density-concentration arithmetic for one restriction step: the quadratic
/// in a (with discriminant Delta = 1 - 16(n-1)/(c(n-t)^2)), its root bounds,
/// and the 7/n chain. Out-of-regime inputs (n < 500t) are reported by a
/// failing "regime" check.
ConstantAudit audit_claim52(long n, long t, double a = 50.0, double c = 2.0 / 3.0);

/// The bootstrapping inequalities, including the exact derangement floor and
/// the exact form of the final product bound.
ConstantAudit audit_bootstrap(long n, long t);
// Same audits for many (n, t); big factorials are shared across the grid.
std::vector<ConstantAudit> audit_bootstrap_grid(const std::vector<std::pair<long, long>>& grid);

/// Both sides of each inequality in the large/medium/small-t cases, plus the
/// case boundaries 2n/ln n, n/(ln n)^2 and n/(10k). g2 is the globalness
/// parameter of the second restriction (defaults to g).
ConstantAudit audit_prop41_cases(double n, double t, double k, double c, double g,
                                 std::optional<double> g2 = std::nullopt);

struct BasisBound {
  std::optional<std::uint64_t> exact_count;  // #{tau : agreement(tau, id) >= t}
  mpz_class binom_bound;                      // C(n,t) (n-t)!
  mpz_class two_n_bound;                      // 2^n (n-t)!
};

inline constexpr int kBasisExactMaxN = 8;

BasisBound induction_basis_bound(int n, int t, bool exact = true);

/// r(n,t) = max(4^(2 floor(c0 t) - n), 1), held as its base-4 exponent.
struct RValue {
  long log4 = 0;
  double value() const;
};

RValue r_of(long n, long t, double c0);
// r(n-1,t) <= 4 r(n,t) and r(n-1,t-1) <= r(n,t), where defined.
ConstantAudit r_audit(long n, long t, double c0);

}  // namespace globalcube::bump
