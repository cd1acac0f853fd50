#include "globalcube/bump.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <mpfr.h>

#include "globalcube/errors.hpp"
#include "globalcube/families.hpp"

namespace globalcube::bump {

using families::Permutation;

BumpReport density_bump(const PermFamily& family) {
  if (family.empty()) throw PreconditionError("density bump of an empty family");
  const int n = family.n();
  BumpReport rep;
  rep.family_size = family.size();
  rep.counts.assign(n, std::vector<std::uint64_t>(n, 0));
  for (const auto& s : family.members())
    for (int i = 1; i <= n; ++i) ++rep.counts[i - 1][s(i) - 1];
  rep.table.assign(n, std::vector<double>(n, 0.0));
  std::uint64_t best = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const auto c = rep.counts[i - 1][j - 1];
      rep.table[i - 1][j - 1] = static_cast<double>(c) * n / static_cast<double>(rep.family_size);
      if (rep.best_i == 0 || c > best) {
        best = c;
        rep.best_i = i;
        rep.best_j = j;
      }
    }
  rep.ratio = rep.table[rep.best_i - 1][rep.best_j - 1];
  return rep;
}

// --- restriction chain ----------------------------------------------------------

namespace {

std::vector<const Permutation*> survivors(const PermFamily& f, const std::vector<std::pair<int, int>>& cs) {
  std::vector<const Permutation*> out;
  for (const auto& s : f.members())
    if (std::all_of(cs.begin(), cs.end(), [&](const auto& c) { return s(c.first) == c.second; }))
      out.push_back(&s);
  return out;
}

// a/b < c/d for non-negative integers, b, d > 0.
bool less_fraction(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  return static_cast<unsigned __int128>(a) * d < static_cast<unsigned __int128>(c) * b;
}

}  // namespace

ChainReport restriction_chain(const PermFamily& a, const PermFamily& b, int t, std::uint64_t pair_budget) {
  if (a.empty() || b.empty()) throw PreconditionError("restriction chain needs nonempty families");
  if (a.n() != b.n()) throw StructuralError("restriction chain of families over different n");
  const int n = a.n();
  if (t < 0 || t > n) throw PreconditionError("restriction chain needs 0 <= t <= n");

  ChainReport rep;
  rep.cross_intersecting = families::is_cross_t_intersecting_bounded(a, b, t, pair_budget);
  std::vector<std::pair<int, int>> chosen;
  std::vector<bool> used_i(n + 1, false), used_j(n + 1, false);
  for (int step = 0; step < t; ++step) {
    // Recount from the original families under the constraints chosen so far.
    const auto sa = survivors(a, chosen), sb = survivors(b, chosen);
    std::vector<std::uint64_t> ca(static_cast<std::size_t>(n) * n, 0), cb(ca.size(), 0);
    for (auto* s : sa)
      for (int i = 1; i <= n; ++i) ++ca[static_cast<std::size_t>(i - 1) * n + (*s)(i) - 1];
    for (auto* s : sb)
      for (int i = 1; i <= n; ++i) ++cb[static_cast<std::size_t>(i - 1) * n + (*s)(i) - 1];

    int bi = 0, bj = 0;
    std::uint64_t best_num = 0, best_den = 1;
    for (int i = 1; i <= n; ++i) {
      if (used_i[i]) continue;
      for (int j = 1; j <= n; ++j) {
        if (used_j[j]) continue;
        const auto k = static_cast<std::size_t>(i - 1) * n + j - 1;
        // min(ca/|A|, cb/|B|) as a fraction.
        std::uint64_t num = ca[k], den = a.size();
        if (less_fraction(cb[k], b.size(), num, den)) {
          num = cb[k];
          den = b.size();
        }
        if (bi == 0 || less_fraction(best_num, best_den, num, den)) {
          bi = i;
          bj = j;
          best_num = num;
          best_den = den;
        }
      }
    }
    chosen.emplace_back(bi, bj);
    used_i[bi] = used_j[bj] = true;
    ChainStep st;
    st.i = bi;
    st.j = bj;
    st.size_a = survivors(a, chosen).size();
    st.size_b = survivors(b, chosen).size();
    st.retained_a = static_cast<double>(st.size_a) / static_cast<double>(a.size());
    st.retained_b = static_cast<double>(st.size_b) / static_cast<double>(b.size());
    rep.steps.push_back(st);
  }
  rep.final_containment =
      rep.steps.empty() || (rep.steps.back().size_a == a.size() && rep.steps.back().size_b == b.size());
  return rep;
}

// --- audits ---------------------------------------------------------------------

bool ConstantAudit::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.holds; });
}

const AuditCheck& ConstantAudit::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no audit check named " + name);
}

namespace {

using ld = long double;

void add(ConstantAudit& audit, std::string name, std::string relation, ld lhs, ld rhs, bool holds) {
  audit.checks.push_back(
      {std::move(name), std::move(relation), static_cast<double>(lhs), static_cast<double>(rhs), holds});
}
void add_le(ConstantAudit& a, std::string name, std::string rel, ld lhs, ld rhs) {
  add(a, std::move(name), std::move(rel), lhs, rhs, lhs <= rhs);
}
void add_lt(ConstantAudit& a, std::string name, std::string rel, ld lhs, ld rhs) {
  add(a, std::move(name), std::move(rel), lhs, rhs, lhs < rhs);
}
void add_ge(ConstantAudit& a, std::string name, std::string rel, ld lhs, ld rhs) {
  add(a, std::move(name), std::move(rel), lhs, rhs, lhs >= rhs);
}
void add_gt(ConstantAudit& a, std::string name, std::string rel, ld lhs, ld rhs) {
  add(a, std::move(name), std::move(rel), lhs, rhs, lhs > rhs);
}

void add_regime(ConstantAudit& audit, long n, long t) {
  audit.in_regime = n >= 500 * t && t >= 1;
  add(audit, "regime", "n >= 500 t, t >= 1", n, 500.0L * t, audit.in_regime);
}

}  // namespace

ConstantAudit audit_claim52(long n, long t, double a, double c) {
  if (n < 1 || t < 0) throw PreconditionError("claim audit needs n >= 1, t >= 0");
  if (!(c > 0)) throw PreconditionError("c must be positive");
  ConstantAudit audit;
  audit.inputs = {{"n", static_cast<double>(n)}, {"t", static_cast<double>(t)}, {"a", a}, {"c", c}};
  add_regime(audit, n, t);

  const ld N = n, T = t, A = a, C = c;
  const ld k16 = 16.0L / C;  // 24 at c = 2/3
  const ld delta = 1.0L - k16 * (N - 1) / ((N - T) * (N - T));
  const ld sd = delta >= 0 ? std::sqrt(delta) : NAN;
  const ld lower = N / 2 * (1 - sd), upper = N / 2 * (1 + sd);
  audit.derived = {{"delta", static_cast<double>(delta)},
                   {"lower_root", static_cast<double>(lower)},
                   {"upper_root", static_cast<double>(upper)}};

  add_gt(audit, "delta_positive", "Delta = 1 - (16/c)(n-1)/(n-t)^2 > 0", delta, 0);
  const ld step1 = 1.0L - k16 * N / ((499.0L * N / 500) * (499.0L * N / 500));
  const ld s1 = step1 >= 0 ? std::sqrt(step1) : NAN;
  const ld s2 = N > 25 ? std::sqrt(1.0L - 25.0L / N) : NAN;
  add_ge(audit, "sqrt_delta_step1", "sqrt(Delta) >= sqrt(1 - (16/c) n / (499n/500)^2)", sd, s1);
  add_ge(audit, "sqrt_delta_step2", "sqrt(1 - (16/c) n / (499n/500)^2) >= sqrt(1 - 25/n)", s1, s2);
  add_gt(audit, "sqrt_delta_step3", "sqrt(1 - 25/n) > 1 - 100/n", s2, 1 - 100.0L / N);
  add_gt(audit, "sqrt_delta_bound", "sqrt(Delta) > 1 - 100/n", sd, 1 - 100.0L / N);
  add_lt(audit, "lower_root_below_50", "n/2 (1 - sqrt(Delta)) < 50", lower, 50);
  add_gt(audit, "upper_root_above_n_minus_50", "n/2 (1 + sqrt(Delta)) > n - 50", upper, N - 50);

  // a^2 - n a + (4/c) n^2 (n-1)/(n-t)^2 >= 0 is the density inequality in a;
  // whenever it holds, a sits outside the open interval between the roots.
  const ld quad = A * A - N * A + (4.0L / C) * N * N * (N - 1) / ((N - T) * (N - T));
  const bool outside = !(A > lower && A < upper);
  add(audit, "quadratic_dichotomy", "a^2 - n a + (4/c) n^2 (n-1)/(n-t)^2 >= 0 implies a outside (lower, upper)",
      quad, 0, quad < 0 || outside);
  add_gt(audit, "bump_excludes_lower_root", "a > n/2 (1 - sqrt(Delta))", A, lower);

  const ld chain0 = (4.0L / C) * N * (N - 1) / ((N - 50) * (N - T) * (N - T));
  const ld chain1 = (4.0L / C) * N * N / ((N - N / 10) * (N - N / 500) * (N - N / 500));
  add_le(audit, "complement_chain_step1", "(4/c) n(n-1)/((n-50)(n-t)^2) <= (4/c) n^2/((n-n/10)(n-n/500)^2)",
         chain0, chain1);
  add_le(audit, "complement_chain_step2", "(4/c) n^2/((n-n/10)(n-n/500)^2) <= 7/n", chain1, 7.0L / N);
  add_le(audit, "complement_bound", "(4/c) n(n-1)/((n-50)(n-t)^2) <= 7/n", chain0, 7.0L / N);
  return audit;
}

namespace {

// m!, D(m) by forward recurrence; moves forward cheaply, restarts to go back.
class BigCursor {
 public:
  void advance_to(unsigned long m) {
    if (m < m_) {
      m_ = 0;
      fact_ = 1;
      der_ = 1;
    }
    while (m_ < m) {
      ++m_;
      fact_ *= m_;
      der_ *= m_;
      if (m_ % 2 == 0)
        der_ += 1;
      else
        der_ -= 1;
    }
  }
  const mpz_class& factorial() const { return fact_; }
  const mpz_class& derangements() const { return der_; }

 private:
  unsigned long m_ = 0;
  mpz_class fact_ = 1;
  mpz_class der_ = 1;
};

// floor(x / e) with enough precision that the answer is exact.
class EDivider {
 public:
  EDivider() { mpfr_init2(e_, 64); }
  ~EDivider() { mpfr_clear(e_); }
  EDivider(const EDivider&) = delete;
  EDivider& operator=(const EDivider&) = delete;

  mpz_class floor_div(const mpz_class& x) {
    const auto prec = static_cast<mpfr_prec_t>(mpz_sizeinbase(x.get_mpz_t(), 2) + 96);
    if (prec > prec_) {
      prec_ = prec + prec / 4;
      mpfr_set_prec(e_, prec_);
      mpfr_t one;
      mpfr_init2(one, 8);
      mpfr_set_ui(one, 1, MPFR_RNDN);
      mpfr_exp(e_, one, MPFR_RNDN);
      mpfr_clear(one);
    }
    mpfr_t q;
    mpfr_init2(q, prec_);
    mpfr_set_z(q, x.get_mpz_t(), MPFR_RNDN);
    mpfr_div(q, q, e_, MPFR_RNDN);
    mpz_class out;
    mpfr_get_z(out.get_mpz_t(), q, MPFR_RNDD);
    mpfr_clear(q);
    return out;
  }

 private:
  mpfr_t e_;
  mpfr_prec_t prec_ = 0;
};

double ratio(const mpz_class& num, const mpz_class& den) { return mpq_class(num, den).get_d(); }

ConstantAudit bootstrap_one(long n, long t, BigCursor& cursor, EDivider& divider) {
  if (n < 1 || t < 0) throw PreconditionError("bootstrap audit needs n >= 1, t >= 0");
  ConstantAudit audit;
  audit.inputs = {{"n", static_cast<double>(n)}, {"t", static_cast<double>(t)}};
  add_regime(audit, n, t);
  const ld N = n, T = t;
  const ld boot = std::pow(1 - 7.0L / N, 2 * T);
  const ld at_regime = std::pow(1 - 7.0L / (500 * T), 2 * T);
  const ld exp_form = std::pow(std::exp(-14.0L / (500 * T)), 2 * T);
  add_ge(audit, "boot1_5_step1", "(1 - 7/n)^(2t) >= (1 - 7/(500t))^(2t)", boot, at_regime);
  add_ge(audit, "boot1_5_step2", "(1 - 7/(500t))^(2t) >= (e^(-14/(500t)))^(2t)", at_regime, exp_form);
  add_gt(audit, "boot1_5_step3", "(e^(-14/(500t)))^(2t) > 0.94", exp_form, 0.94L);
  add_gt(audit, "boot1_5_two_thirds", "0.94 > 2/3", 0.94L, 2.0L / 3);
  add_ge(audit, "boot1_5", "(1 - 7/n)^(2t) >= 0.94", boot, 0.94L);
  add_gt(audit, "three_quarters_variant", "0.94 * 3/4 > 2/3", 0.94L * 0.75L, 2.0L / 3);
  add_ge(audit, "boot3", "1 - 7t/n >= 0.98", 1 - 7 * T / N, 0.98L);
  const ld factor = (100.0L / 98) * (100.0L / 98) * (1 - std::exp(-1.0L));
  add_lt(audit, "boot4_factor", "(100/98)^2 (1 - 1/e) < 2/3", factor, 2.0L / 3);

  if (n - t >= 1) {
    const auto m = static_cast<unsigned long>(n - t);
    cursor.advance_to(m);
    const mpz_class& fact = cursor.factorial();
    const mpz_class& der = cursor.derangements();
    const mpz_class fl = divider.floor_div(fact);
    audit.derived.emplace_back("derangement_ratio", ratio(der, fact));
    // Normalised by m! so the values stay finite; holds is decided on the integers.
    add(audit, "derangement_floor", "D(n-t)/(n-t)! >= floor((n-t)!/e)/(n-t)!", ratio(der, fact), ratio(fl, fact),
        der >= fl);
    const mpz_class top = fact - fl;  // ceil((1 - 1/e) m!)
    add(audit, "boot4_exact", "(100/98)^2 (n-t)! ceil((1-1/e)(n-t)!) / (n-t)!^2 < 1",
        (100.0L / 98) * (100.0L / 98) * ratio(top, fact), 1.0L, 10000 * top < 9604 * fact);
  }
  return audit;
}

}  // namespace

ConstantAudit audit_bootstrap(long n, long t) {
  BigCursor cursor;
  EDivider divider;
  return bootstrap_one(n, t, cursor, divider);
}

std::vector<ConstantAudit> audit_bootstrap_grid(const std::vector<std::pair<long, long>>& grid) {
  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return grid[x].first - grid[x].second < grid[y].first - grid[y].second;
  });
  std::vector<ConstantAudit> out(grid.size());
  BigCursor cursor;
  EDivider divider;
  for (auto k : order) out[k] = bootstrap_one(grid[k].first, grid[k].second, cursor, divider);
  return out;
}

ConstantAudit audit_prop41_cases(double n, double t, double k, double c, double g, std::optional<double> g2) {
  if (!(n > 1 && t > 0 && k > 0 && c > 0 && g > 1))
    throw PreconditionError("case audit needs n > 1, t > 0, k > 0, c > 0, g > 1");
  const double gp = g2.value_or(g);
  if (!(gp > 1)) throw PreconditionError("g2 must exceed 1");
  ConstantAudit audit;
  audit.inputs = {{"n", n}, {"t", t}, {"k", k}, {"c", c}, {"g", g}, {"g2", gp}};
  const ld N = n, T = t, K = k, C = c, G = g, G2 = gp;
  const ld ln = std::log(N);
  const ld p = 10 * ln / N;
  audit.derived = {{"large_t_lower", static_cast<double>(2 * N / ln)},
                   {"small_t_upper", static_cast<double>(N / (ln * ln))},
                   {"large_t_upper", static_cast<double>(N / (10 * K))},
                   {"sqrt_boundary_t", static_cast<double>(2 * N * std::log(2.0L) / ln)},
                   {"p", static_cast<double>(p)}};

  // Large t: restriction size of a sqrt(n)-global restriction in [n]^n.
  add_le(audit, "large_t_density_bump", "(ln(1/c)/n + 2 + 2t ln(n)/n) / (ln(n)/2) <= 1/(2k)",
         (std::log(1 / C) / N + 2 + 2 * T * ln / N) / (ln / 2), 1 / (2 * K));
  const ld log2_binom = (std::lgamma(N + 1) - std::lgamma(T + 1) - std::lgamma(N - T + 1)) / std::log(2.0L);
  add_le(audit, "binomial_le_2n", "log2 C(n,t) <= n", log2_binom, N);
  add_gt(audit, "sqrt_power_exceeds_2n", "log2(sqrt(n)^t) > n (contradiction in the large-t range)",
         T * ln / (2 * std::log(2.0L)), N);
  add_lt(audit, "sqrt_boundary_below_case_boundary", "2n ln2/ln n < 2n/ln n", 2 * N * std::log(2.0L) / ln,
         2 * N / ln);

  // Medium t: restriction sizes in {0,1}^(n^2) at p = 1/n.
  add_le(audit, "medium_t_density_bump", "(ln(1/c) + 4n + 2t ln n)/ln g <= n/(2k)",
         (std::log(1 / C) + 4 * N + 2 * T * ln) / std::log(G), N / (2 * K));
  add_le(audit, "medium_t_density_bump2", "(ln(2/c) + 4n + 2t ln n)/ln g2 <= n/(2g)",
         (std::log(2 / C) + 4 * N + 2 * T * ln) / std::log(G2), N / (2 * G));

  // Small t: p = 10 ln(n)/n, no e^-n losses.
  add_le(audit, "small_t_density_bump", "(ln(4/c) + 2t ln n)/ln g <= n/(2k)",
         (std::log(4 / C) + 2 * T * ln) / std::log(G), N / (2 * K));
  add_le(audit, "small_t_density_bump2", "(ln(8/c) + 2t ln n)/ln g2 <= 1/(2 g p)",
         (std::log(8 / C) + 2 * T * ln) / std::log(G2), 1 / (2 * G * p));
  return audit;
}

BasisBound induction_basis_bound(int n, int t, bool exact) {
  if (n < 1 || t < 0 || t > n) throw PreconditionError("basis bound needs n >= 1 and 0 <= t <= n");
  BasisBound res;
  const auto rest = families::factorial(static_cast<unsigned>(n - t));
  res.binom_bound = families::binomial(static_cast<unsigned>(n), static_cast<unsigned>(t)) * rest;
  mpz_class two_n;
  mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(n));
  res.two_n_bound = two_n * rest;
  if (exact) {
    if (n > kBasisExactMaxN)
      throw ResourceGuardError("exact basis count enumerates S_n, capped at n = " + std::to_string(kBasisExactMaxN));
    std::uint64_t count = 0;
    families::for_each_permutation(n, [&](const Permutation& s) { count += s.fixed_points() >= t; });
    res.exact_count = count;
  }
  return res;
}

double RValue::value() const { return std::pow(4.0, static_cast<double>(log4)); }

RValue r_of(long n, long t, double c0) {
  if (t < 0 || !(c0 > 0)) throw PreconditionError("r needs t >= 0 and c0 > 0");
  const auto base = static_cast<long>(std::floor(c0 * static_cast<double>(t)));
  if (n < base)
    throw PreconditionError("r(n,t) needs n >= floor(c0 t) = " + std::to_string(base) + ", got n = " +
                            std::to_string(n));
  return {std::max(2 * base - n, 0L)};
}

ConstantAudit r_audit(long n, long t, double c0) {
  ConstantAudit audit;
  audit.inputs = {{"n", static_cast<double>(n)}, {"t", static_cast<double>(t)}, {"c0", c0}};
  const auto r = r_of(n, t, c0);
  audit.derived = {{"log4_r", static_cast<double>(r.log4)}};
  const auto base = static_cast<long>(std::floor(c0 * static_cast<double>(t)));
  // Compared on base-4 exponents: r(n-1,t) <= 4 r(n,t) iff log4 r(n-1,t) <= log4 r(n,t) + 1.
  if (n - 1 >= base) {
    const auto r1 = r_of(n - 1, t, c0);
    add(audit, "shrink_n", "log4 r(n-1,t) <= log4 r(n,t) + 1", r1.log4, r.log4 + 1, r1.log4 <= r.log4 + 1);
  }
  if (t >= 1 && n - 1 >= static_cast<long>(std::floor(c0 * static_cast<double>(t - 1)))) {
    const auto r2 = r_of(n - 1, t - 1, c0);
    add(audit, "shrink_both", "log4 r(n-1,t-1) <= log4 r(n,t)", r2.log4, r.log4, r2.log4 <= r.log4);
  }
  return audit;
}

}  // namespace globalcube::bump
