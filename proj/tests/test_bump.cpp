#include <doctest.h>

#include <cmath>
#include <set>
#include <gmpxx.h>
#include <mpfr.h>

#include "globalcube/bump.hpp"
#include "globalcube/errors.hpp"
#include "globalcube/families.hpp"
#include "oracles.hpp"

using namespace globalcube;
using namespace globalcube::bump;
using families::PermFamily;
using families::UmvirateSpec;

TEST_CASE("density bump examples") {
  const auto d = density_bump(families::umvirate(UmvirateSpec({{1, 1}}), 5));
  CHECK(d.best_i == 1);
  CHECK(d.best_j == 1);
  CHECK(d.ratio == doctest::Approx(5.0));
  const auto all = density_bump(families::umvirate(UmvirateSpec(), 4));
  for (const auto& row : all.table)
    for (double r : row) CHECK(r == doctest::Approx(1.0));
  const auto c = density_bump(families::counterexample_family(8, 4, 0).family);
  CHECK(c.ratio > 1.0);
}

TEST_CASE("restriction chain examples") {
  const auto u = families::umvirate(UmvirateSpec({{2, 3}, {4, 1}}), 6);
  const auto chain = restriction_chain(u, u, 2);
  REQUIRE(chain.steps.size() == 2);
  std::set<std::pair<int, int>> got;
  for (const auto& s : chain.steps) {
    got.insert({s.i, s.j});
    CHECK(s.retained_a == doctest::Approx(1.0));
    CHECK(s.retained_b == doctest::Approx(1.0));
  }
  CHECK(got == std::set<std::pair<int, int>>{{2, 3}, {4, 1}});
  CHECK(chain.final_containment);

  const auto st = families::stability_family(8, 1);
  const auto sc = restriction_chain(st.a, st.b, 1);
  CHECK_FALSE(sc.final_containment);
  REQUIRE_FALSE(sc.steps.empty());
  CHECK(sc.steps[0].retained_b >= 0.9);

  const auto zero = restriction_chain(u, u, 0);
  CHECK(zero.steps.empty());
  CHECK(zero.final_containment);
}

TEST_CASE("claim arithmetic at n = 500, t = 1") {
  const auto a = audit_claim52(500, 1);
  CHECK(a.all_hold());
  CHECK(a.check("sqrt_delta_step3").rhs == doctest::Approx(0.8));
  const auto& cb = a.check("complement_bound");
  CHECK(cb.lhs == doctest::Approx(6.0 * 500 * 499 / (450.0 * 499 * 499)).epsilon(1e-6));
  CHECK(cb.rhs == doctest::Approx(0.014));
  CHECK(audit_claim52(5000, 10).all_hold());
}

TEST_CASE("bootstrap arithmetic") {
  const auto a = audit_bootstrap(500, 1);
  CHECK(a.check("boot1_5").lhs == doctest::Approx(std::pow(1 - 7.0 / 500, 2)));
  CHECK(a.all_hold());
  CHECK(a.check("boot4_factor").lhs == doctest::Approx((100.0 / 98) * (100.0 / 98) * (1 - std::exp(-1.0))).epsilon(1e-9));
  const auto small = audit_bootstrap(2004, 2000);  // n - t = 4
  CHECK(small.check("derangement_floor").holds);
}

TEST_CASE("case arithmetic") {
  const auto a = audit_prop41_cases(1e6, 2000, 50, 2.0 / 3, 2.0);
  CHECK(a.check("large_t_density_bump").rhs == doctest::Approx(0.01));
  // The printed inequality does not hold at this size: lhs is about 0.2975.
  CHECK(a.check("large_t_density_bump").lhs == doctest::Approx(0.2975).epsilon(1e-3));
  CHECK_FALSE(a.check("large_t_density_bump").holds);

  const auto b = audit_prop41_cases(1e4, 100, 50, 2.0 / 3, 2.0);
  double small_upper = 0, large_lower = 0;
  for (const auto& [k, v] : b.derived) {
    if (k == "large_t_lower") large_lower = v;
    if (k == "small_t_upper") small_upper = v;
  }
  CHECK(large_lower == doctest::Approx(2e4 / std::log(1e4)));
  CHECK(small_upper == doctest::Approx(1e4 / std::pow(std::log(1e4), 2)));

  // 2^n = sqrt(n)^t exactly at t = 2 n ln 2 / ln n.
  const auto c = audit_prop41_cases(100, 2 * 100 * std::log(2.0) / std::log(100.0), 50, 2.0 / 3, 2.0);
  const auto& e = c.check("sqrt_power_exceeds_2n");
  CHECK(e.lhs == doctest::Approx(e.rhs).epsilon(1e-9));
}

TEST_CASE("induction basis examples") {
  const auto a = induction_basis_bound(4, 2);
  CHECK(a.exact_count == 7u);
  CHECK(a.binom_bound == 12);
  CHECK(a.two_n_bound == 32);
  const auto b = induction_basis_bound(3, 1);
  CHECK(b.exact_count == 4u);
  CHECK(b.binom_bound == 6);
  CHECK(b.two_n_bound == 16);
  const auto c = induction_basis_bound(5, 5);
  CHECK(c.exact_count == 1u);
  CHECK(c.binom_bound == 1);
  CHECK_THROWS_AS(induction_basis_bound(12, 2, true), ResourceGuardError);
}

TEST_CASE("r values") {
  CHECK(r_of(2000, 2, 500.0).log4 == 0);
  CHECK(r_of(2000, 2, 500.0).value() == doctest::Approx(1.0));
  CHECK(r_of(1000, 2, 500.0).log4 == 1000);
  CHECK_THROWS_AS(r_of(999, 2, 500.0), PreconditionError);
}

TEST_CASE("property: bump rows partition the family") {
  Rng rng(61);
  const auto perms = families::all_permutations(6);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<families::Permutation> m;
    for (const auto& s : perms)
      if (rng.bernoulli(0.3)) m.push_back(s);
    const PermFamily f(6, m);
    const auto r = density_bump(f);
    for (int i = 0; i < 6; ++i) {
      std::uint64_t row = 0, col = 0;
      for (int j = 0; j < 6; ++j) {
        row += r.counts[i][j];
        col += r.counts[j][i];
      }
      CHECK(row == f.size());
      CHECK(col == f.size());
    }
  }
}

TEST_CASE("property: chain retained fractions recompute from scratch") {
  const auto st = families::stability_family(7, 1);
  const auto chain = restriction_chain(st.a, st.b, 1);
  std::vector<std::pair<int, int>> prefix;
  for (const auto& s : chain.steps) {
    prefix.emplace_back(s.i, s.j);
    std::uint64_t ca = 0, cb = 0;
    auto fits = [&](const families::Permutation& p) {
      for (const auto& [i, j] : prefix)
        if (p(i) != j) return false;
      return true;
    };
    for (const auto& p : st.a.members()) ca += fits(p);
    for (const auto& p : st.b.members()) cb += fits(p);
    CHECK(s.size_a == ca);
    CHECK(s.size_b == cb);
    CHECK(s.retained_a == static_cast<double>(ca) / static_cast<double>(st.a.size()));
  }
}

TEST_CASE("property: audits are reproducible from their inputs") {
  for (long t = 1; t <= 20; ++t)
    for (long n = 500 * t; n <= 10000; n += 500) {
      const auto a = audit_claim52(n, t), b = audit_claim52(n, t);
      REQUIRE(a.checks.size() == b.checks.size());
      for (std::size_t k = 0; k < a.checks.size(); ++k) {
        CHECK(a.checks[k].lhs == b.checks[k].lhs);
        CHECK(a.checks[k].holds == b.checks[k].holds);
      }
      CHECK(a.all_hold());
      CHECK(audit_bootstrap(n, t).all_hold());
    }
}

TEST_CASE("property: exact derangement check against MPFR directly") {
  // D(m) >= floor(m!/e) and 10000 (m! - floor(m!/e)) < 9604 m! for a few m.
  for (unsigned m : {4u, 10u, 50u, 300u}) {
    const mpz_class fact = families::factorial(m);
    mpfr_t e, x;
    mpfr_init2(e, 4096);
    mpfr_init2(x, 4096);
    mpfr_set_ui(e, 1, MPFR_RNDN);
    mpfr_exp(e, e, MPFR_RNDN);
    mpfr_set_z(x, fact.get_mpz_t(), MPFR_RNDN);
    mpfr_div(x, x, e, MPFR_RNDN);
    mpz_class fl;
    mpfr_get_z(fl.get_mpz_t(), x, MPFR_RNDD);
    mpfr_clear(e);
    mpfr_clear(x);
    CHECK(families::derangement_count(m) >= fl);
    const auto a = audit_bootstrap(static_cast<long>(500 + m), 500);
    if (m >= 1) CHECK(a.check("derangement_floor").holds);
  }
}

TEST_CASE("property: r relations over a grid") {
  for (long t = 1; t <= 20; ++t)
    for (long n = 500 * t; n <= 10000; n += 500) CHECK(r_audit(n, t, 500.0).all_hold());
  for (double c0 : {3.0, 7.5, 100.0})
    for (long t = 1; t <= 10; ++t)
      for (long n = static_cast<long>(std::floor(c0 * t)) + 1; n <= static_cast<long>(3 * c0 * t) + 5; ++n) {
        const auto a = r_of(n, t, c0), b = r_of(n - 1, t, c0), c = r_of(n - 1, t - 1, c0);
        CHECK(b.log4 <= a.log4 + 1);
        CHECK(c.log4 <= a.log4);
      }
}
