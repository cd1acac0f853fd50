#include <doctest.h>

#include "globalcube/cube.hpp"
#include "globalcube/errors.hpp"
#include "oracles.hpp"

using namespace globalcube;
using cube::CubeFamily;
using cube::Mask;

namespace {

CubeFamily dictator(int n) {
  return CubeFamily::from_predicate(n, [](Mask x) { return (x & 1U) != 0; });
}

CubeFamily two_of_three() {
  return CubeFamily::from_predicate(3, [](Mask x) { return cube::weight(x) >= 2; });
}

}  // namespace

TEST_CASE("probability parsing") {
  CHECK(Probability::parse("1/3").exact() == mpq_class(1, 3));
  CHECK(Probability::parse("0.25").exact() == mpq_class(1, 4));
  CHECK(Probability::parse("2/4").to_string() == "1/2");
  CHECK_THROWS_AS(Probability::parse("abc"), ParseError);
  CHECK_THROWS_AS(Probability::parse("1/0"), ParseError);
  CHECK_THROWS_AS(BiasedMeasure(0.0), PreconditionError);
  CHECK_THROWS_AS(BiasedMeasure(1.0), PreconditionError);
}

TEST_CASE("measure of basic families") {
  CHECK(cube::measure(CubeFamily::full(5), 0.3) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cube::measure(dictator(4), 0.3) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(cube::measure_exact(two_of_three(), mpq_class(1, 3)) == mpq_class(7, 27));
  CHECK(cube::measure(CubeFamily::empty(3), 0.5) == 0.0);
}

TEST_CASE("exact dimension cap") {
  CHECK_NOTHROW(cube::require_exact_dim(24));
  CHECK_THROWS_AS(cube::require_exact_dim(25), ResourceGuardError);
}

TEST_CASE("restriction examples") {
  const auto d = dictator(3);
  CHECK(cube::restrict_to(d, cube::Restriction(1, 1)) == CubeFamily::full(2));
  CHECK(cube::restrict_to(d, cube::Restriction(1, 0)).empty());
  // {x : |x n {2,3}| >= 1} relabelled to coordinates 1, 2.
  const auto r = cube::restrict_to(two_of_three(), cube::Restriction(1, 1));
  CHECK(r == CubeFamily(2, {1, 2, 3}));
}

TEST_CASE("up-closure examples") {
  CHECK(cube::up_closure(CubeFamily(3, {0})) == CubeFamily::full(3));
  CHECK(cube::up_closure(two_of_three()) == two_of_three());
  // Permutation matrices of S_2 as 2x2 bit matrices.
  const auto u = cube::up_closure(CubeFamily(4, {0b1001, 0b0110}));
  CHECK(u.size() == 7);
}

TEST_CASE("monotonicity examples") {
  CHECK(cube::is_monotone(CubeFamily::empty(4)));
  CHECK(cube::is_monotone(dictator(4)));
  CHECK_FALSE(cube::is_monotone(CubeFamily(4, {0b1001})));
}

TEST_CASE("fkg examples") {
  const BiasedMeasure m(0.3);
  const auto f = dictator(3);
  const auto g = CubeFamily::from_predicate(3, [](Mask x) { return (x & 2U) != 0; });
  const auto indep = cube::fkg_check(f, g, m);
  CHECK(indep.lhs == doctest::Approx(0.09).epsilon(1e-12));
  CHECK(indep.rhs == doctest::Approx(0.09).epsilon(1e-12));
  CHECK(indep.holds);
  const auto same = cube::fkg_check(f, f, m);
  CHECK(same.lhs == doctest::Approx(0.3));
  CHECK(same.holds);
}

TEST_CASE("property: measure matches point enumeration and is additive") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(10));
    std::vector<Mask> a, b;
    for (Mask x = 0; x < (Mask{1} << n); ++x) {
      const auto r = rng.below(3);
      if (r == 0) a.push_back(x);
      if (r == 1) b.push_back(x);
    }
    mpq_class p(1 + static_cast<long>(rng.below(9)), 10);
    p.canonicalize();
    const CubeFamily fa(n, a), fb(n, b);
    CHECK(cube::measure_exact(fa, p) == oracle::measure_exact(a, n, p));
    CHECK(cube::measure_exact(cube::unite(fa, fb), p) == cube::measure_exact(fa, p) + cube::measure_exact(fb, p));
    CHECK(cube::measure(fa, p.get_d()) == doctest::Approx(oracle::measure_exact(a, n, p).get_d()).epsilon(1e-12));
  }
}

TEST_CASE("property: restriction measure factorises") {
  Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(11));
    std::vector<Mask> members;
    for (Mask x = 0; x < (Mask{1} << n); ++x)
      if (rng.bernoulli(0.4)) members.push_back(x);
    const CubeFamily f(n, members);
    const Mask coords = static_cast<Mask>(rng.below(Mask{1} << n));
    const Mask values = static_cast<Mask>(rng.next()) & coords;
    const cube::Restriction r(coords, values);
    const double p = 0.1 + 0.8 * rng.uniform();
    double agreeing = 0;
    for (Mask x : members)
      if (r.agrees(x)) agreeing += oracle::mass(x, n, p);
    const double sub = cube::subcube_mass(r, p);
    const double restricted = cube::measure(cube::restrict_to(f, r), p);
    CHECK(agreeing == doctest::Approx(sub * restricted).epsilon(1e-12));
    CHECK(cube::restrict_to(f, r).dim() == n - r.size());
  }
}

TEST_CASE("property: up-closure is idempotent, extensive and monotone") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(10));
    std::vector<Mask> members;
    for (int k = 0; k < 3; ++k) members.push_back(static_cast<Mask>(rng.below(Mask{1} << n)));
    const CubeFamily f(n, members);
    const auto u = cube::up_closure(f);
    CHECK(u == CubeFamily(n, oracle::up_closure(f.members(), n)));
    CHECK(cube::up_closure(u) == u);
    CHECK(cube::is_monotone(u));
    for (Mask x : f.members()) CHECK(u.contains(x));
  }
}

TEST_CASE("property: fkg holds on random monotone pairs") {
  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(12));
    const CubeFamily f(n, oracle::random_monotone(n, rng)), g(n, oracle::random_monotone(n, rng));
    const BiasedMeasure m(0.05 + 0.9 * rng.uniform());
    CHECK(cube::fkg_check(f, g, m).holds);
  }
}
