#include <doctest.h>

#include <cmath>

#include "globalcube/errors.hpp"
#include "globalcube/fourier.hpp"
#include "oracles.hpp"

using namespace globalcube;
using namespace globalcube::fourier;
using cube::Mask;

namespace {

std::vector<double> random_values(int n, Rng& rng) {
  std::vector<double> v(std::size_t{1} << n);
  for (auto& x : v) x = 2 * rng.uniform() - 1;
  return v;
}

RealFunctionOnCube dictator_indicator(int n) {
  return RealFunctionOnCube::indicator(
      cube::CubeFamily::from_predicate(n, [](Mask x) { return (x & 1U) != 0; }));
}

}  // namespace

TEST_CASE("transform of constants and dictators") {
  const double p = 0.3;
  const auto one = transform(RealFunctionOnCube::constant(4, 1.0), BiasedMeasure(p));
  CHECK(one[0] == doctest::Approx(1.0));
  for (Mask s = 1; s < 16; ++s) CHECK(std::abs(one[s]) < 1e-12);

  const auto d = transform(dictator_indicator(4), BiasedMeasure(p));
  CHECK(d[0] == doctest::Approx(p));
  CHECK(d[1] == doctest::Approx(std::sqrt(p * (1 - p))));
  for (Mask s = 2; s < 16; ++s) CHECK(std::abs(d[s]) < 1e-12);

  CHECK(level_weight(d, 1) == doctest::Approx(p * (1 - p)));
  CHECK(level_weight(d, 0) == doctest::Approx(p * p));
}

TEST_CASE("inverse transform of simple spectra") {
  const double p = 0.4;
  std::vector<double> c(8, 0.0);
  c[0] = 1;
  const auto f = inverse_transform(FourierCoeffs(3, p, c));
  for (Mask x = 0; x < 8; ++x) CHECK(f(x) == doctest::Approx(1.0));
  c[0] = p;
  c[1] = std::sqrt(p * (1 - p));
  const auto g = inverse_transform(FourierCoeffs(3, p, c));
  for (Mask x = 0; x < 8; ++x) CHECK(g(x) == doctest::Approx((x & 1U) ? 1.0 : 0.0).epsilon(1e-12));
}

TEST_CASE("AND of two coordinates at p = 1/2 has level-2 weight 1/16") {
  const auto f = RealFunctionOnCube::indicator(cube::CubeFamily(2, {3}));
  CHECK(level_weight(transform(f, BiasedMeasure(0.5)), 2) == doctest::Approx(1.0 / 16));
}

TEST_CASE("one-sided noise examples") {
  const double q = 0.25, p = 0.6;
  const auto c = transform(RealFunctionOnCube::constant(3, 1.0), BiasedMeasure(q));
  const auto back = inverse_transform(one_sided_noise(c, p));
  for (Mask y = 0; y < 8; ++y) CHECK(back(y) == doctest::Approx(1.0));

  const auto dn = inverse_transform(one_sided_noise(transform(dictator_indicator(3), BiasedMeasure(q)), p));
  const auto dc = coupling_expectation(dictator_indicator(3), q, p);
  for (Mask y = 0; y < 8; ++y) {
    const double expected = (y & 1U) ? q / p : 0.0;
    CHECK(dn(y) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(dc(y) == doctest::Approx(expected).epsilon(1e-12));
  }
  const auto constant = coupling_expectation(RealFunctionOnCube::constant(3, 2.5), q, p);
  for (Mask y = 0; y < 8; ++y) CHECK(constant(y) == doctest::Approx(2.5));
}

TEST_CASE("noise parameters require 0 < q < p < 1") {
  CHECK_THROWS_AS(NoiseRho::make(0.5, 0.5), OrderingError);
  CHECK_THROWS_AS(NoiseRho::make(0.6, 0.5), OrderingError);
  const auto r = NoiseRho::make(0.2, 0.5);
  CHECK(r.rho == doctest::Approx(std::sqrt(0.2 * 0.5 / (0.5 * 0.8))));
  Rng rng(1);
  CHECK_THROWS(sample_coupled_pair(3, 0.5, 0.5, rng));
}

TEST_CASE("coupled samples are ordered with the right marginals") {
  Rng rng(5);
  const int samples = 100000;
  long xs = 0;
  for (int s = 0; s < samples; ++s) {
    const auto [x, y] = sample_coupled_pair(1, 0.2, 0.5, rng);
    CHECK((x.bits() & ~y.bits()) == 0);
    xs += x.bits();
  }
  const double sigma = std::sqrt(0.2 * 0.8 / samples);
  CHECK(std::abs(static_cast<double>(xs) / samples - 0.2) <= 3 * sigma);
}

TEST_CASE("property: transform matches the defining sum") {
  Rng rng(21);
  for (int n = 1; n <= 7; ++n) {
    const double p = 0.05 + 0.9 * rng.uniform();
    const auto v = random_values(n, rng);
    const auto c = transform(RealFunctionOnCube(n, v), BiasedMeasure(p));
    const auto ref = oracle::fourier(v, n, p);
    for (std::size_t s = 0; s < ref.size(); ++s) CHECK(c[static_cast<Mask>(s)] == doctest::Approx(ref[s]).epsilon(1e-10));
  }
}

TEST_CASE("property: round trip and Parseval") {
  Rng rng(22);
  for (int n : {1, 4, 8, 12}) {
    for (int trial = 0; trial < 10; ++trial) {
      const double p = 0.05 + 0.9 * rng.uniform();
      const RealFunctionOnCube f(n, random_values(n, rng));
      const auto c = transform(f, BiasedMeasure(p));
      const auto g = inverse_transform(c);
      double e2 = 0, sq = 0;
      for (Mask x = 0; x < (Mask{1} << n); ++x) {
        CHECK(std::abs(g(x) - f(x)) <= 1e-10);
        e2 += oracle::mass(x, n, p) * f(x) * f(x);
      }
      for (double a : c.coeffs()) sq += a * a;
      CHECK(std::abs(sq - e2) <= 1e-10);
      CHECK(std::abs(inner_product(f, f, p) - e2) <= 1e-10);
    }
  }
}

TEST_CASE("property: characters are orthonormal at n = 6") {
  const int n = 6;
  for (double p : {0.1, 0.5, 0.77}) {
    double worst = 0;
    for (Mask s = 0; s < 64; ++s)
      for (Mask t = 0; t < 64; ++t) {
        double ip = 0;
        for (Mask x = 0; x < 64; ++x) ip += oracle::mass(x, n, p) * character(s, x, p) * character(t, x, p);
        worst = std::max(worst, std::abs(ip - (s == t ? 1.0 : 0.0)));
      }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("property: Fourier noise equals the coupling expectation") {
  Rng rng(23);
  for (int n = 1; n <= 8; ++n) {
    const double q = 0.05 + 0.4 * rng.uniform();
    const double p = q + (0.95 - q) * rng.uniform();
    const auto v = random_values(n, rng);
    const RealFunctionOnCube f(n, v);
    const auto lhs = one_sided_noise(transform(f, BiasedMeasure(q)), p);
    const auto via_coupling = coupling_expectation(f, q, p);
    const auto ref = oracle::coupling(v, n, q, p);
    const auto rhs = transform(via_coupling, BiasedMeasure(p));
    for (std::size_t s = 0; s < ref.size(); ++s) {
      CHECK(std::abs(via_coupling(static_cast<Mask>(s)) - ref[s]) <= 1e-10);
      CHECK(std::abs(lhs[static_cast<Mask>(s)] - rhs[static_cast<Mask>(s)]) <= 1e-10);
    }
  }
}

TEST_CASE("property: level weights are invariant under coordinate permutation") {
  Rng rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(7));
    const RealFunctionOnCube f(n, random_values(n, rng));
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(std::span<int>(perm));
    const BiasedMeasure m(0.3);
    const auto a = level_weights(transform(f, m));
    const auto b = level_weights(transform(permute_coordinates(f, perm), m));
    for (std::size_t d = 0; d < a.size(); ++d) CHECK(a[d] == doctest::Approx(b[d]).epsilon(1e-10));
  }
}
