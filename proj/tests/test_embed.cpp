#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "globalcube/embed.hpp"
#include "globalcube/errors.hpp"
#include "globalcube/families.hpp"
#include "oracles.hpp"

using namespace globalcube;
using namespace globalcube::embed;
using families::Permutation;

namespace {

BitMatrix random_matrix(int n, double p, Rng& rng) {
  BitMatrix x(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (rng.bernoulli(p)) x.set(i, j);
  return x;
}

}  // namespace

TEST_CASE("embedding examples") {
  CHECK(embed_perm(Permutation::identity(2)).to_bitstring() == "1001");
  CHECK(embed_perm(Permutation({2, 3, 1})).weight() == 3);
  CHECK(common_ones(embed_perm(Permutation({2, 3, 1})), embed_perm(Permutation({2, 1, 3}))) == 1);
  CHECK(embed_word(WordPoint({1, 1})).to_bitstring() == "1010");
  CHECK_THROWS_AS(WordPoint({1, 3}), StructuralError);
}

TEST_CASE("word embedding is injective on [3]^3") {
  std::set<std::string> seen;
  for (int code = 0; code < 27; ++code) {
    const WordPoint w({1 + code % 3, 1 + code / 3 % 3, 1 + code / 9});
    seen.insert(embed_word(w).to_bitstring());
  }
  CHECK(seen.size() == 27);
}

TEST_CASE("measure factor examples") {
  const auto a = embedding_measure_factor(2, 0.5);
  CHECK(a.point_mass_ratio == doctest::Approx(0.25));
  CHECK(a.bound == doctest::Approx(std::exp(-2.0)));
  CHECK(embedding_measure_factor(3, 1.0 / 3).point_mass_ratio == doctest::Approx(std::pow(2.0 / 3, 6)));
  for (int n = 2; n <= 50; ++n) {
    const auto f = embedding_measure_factor(n, 1.0 / n);
    CHECK(f.point_mass_ratio >= f.bound);
  }
}

TEST_CASE("hall membership examples") {
  CHECK(hall_membership(embed_perm(Permutation({3, 1, 2}))));
  auto x = BitMatrix::all_ones(4);
  for (int j = 1; j <= 4; ++j) x.set(2, j, false);
  CHECK_FALSE(hall_membership(x));
}

TEST_CASE("exact hall bound") {
  const auto h = hall_bound(2, Probability(mpq_class(1, 2)), 0, 1);
  CHECK(h.exact);
  CHECK(*h.exact_mu_u == mpq_class(7, 16));
  CHECK(hall_bound(3, Probability(mpq_class(1)), 0, 1).mu_u == doctest::Approx(1.0));
}

TEST_CASE("Monte Carlo hall bound in the logarithmic regime") {
  const int n = 50;
  const auto reg = hall_regime(n);
  CHECK(reg.p == doctest::Approx(10 * std::log(50.0) / 50));
  const auto h = hall_bound(n, Probability(reg.p), 10000, 7);
  CHECK(h.ci_low > 0.5);
  CHECK(h.union_bound_residual <= 0.5);
}

TEST_CASE("Monte Carlo results do not depend on the worker count") {
  const auto a = hall_bound(12, Probability(0.3), 5000, 3, true, 1);
  const auto b = hall_bound(12, Probability(0.3), 5000, 3, true, 3);
  CHECK(a.hits == b.hits);
}

TEST_CASE("Wilson interval") {
  const double z = normal_quantile_two_sided(0.99);
  CHECK(z == doctest::Approx(2.5758).epsilon(1e-4));
  const auto w = wilson_interval(50, 100, z);
  CHECK(w.low < 0.5);
  CHECK(w.high > 0.5);
  CHECK(w.low == doctest::Approx(1 - w.high).epsilon(1e-12));
}

TEST_CASE("union bound matches a direct sum") {
  for (int n : {5, 20, 40}) {
    const double p = 0.4;
    double s = 0;
    for (int k = 1; k <= n; ++k)
      s += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + std::lgamma(n + 1.0) -
                    std::lgamma(k) - std::lgamma(n - k + 2.0) + k * (n - k + 1) * std::log1p(-p));
    CHECK(hall_union_bound(n, p) == doctest::Approx(s).epsilon(1e-9));
  }
}

TEST_CASE("coupling sample at p = 1 always dominates") {
  Rng rng(9);
  for (int s = 0; s < 100; ++s) {
    const auto c = coupling_sample(4, 1.0, rng);
    CHECK(c.x == BitMatrix::all_ones(4));
    CHECK(c.dominated);
  }
}

TEST_CASE("sigma marginal is uniform at n = 3") {
  Rng rng(10);
  std::map<std::uint64_t, int> counts;
  const int samples = 100000;
  for (int s = 0; s < samples; ++s) {
    const auto c = coupling_sample(3, 0.5, rng);
    ++counts[families::rank(c.sigma)];
    if (c.dominated)
      for (int i = 1; i <= 3; ++i) CHECK(c.x.get(i, c.sigma(i)));
  }
  double stat = 0;
  for (std::uint64_t k = 0; k < 6; ++k) {
    const double d = counts[k] - samples / 6.0;
    stat += d * d / (samples / 6.0);
  }
  CHECK(stat < 20.515);  // chi-square, 5 degrees of freedom, alpha = 0.001
}

TEST_CASE("property: permutation embedding preserves agreement on S_5") {
  const auto perms = families::all_permutations(5);
  for (const auto& s : perms)
    for (const auto& u : perms) REQUIRE(common_ones(embed_perm(s), embed_perm(u)) == families::agreement(s, u));
}

TEST_CASE("property: embedding preserves (cross) t-intersection") {
  for (int n = 3; n <= 4; ++n)
    for (int t = 1; t < n; ++t) {
      const auto fam = families::umvirate(families::UmvirateSpec::diagonal(t), n);
      std::vector<cube::Mask> masks;
      for (const auto& s : fam.members()) {
        cube::Mask m = 0;
        const auto x = embed_perm(s);
        for (int i = 1; i <= n; ++i)
          for (int j = 1; j <= n; ++j)
            if (x.get(i, j)) m |= cube::Mask{1} << ((i - 1) * n + j - 1);
        masks.push_back(m);
      }
      const cube::CubeFamily cf(n * n, masks);
      CHECK(families::is_t_intersecting(fam, t) == families::is_t_intersecting(cf, t));
      CHECK(families::is_t_intersecting(fam, t + 1) == families::is_t_intersecting(cf, t + 1));
    }
}

TEST_CASE("property: matchings agree with permutation enumeration") {
  Rng rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(7));
    const auto x = random_matrix(n, 0.2 + 0.6 * rng.uniform(), rng);
    const auto count = oracle::dominated_count(x);
    CHECK(count_dominated_permutations(x) == count);
    CHECK(hall_membership(x) == (count > 0));
    const auto m = perfect_matching(x);
    CHECK(m.has_value() == (count > 0));
    if (m)
      for (int i = 1; i <= n; ++i) CHECK(x.get(i, (*m)[i - 1]));
  }
}

TEST_CASE("property: hall membership is monotone") {
  Rng rng(52);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(20));
    auto x = random_matrix(n, 0.15, rng);
    const bool before = hall_membership(x);
    const int i = 1 + static_cast<int>(rng.below(n)), j = 1 + static_cast<int>(rng.below(n));
    x.set(i, j);
    if (before) CHECK(hall_membership(x));
  }
}

TEST_CASE("property: dominated fraction at least half in the regime") {
  for (int n : {50, 80}) {
    Rng rng(53 + n);
    const double p = hall_regime(n).p;
    int dominated = 0;
    const int samples = 2000;
    for (int s = 0; s < samples; ++s) dominated += coupling_sample(n, p, rng).dominated;
    CHECK(static_cast<double>(dominated) / samples >= 0.5 - 3 * std::sqrt(0.25 / samples));
  }
}
