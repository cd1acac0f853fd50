#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "globalcube/cube.hpp"
#include "globalcube/permutation.hpp"
#include "globalcube/probability.hpp"

namespace globalcube::families {

// Exhaustive search over S_n is capped here.
inline constexpr int kSearchMaxN = 7;
inline constexpr int kCrossSearchMaxN = 5;
inline constexpr int kCubeSearchMaxN = 4;
// Enumeration of all of S_n (filters, exact counts).
inline constexpr int kEnumerateMaxN = 10;

mpz_class factorial(unsigned m);
mpz_class binomial(unsigned n, unsigned k);
mpz_class derangement_count(unsigned m);

/// t disjoint constraints i_k -> j_k: all i distinct, all j distinct.
class UmvirateSpec {
 public:
  UmvirateSpec() = default;
  explicit UmvirateSpec(std::vector<std::pair<int, int>> pairs);
  static UmvirateSpec diagonal(int t);  // 1->1, ..., t->t

  int t() const { return static_cast<int>(pairs_.size()); }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  // Throws StructuralError unless every pair lies in [n] x [n] and t <= n.
  void validate(int n) const;
  bool satisfied_by(const Permutation& sigma) const;

 private:
  std::vector<std::pair<int, int>> pairs_;
};

// --- permutation families ---------------------------------------------------

// All members pairwise (sigma == tau included) agree on >= t points.
bool is_t_intersecting(const PermFamily& family, int t);
bool is_cross_t_intersecting(const PermFamily& a, const PermFamily& b, int t);

// Same checks with a cap on brute-force pair evaluations; nullopt when the
// cap is hit before an answer is known.
std::optional<bool> is_t_intersecting_bounded(const PermFamily& family, int t, std::uint64_t budget);
std::optional<bool> is_cross_t_intersecting_bounded(const PermFamily& a, const PermFamily& b, int t,
                                                    std::uint64_t budget);

// Constraints i -> j shared by every member of the family.
UmvirateSpec common_constraints(const PermFamily& family);
// True when the family equals (S_n)_{i1->j1,...,it->jt} for some t-constraint spec.
bool is_t_umvirate(const PermFamily& family, int t);

PermFamily umvirate(const UmvirateSpec& spec, int n);

enum class SearchMode { single, cross };

struct SearchResult {
  SearchMode mode = SearchMode::single;
  int n = 0;
  int t = 0;
  // single: max |F|; cross: max |A||B|.
  std::uint64_t max_size = 0;
  // Maximum witnesses; in single mode `first` == `second`.
  std::vector<std::pair<PermFamily, PermFamily>> witnesses;
  std::uint64_t witness_count = 0;
  bool witnesses_truncated = false;
  bool all_umvirates = false;
  // (n-t)! in single mode, (n-t)!^2 in cross mode.
  std::uint64_t umvirate_reference = 0;
  std::string scope;
};

/// Exact maximum t-intersecting family in S_n (single) or maximum |A||B| over
/// cross t-intersecting pairs (cross). Reports agreement with the umvirate
/// bound, never asserts it.
SearchResult max_t_intersecting(int n, int t, SearchMode mode, std::size_t max_witnesses = 10000);

struct CounterexampleResult {
  PermFamily family;
  std::uint64_t size = 0;
  mpz_class formula;        // (t+2)(n-t-1)! - (t+1)(n-t-2)!
  mpz_class umvirate_size;  // (n-t)!
  std::optional<bool> t_intersecting;  // nullopt: pair budget exhausted
};

// Permutations with at least t+1 fixed points among {1, ..., t+2}.
CounterexampleResult counterexample_family(int n, int t, std::uint64_t pair_budget = 200'000'000);

struct StabilityResult {
  Permutation sigma;  // transposition (1 n)
  PermFamily a;
  PermFamily b;
  double ratio = 0.0;  // |B| / (n-t)!
  std::optional<bool> cross_intersecting;
};

StabilityResult stability_family(int n, int t, std::uint64_t pair_budget = 200'000'000);

// --- set families in {0,1}^n -----------------------------------------------

// Every pair of members, a member with itself included, shares >= t coordinates.
bool is_t_intersecting(const cube::CubeFamily& family, int t);
bool is_cross_t_intersecting(const cube::CubeFamily& a, const cube::CubeFamily& b, int t);

// F_{t,r} = {x : |x & [t+2r]| >= t+r} inside {0,1}^n.
cube::CubeFamily ak_family(int t, int r, int n);

struct AkCheck {
  double measure = 0.0;
  std::optional<mpq_class> exact_measure;
  bool within_regime = false;  // r/(t+2r-1) < p < (r+1)/(t+2r+1), lower bound 0 when r = 0
  double regime_low = 0.0;
  double regime_high = 0.0;
};

AkCheck ak_bound_check(int t, int r, const Probability& p);

struct CubeSearchResult {
  double max_measure = 0.0;
  std::optional<mpq_class> exact_max_measure;
  cube::CubeFamily witness;
};

/// Exact maximum mu_p over t-intersecting families of subsets of [n], n <= 4.
CubeSearchResult max_t_intersecting_cube(int n, int t, const Probability& p);

}  // namespace globalcube::families
