#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "globalcube/permutation.hpp"
#include "globalcube/probability.hpp"
#include "globalcube/rng.hpp"

namespace globalcube::embed {

using families::Permutation;

// Largest n accepted by the matrix routines (n^2 bits per point).
inline constexpr int kMaxMatrixN = 200;
// Exact uniform choice among dominated permutations up to this n.
inline constexpr int kExactCouplingMaxN = 8;
// hall_bound enumerates all 2^(n^2) matrices up to this n.
inline constexpr int kExactHallMaxN = 3;

/// A word in [n]^n, letters 1-based.
class WordPoint {
 public:
  explicit WordPoint(std::vector<int> letters);
  int n() const { return static_cast<int>(letters_.size()); }
  int operator()(int i) const { return letters_[i - 1]; }
  const std::vector<int>& letters() const { return letters_; }

 private:
  std::vector<int> letters_;
};

/// A point of {0,1}^(n^2): n row blocks of n bits. Coordinate (i-1)n + j
/// (1-based) is row i, column j.
class BitMatrix {
 public:
  explicit BitMatrix(int n);
  static BitMatrix all_ones(int n);
  // Row-major bits, coordinate 1 first ("1001" is the 2x2 identity).
  static BitMatrix from_bitstring(int n, const std::string& bits);

  int n() const { return n_; }
  bool get(int i, int j) const;
  void set(int i, int j, bool value = true);
  int weight() const;
  std::uint64_t row_bits(int i) const;  // n <= 64 only
  std::string to_bitstring() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t index(int i, int j) const;
  int n_;
  std::vector<std::uint64_t> words_;
};

BitMatrix embed_perm(const Permutation& sigma);
BitMatrix embed_word(const WordPoint& w);

// Number of coordinates set in both matrices.
int common_ones(const BitMatrix& a, const BitMatrix& b);
// a <= b coordinate-wise.
bool dominated(const BitMatrix& a, const BitMatrix& b);

struct MeasureFactor {
  double point_mass_ratio = 0.0;  // n^n p^n (1-p)^(n^2-n)
  double bound = 0.0;             // e^-n
};

MeasureFactor embedding_measure_factor(int n, double p);

// Perfect matching of rows to columns through 1-entries, found with
// augmenting paths. match[i-1] is the column of row i.
std::optional<std::vector<int>> perfect_matching(const BitMatrix& x);
bool hall_membership(const BitMatrix& x);
// Number of permutations sigma with E(sigma) <= x (the permanent of x).
std::uint64_t count_dominated_permutations(const BitMatrix& x);

struct CouplingSample {
  BitMatrix x;
  Permutation sigma;
  bool dominated = false;
  bool exact_uniform = true;  // false for n > kExactCouplingMaxN
};

/// x ~ mu_p on {0,1}^(n^2); sigma uniform among {sigma : E(sigma) <= x}, or
/// uniform on S_n when that set is empty. Above kExactCouplingMaxN the choice
/// among prospects comes from a randomised augmenting-path matching and is
/// not exactly uniform.
CouplingSample coupling_sample(int n, double p, Rng& rng);

struct HallRegime {
  double p = 0.0;      // min(1, 10 ln n / n)
  bool vacuous = false;  // the uncapped value exceeds 1
};

HallRegime hall_regime(int n);

struct HallBound {
  bool exact = false;
  double mu_u = 0.0;
  std::optional<mpq_class> exact_mu_u;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  double ci_low = 0.0;   // Wilson 99%
  double ci_high = 0.0;
  double union_bound_residual = 0.0;  // sum_k C(n,k) C(n,k-1) (1-p)^(k(n-k+1))
};

// sum_k C(n,k) C(n,k-1) (1-p)^(k(n-k+1)) in extended precision.
double hall_union_bound(int n, double p);

/// mu_p(U) for U the up-closure of E(S_n): exact for n <= 3, otherwise Monte
/// Carlo split into fixed chunks with per-chunk seeds, so results do not
/// depend on `workers`.
HallBound hall_bound(int n, const Probability& p, std::uint64_t samples, std::uint64_t seed,
                     bool force_monte_carlo = false, int workers = 1);

struct Wilson {
  double low = 0.0;
  double high = 0.0;
};

Wilson wilson_interval(std::uint64_t hits, std::uint64_t trials, double z);
// Two-sided normal quantile for the given confidence, e.g. 0.99 -> 2.5758.
double normal_quantile_two_sided(double confidence);

}  // namespace globalcube::embed
