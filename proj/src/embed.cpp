#include "globalcube/embed.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <future>
#include <numeric>
#include <unordered_map>

#include <boost/math/distributions/normal.hpp>

#include "globalcube/errors.hpp"

namespace globalcube::embed {

WordPoint::WordPoint(std::vector<int> letters) : letters_(std::move(letters)) {
  const int n = static_cast<int>(letters_.size());
  if (n < 1 || n > kMaxMatrixN) throw StructuralError("word length out of range");
  for (int v : letters_)
    if (v < 1 || v > n) throw StructuralError("word letter " + std::to_string(v) + " outside [n]");
}

BitMatrix::BitMatrix(int n) : n_(n) {
  if (n < 1 || n > kMaxMatrixN) throw StructuralError("bit matrix size out of range");
  words_.assign((static_cast<std::size_t>(n) * n + 63) / 64, 0);
}

BitMatrix BitMatrix::all_ones(int n) {
  BitMatrix m(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) m.set(i, j);
  return m;
}

BitMatrix BitMatrix::from_bitstring(int n, const std::string& bits) {
  BitMatrix m(n);
  if (bits.size() != static_cast<std::size_t>(n) * n)
    throw StructuralError("bit string length " + std::to_string(bits.size()) + " is not n^2");
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] != '0' && bits[k] != '1') throw StructuralError("bit string must contain only 0 and 1");
    if (bits[k] == '1') m.words_[k / 64] |= std::uint64_t{1} << (k % 64);
  }
  return m;
}

std::size_t BitMatrix::index(int i, int j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_) throw StructuralError("bit matrix index out of range");
  return static_cast<std::size_t>(i - 1) * n_ + (j - 1);
}

bool BitMatrix::get(int i, int j) const {
  const auto k = index(i, j);
  return (words_[k / 64] >> (k % 64)) & 1U;
}

void BitMatrix::set(int i, int j, bool value) {
  const auto k = index(i, j);
  const std::uint64_t bit = std::uint64_t{1} << (k % 64);
  if (value)
    words_[k / 64] |= bit;
  else
    words_[k / 64] &= ~bit;
}

int BitMatrix::weight() const {
  int w = 0;
  for (auto x : words_) w += std::popcount(x);
  return w;
}

std::uint64_t BitMatrix::row_bits(int i) const {
  if (n_ > 64) throw ResourceGuardError("row_bits needs n <= 64");
  std::uint64_t r = 0;
  for (int j = 1; j <= n_; ++j)
    if (get(i, j)) r |= std::uint64_t{1} << (j - 1);
  return r;
}

std::string BitMatrix::to_bitstring() const {
  std::string s;
  s.reserve(static_cast<std::size_t>(n_) * n_);
  for (int i = 1; i <= n_; ++i)
    for (int j = 1; j <= n_; ++j) s.push_back(get(i, j) ? '1' : '0');
  return s;
}

BitMatrix embed_perm(const Permutation& sigma) {
  BitMatrix m(sigma.size());
  for (int i = 1; i <= sigma.size(); ++i) m.set(i, sigma(i));
  return m;
}

BitMatrix embed_word(const WordPoint& w) {
  BitMatrix m(w.n());
  for (int i = 1; i <= w.n(); ++i) m.set(i, w(i));
  return m;
}

int common_ones(const BitMatrix& a, const BitMatrix& b) {
  if (a.n() != b.n()) throw StructuralError("bit matrices of different sizes");
  int c = 0;
  for (int i = 1; i <= a.n(); ++i)
    for (int j = 1; j <= a.n(); ++j) c += a.get(i, j) && b.get(i, j);
  return c;
}

bool dominated(const BitMatrix& a, const BitMatrix& b) {
  if (a.n() != b.n()) throw StructuralError("bit matrices of different sizes");
  for (int i = 1; i <= a.n(); ++i)
    for (int j = 1; j <= a.n(); ++j)
      if (a.get(i, j) && !b.get(i, j)) return false;
  return true;
}

MeasureFactor embedding_measure_factor(int n, double p) {
  if (n < 1) throw PreconditionError("n must be positive");
  if (!(p > 0.0 && p < 1.0)) throw PreconditionError("p must lie in (0, 1)");
  const long double nl = n;
  const long double log_ratio = nl * std::log(nl) + nl * std::log(static_cast<long double>(p)) +
                                (nl * nl - nl) * std::log1p(-static_cast<long double>(p));
  return {static_cast<double>(std::exp(log_ratio)), std::exp(-static_cast<double>(n))};
}

// --- matchings --------------------------------------------------------------

namespace {

std::vector<std::vector<int>> adjacency(const BitMatrix& x) {
  std::vector<std::vector<int>> adj(x.n());
  for (int i = 1; i <= x.n(); ++i)
    for (int j = 1; j <= x.n(); ++j)
      if (x.get(i, j)) adj[i - 1].push_back(j - 1);
  return adj;
}

// Kuhn's augmenting paths; returns the matching size.
int max_matching(const std::vector<std::vector<int>>& adj, int n, std::vector<int>& row_of_col,
                 std::vector<int>& col_of_row) {
  row_of_col.assign(n, -1);
  col_of_row.assign(n, -1);
  std::vector<int> seen(n, -1);
  int size = 0;
  std::function<bool(int, int)> augment = [&](int r, int stamp) {
    for (int c : adj[r]) {
      if (seen[c] == stamp) continue;
      seen[c] = stamp;
      if (row_of_col[c] < 0 || augment(row_of_col[c], stamp)) {
        row_of_col[c] = r;
        col_of_row[r] = c;
        return true;
      }
    }
    return false;
  };
  for (int r = 0; r < n; ++r)
    if (augment(r, r)) ++size;
  return size;
}

}  // namespace

std::optional<std::vector<int>> perfect_matching(const BitMatrix& x) {
  const int n = x.n();
  std::vector<int> row_of_col, col_of_row;
  if (max_matching(adjacency(x), n, row_of_col, col_of_row) < n) return std::nullopt;
  for (auto& c : col_of_row) ++c;
  return col_of_row;
}

bool hall_membership(const BitMatrix& x) { return perfect_matching(x).has_value(); }

namespace {

// Permanent-style counter: ways to match rows row..n-1 avoiding used columns.
class MatchingCounter {
 public:
  explicit MatchingCounter(const BitMatrix& x) : n_(x.n()) {
    if (n_ > 20) throw ResourceGuardError("exact matching count needs n <= 20");
    for (int i = 1; i <= n_; ++i) rows_.push_back(x.row_bits(i));
  }

  std::uint64_t count(int row, std::uint32_t used) {
    if (row == n_) return 1;
    const std::uint64_t key = (static_cast<std::uint64_t>(row) << 32) | used;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::uint64_t total = 0;
    std::uint64_t avail = rows_[row] & ~static_cast<std::uint64_t>(used);
    while (avail) {
      const int c = std::countr_zero(avail);
      avail &= avail - 1;
      total += count(row + 1, used | (std::uint32_t{1} << c));
    }
    memo_.emplace(key, total);
    return total;
  }

  int n() const { return n_; }
  std::uint64_t row(int r) const { return rows_[r]; }

 private:
  int n_;
  std::vector<std::uint64_t> rows_;
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

Permutation uniform_permutation(int n, Rng& rng) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  rng.shuffle(std::span<int>(img));
  return Permutation(std::move(img));
}

}  // namespace

std::uint64_t count_dominated_permutations(const BitMatrix& x) { return MatchingCounter(x).count(0, 0); }

CouplingSample coupling_sample(int n, double p, Rng& rng) {
  if (n < 1) throw PreconditionError("n must be positive");
  if (!(p > 0.0 && p <= 1.0)) throw PreconditionError("p must lie in (0, 1]");
  BitMatrix x(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (p >= 1.0 || rng.bernoulli(p)) x.set(i, j);

  if (n <= kExactCouplingMaxN) {
    MatchingCounter counter(x);
    const std::uint64_t total = counter.count(0, 0);
    if (total == 0) return {x, uniform_permutation(n, rng), false, true};
    // Walk row by row, choosing each column with probability proportional
    // to the number of completions.
    std::uint64_t target = rng.below(total);
    std::uint32_t used = 0;
    std::vector<int> img(n);
    for (int r = 0; r < n; ++r) {
      std::uint64_t avail = counter.row(r) & ~static_cast<std::uint64_t>(used);
      while (avail) {
        const int c = std::countr_zero(avail);
        avail &= avail - 1;
        const std::uint64_t ways = counter.count(r + 1, used | (std::uint32_t{1} << c));
        if (target < ways) {
          img[r] = c + 1;
          used |= std::uint32_t{1} << c;
          break;
        }
        target -= ways;
      }
    }
    Permutation sigma(std::move(img));
    return {x, sigma, dominated(embed_perm(sigma), x), true};
  }

  // Randomised augmenting paths: shuffled row order and adjacency lists.
  auto adj = adjacency(x);
  for (auto& a : adj) rng.shuffle(std::span<int>(a));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<int>(order));
  std::vector<std::vector<int>> permuted(n);
  for (int k = 0; k < n; ++k) permuted[k] = adj[order[k]];
  std::vector<int> row_of_col, col_of_row;
  if (max_matching(permuted, n, row_of_col, col_of_row) < n) return {x, uniform_permutation(n, rng), false, false};
  std::vector<int> img(n);
  for (int k = 0; k < n; ++k) img[order[k]] = col_of_row[k] + 1;
  Permutation sigma(std::move(img));
  return {x, sigma, dominated(embed_perm(sigma), x), false};
}

// --- Hall bound ---------------------------------------------------------------

HallRegime hall_regime(int n) {
  if (n < 2) throw PreconditionError("hall regime needs n >= 2");
  const double raw = 10.0 * std::log(static_cast<double>(n)) / n;
  return {std::min(1.0, raw), raw > 1.0};
}

double hall_union_bound(int n, double p) {
  if (n < 1) throw PreconditionError("n must be positive");
  if (!(p > 0.0 && p <= 1.0)) throw PreconditionError("p must lie in (0, 1]");
  long double total = 0;
  const long double log_q = p >= 1.0 ? -INFINITY : std::log1p(-static_cast<long double>(p));
  for (int k = 1; k <= n; ++k) {
    const long double log_binoms = std::lgamma(static_cast<long double>(n) + 1) * 2 -
                                   std::lgamma(static_cast<long double>(k) + 1) -
                                   std::lgamma(static_cast<long double>(n - k) + 1) -
                                   std::lgamma(static_cast<long double>(k)) -
                                   std::lgamma(static_cast<long double>(n - k) + 2);
    const long double exponent = static_cast<long double>(k) * (n - k + 1);
    total += std::exp(log_binoms + exponent * log_q);
  }
  return static_cast<double>(total);
}

double normal_quantile_two_sided(double confidence) {
  boost::math::normal_distribution<double> normal;
  return boost::math::quantile(normal, 1.0 - (1.0 - confidence) / 2.0);
}

Wilson wilson_interval(std::uint64_t hits, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double nt = static_cast<double>(trials);
  const double phat = static_cast<double>(hits) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double centre = (phat + z2 / (2 * nt)) / denom;
  const double half = z * std::sqrt(phat * (1 - phat) / nt + z2 / (4 * nt * nt)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

namespace {

constexpr std::uint64_t kChunk = 1024;

std::uint64_t count_hits(int n, double p, std::uint64_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < count; ++s) {
    BitMatrix x(n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (p >= 1.0 || rng.bernoulli(p)) x.set(i, j);
    hits += hall_membership(x);
  }
  return hits;
}

}  // namespace

HallBound hall_bound(int n, const Probability& p, std::uint64_t samples, std::uint64_t seed,
                     bool force_monte_carlo, int workers) {
  if (n < 1) throw PreconditionError("n must be positive");
  const double pv = p.value();
  if (!(pv > 0.0 && pv <= 1.0)) throw PreconditionError("p must lie in (0, 1]");
  HallBound res;
  res.union_bound_residual = hall_union_bound(n, pv);

  if (n <= kExactHallMaxN && !force_monte_carlo) {
    res.exact = true;
    const int bits = n * n;
    long double total = 0;
    std::optional<mpq_class> exact;
    if (p.exact()) exact = mpq_class(0);
    for (std::uint32_t code = 0; code < (std::uint32_t{1} << bits); ++code) {
      BitMatrix x(n);
      for (int k = 0; k < bits; ++k)
        if ((code >> k) & 1U) x.set(k / n + 1, k % n + 1);
      if (!hall_membership(x)) continue;
      const int w = std::popcount(code);
      total += std::pow(static_cast<long double>(pv), w) * std::pow(1.0L - pv, bits - w);
      if (exact) {
        mpq_class term = 1;
        for (int k = 0; k < w; ++k) term *= *p.exact();
        for (int k = w; k < bits; ++k) term *= 1 - *p.exact();
        *exact += term;
      }
    }
    res.mu_u = exact ? exact->get_d() : static_cast<double>(total);
    res.exact_mu_u = exact;
    res.ci_low = res.ci_high = res.mu_u;
    return res;
  }

  if (samples == 0) throw PreconditionError("samples must be positive");
  if (workers < 1) throw PreconditionError("workers must be positive");
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  auto chunk_size = [&](std::uint64_t c) { return std::min(kChunk, samples - c * kChunk); };
  std::vector<std::uint64_t> hits(chunks, 0);
  if (workers == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) hits[c] = count_hits(n, pv, chunk_size(c), derive_seed(seed, c));
  } else {
    std::vector<std::future<void>> jobs;
    for (int w = 0; w < workers; ++w)
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::uint64_t c = static_cast<std::uint64_t>(w); c < chunks; c += static_cast<std::uint64_t>(workers))
          hits[c] = count_hits(n, pv, chunk_size(c), derive_seed(seed, c));
      }));
    for (auto& j : jobs) j.get();
  }
  res.samples = samples;
  res.hits = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  res.mu_u = static_cast<double>(res.hits) / static_cast<double>(samples);
  const auto ci = wilson_interval(res.hits, samples, normal_quantile_two_sided(0.99));
  res.ci_low = ci.low;
  res.ci_high = ci.high;
  return res;
}

}  // namespace globalcube::embed
