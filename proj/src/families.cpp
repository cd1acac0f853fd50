#include "globalcube/families.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "globalcube/clique.hpp"
#include "globalcube/errors.hpp"

namespace globalcube::families {

mpz_class factorial(unsigned m) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), m);
  return f;
}

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

mpz_class derangement_count(unsigned m) {
  if (m == 0) return 1;
  mpz_class prev2 = 1, prev1 = 0;  // D(0), D(1)
  for (unsigned k = 2; k <= m; ++k) {
    mpz_class next = (k - 1) * (prev1 + prev2);
    prev2 = prev1;
    prev1 = next;
  }
  return prev1;
}

namespace {

std::uint64_t factorial_u64(int m) {
  std::uint64_t f = 1;
  for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace

// --- UmvirateSpec -----------------------------------------------------------

UmvirateSpec::UmvirateSpec(std::vector<std::pair<int, int>> pairs) : pairs_(std::move(pairs)) {
  std::set<int> is, js;
  for (const auto& [i, j] : pairs_) {
    if (!is.insert(i).second) throw StructuralError("umvirate spec repeats source " + std::to_string(i));
    if (!js.insert(j).second) throw StructuralError("umvirate spec repeats target " + std::to_string(j));
  }
}

UmvirateSpec UmvirateSpec::diagonal(int t) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= t; ++i) pairs.emplace_back(i, i);
  return UmvirateSpec(std::move(pairs));
}

void UmvirateSpec::validate(int n) const {
  if (t() > n) throw StructuralError("umvirate spec has more constraints than points");
  for (const auto& [i, j] : pairs_)
    if (i < 1 || i > n || j < 1 || j > n)
      throw StructuralError("umvirate constraint " + std::to_string(i) + "->" + std::to_string(j) +
                            " outside [" + std::to_string(n) + "]");
}

bool UmvirateSpec::satisfied_by(const Permutation& sigma) const {
  return std::all_of(pairs_.begin(), pairs_.end(), [&](const auto& pr) { return sigma(pr.first) == pr.second; });
}

PermFamily umvirate(const UmvirateSpec& spec, int n) {
  spec.validate(n);
  if (n - spec.t() > kEnumerateMaxN)
    throw ResourceGuardError("umvirate of size (" + std::to_string(n - spec.t()) + ")! is beyond the exact cap");
  // Fill the free positions with every arrangement of the free values.
  std::vector<int> image(n, 0);
  std::vector<bool> used(n + 1, false);
  for (const auto& [i, j] : spec.pairs()) {
    image[i - 1] = j;
    used[j] = true;
  }
  std::vector<int> free_pos, free_val;
  for (int i = 1; i <= n; ++i) {
    if (image[i - 1] == 0) free_pos.push_back(i - 1);
    if (!used[i]) free_val.push_back(i);
  }
  std::vector<Permutation> members;
  members.reserve(factorial_u64(static_cast<int>(free_val.size())));
  do {
    for (std::size_t k = 0; k < free_pos.size(); ++k) image[free_pos[k]] = free_val[k];
    members.emplace_back(image);
  } while (std::next_permutation(free_val.begin(), free_val.end()));
  return PermFamily(n, std::move(members));
}

// --- cross agreement check --------------------------------------------------

namespace {

using Row = const std::uint8_t*;

// Decides whether every (a, b) in A x B agrees on at least `need` of the
// coordinates in `free`. Coordinates outside `free` have been accounted for.
// Splits on the coordinate with the most same-value pairs; brute force below
// a pair threshold. Returns nullopt when the pair budget runs out.
class CrossChecker {
 public:
  CrossChecker(int n, std::uint64_t budget) : n_(n), budget_(budget) {}

  std::optional<bool> run(std::vector<Row> a, std::vector<Row> b, int need) {
    const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    const auto r = check(a, b, need, all);
    if (exhausted_) return std::nullopt;
    return r;
  }

 private:
  static constexpr std::uint64_t kBrutePairs = 1u << 16;

  bool check(const std::vector<Row>& a, const std::vector<Row>& b, int need, std::uint64_t free) {
    if (exhausted_) return true;
    if (need <= 0 || a.empty() || b.empty()) return true;
    if (std::popcount(free) < need) return false;
    const std::uint64_t pairs = static_cast<std::uint64_t>(a.size()) * b.size();
    if (pairs <= kBrutePairs || std::popcount(free) <= 1) return brute(a, b, need, free);

    int best = -1;
    std::uint64_t best_same = 0;
    std::vector<std::uint64_t> ca(n_ + 1), cb(n_ + 1);
    for (int i = 0; i < n_; ++i) {
      if (!((free >> i) & 1U)) continue;
      std::fill(ca.begin(), ca.end(), 0);
      std::fill(cb.begin(), cb.end(), 0);
      for (Row r : a) ++ca[r[i]];
      for (Row r : b) ++cb[r[i]];
      std::uint64_t same = 0;
      for (int v = 1; v <= n_; ++v) same += ca[v] * cb[v];
      if (best < 0 || same > best_same) {
        best = i;
        best_same = same;
      }
    }
    const std::uint64_t rest = free & ~(std::uint64_t{1} << best);
    std::vector<std::vector<Row>> ga(n_ + 1), gb(n_ + 1);
    for (Row r : a) ga[r[best]].push_back(r);
    for (Row r : b) gb[r[best]].push_back(r);
    for (int v = 1; v <= n_; ++v)
      if (!check(ga[v], gb[v], need - 1, rest)) return false;
    for (int v = 1; v <= n_; ++v) {
      if (ga[v].empty()) continue;
      std::vector<Row> others;
      others.reserve(b.size() - gb[v].size());
      for (Row r : b)
        if (r[best] != v) others.push_back(r);
      if (!check(ga[v], others, need, rest)) return false;
    }
    return true;
  }

  bool brute(const std::vector<Row>& a, const std::vector<Row>& b, int need, std::uint64_t free) {
    const std::uint64_t pairs = static_cast<std::uint64_t>(a.size()) * b.size();
    if (pairs > budget_) {
      exhausted_ = true;
      return true;
    }
    budget_ -= pairs;
    std::vector<int> coords;
    for (int i = 0; i < n_; ++i)
      if ((free >> i) & 1U) coords.push_back(i);
    for (Row x : a)
      for (Row y : b) {
        int agree = 0;
        for (int i : coords) agree += x[i] == y[i];
        if (agree < need) return false;
      }
    return true;
  }

  int n_;
  std::uint64_t budget_;
  bool exhausted_ = false;
};

std::vector<Row> rows_of(const PermFamily& f) {
  std::vector<Row> out;
  out.reserve(f.size());
  for (const auto& m : f.members()) out.push_back(m.images().data());
  return out;
}

constexpr std::uint64_t kUnlimited = ~std::uint64_t{0};

}  // namespace

std::optional<bool> is_cross_t_intersecting_bounded(const PermFamily& a, const PermFamily& b, int t,
                                                    std::uint64_t budget) {
  if (a.n() != b.n()) throw StructuralError("cross check of families over different n");
  if (t < 0) throw PreconditionError("t must be non-negative");
  return CrossChecker(a.n(), budget).run(rows_of(a), rows_of(b), t);
}

std::optional<bool> is_t_intersecting_bounded(const PermFamily& family, int t, std::uint64_t budget) {
  return is_cross_t_intersecting_bounded(family, family, t, budget);
}

bool is_cross_t_intersecting(const PermFamily& a, const PermFamily& b, int t) {
  return *is_cross_t_intersecting_bounded(a, b, t, kUnlimited);
}

bool is_t_intersecting(const PermFamily& family, int t) {
  return *is_t_intersecting_bounded(family, t, kUnlimited);
}

UmvirateSpec common_constraints(const PermFamily& family) {
  std::vector<std::pair<int, int>> pairs;
  if (family.empty()) return UmvirateSpec();
  const auto& first = family.members().front();
  for (int i = 1; i <= family.n(); ++i) {
    const int j = first(i);
    if (std::all_of(family.members().begin(), family.members().end(),
                    [&](const Permutation& s) { return s(i) == j; }))
      pairs.emplace_back(i, j);
  }
  return UmvirateSpec(std::move(pairs));
}

bool is_t_umvirate(const PermFamily& family, int t) {
  if (t < 0 || t > family.n()) return false;
  // F lies inside a t-umvirate iff it shares >= t constraints; equality is then a size check.
  return common_constraints(family).t() >= t && family.size() == factorial_u64(family.n() - t);
}

// --- exhaustive search ------------------------------------------------------

namespace {

clique::BitGraph agreement_graph(const std::vector<Permutation>& perms, int t) {
  clique::BitGraph g(perms.size());
  for (std::size_t u = 0; u < perms.size(); ++u)
    for (std::size_t v = u + 1; v < perms.size(); ++v)
      if (agreement(perms[u], perms[v]) >= t) g.add_edge(u, v);
  return g;
}

using Bits = std::vector<std::uint64_t>;

struct Relation {
  std::size_t m = 0;
  std::size_t words = 0;
  std::vector<Bits> rows;  // rows[v]: vertices compatible with v (itself included when t <= n)

  Bits all() const {
    Bits b(words, 0);
    for (std::size_t v = 0; v < m; ++v) b[v / 64] |= std::uint64_t{1} << (v % 64);
    return b;
  }
  // Everything compatible with every member of `set`.
  Bits neighbourhood(const Bits& set) const {
    Bits out = all();
    for (std::size_t v = 0; v < m; ++v)
      if ((set[v / 64] >> (v % 64)) & 1U)
        for (std::size_t w = 0; w < words; ++w) out[w] &= rows[v][w];
    return out;
  }
};

std::uint64_t count_bits(const Bits& b) {
  std::uint64_t c = 0;
  for (auto w : b) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

bool has(const Bits& b, std::size_t v) { return (b[v / 64] >> (v % 64)) & 1U; }

PermFamily family_of(const Bits& b, const std::vector<Permutation>& perms, int n) {
  std::vector<Permutation> members;
  for (std::size_t v = 0; v < perms.size(); ++v)
    if (has(b, v)) members.push_back(perms[v]);
  return PermFamily(n, std::move(members));
}

// Collects closed pairs (A, B = N(A), A = N(B)) of maximum |A||B|.
struct PairCollector {
  std::uint64_t best = 0;
  std::set<std::pair<Bits, Bits>> pairs;

  void offer(const Bits& a, const Bits& b) {
    const std::uint64_t product = count_bits(a) * count_bits(b);
    if (product < best) return;
    if (product > best) {
      best = product;
      pairs.clear();
    }
    pairs.emplace(a, b);
  }
};

// Close-by-one enumeration of all closed pairs of a symmetric relation.
void close_by_one(const Relation& rel, const Bits& extent, const Bits& intent, std::size_t from,
                  PairCollector& out) {
  out.offer(extent, intent);
  for (std::size_t j = from; j < rel.m; ++j) {
    if (has(intent, j)) continue;
    Bits c = extent;
    for (std::size_t w = 0; w < rel.words; ++w) c[w] &= rel.rows[j][w];
    Bits d = rel.neighbourhood(c);
    // Canonicity: the new intent may not add anything below j.
    bool canonical = true;
    for (std::size_t v = 0; v < j && canonical; ++v)
      if (has(d, v) != has(intent, v)) canonical = false;
    if (canonical) close_by_one(rel, c, d, j + 1, out);
  }
}

}  // namespace

SearchResult max_t_intersecting(int n, int t, SearchMode mode, std::size_t max_witnesses) {
  if (n < 1) throw PreconditionError("n must be positive");
  if (t < 0) throw PreconditionError("t must be non-negative");
  const int cap = mode == SearchMode::single ? kSearchMaxN : kCrossSearchMaxN;
  if (n > cap)
    throw ResourceGuardError("exact search is capped at n = " + std::to_string(cap) + " for this mode");

  const auto perms = all_permutations(n);
  SearchResult res;
  res.mode = mode;
  res.n = n;
  res.t = t;
  const std::uint64_t ref = t <= n ? factorial_u64(n - t) : 0;

  if (mode == SearchMode::single) {
    res.umvirate_reference = ref;
    res.scope = "exhaustive";
    if (t > n) {
      // No permutation agrees with itself on more than n points.
      res.max_size = 0;
      res.witness_count = 1;
      res.witnesses.emplace_back(PermFamily(n), PermFamily(n));
      res.all_umvirates = false;
      return res;
    }
    const auto found = clique::all_maximum_cliques(agreement_graph(perms, t), max_witnesses);
    res.max_size = found.max_size;
    res.witness_count = found.count;
    res.witnesses_truncated = found.truncated;
    res.all_umvirates = true;
    for (const auto& c : found.cliques) {
      std::vector<Permutation> members;
      for (auto v : c) members.push_back(perms[v]);
      PermFamily f(n, std::move(members));
      res.all_umvirates = res.all_umvirates && is_t_umvirate(f, t);
      res.witnesses.emplace_back(f, f);
    }
    return res;
  }

  res.umvirate_reference = ref * ref;
  Relation rel;
  rel.m = perms.size();
  rel.words = (rel.m + 63) / 64;
  rel.rows.assign(rel.m, Bits(rel.words, 0));
  for (std::size_t u = 0; u < rel.m; ++u)
    for (std::size_t v = 0; v < rel.m; ++v)
      if (agreement(perms[u], perms[v]) >= t) rel.rows[u][v / 64] |= std::uint64_t{1} << (v % 64);

  PairCollector collector;
  if (n <= 4) {
    res.scope = "exhaustive";
    const Bits top = rel.all();
    close_by_one(rel, top, rel.neighbourhood(top), 0, collector);
  } else {
    res.scope = "restricted: closures of single-family maximum cliques and of singletons";
    auto close_from = [&](const Bits& seed) {
      const Bits b = rel.neighbourhood(seed);
      const Bits a = rel.neighbourhood(b);
      collector.offer(a, b);
    };
    if (t <= n) {
      const auto found = clique::all_maximum_cliques(agreement_graph(perms, t), max_witnesses);
      for (const auto& c : found.cliques) {
        Bits seed(rel.words, 0);
        for (auto v : c) seed[v / 64] |= std::uint64_t{1} << (v % 64);
        close_from(seed);
      }
    }
    for (std::size_t v = 0; v < rel.m; ++v) {
      Bits seed(rel.words, 0);
      seed[v / 64] |= std::uint64_t{1} << (v % 64);
      close_from(seed);
    }
  }

  res.max_size = collector.best;
  res.witness_count = collector.pairs.size();
  res.all_umvirates = true;
  for (const auto& [a, b] : collector.pairs) {
    PermFamily fa = family_of(a, perms, n), fb = family_of(b, perms, n);
    res.all_umvirates = res.all_umvirates && fa == fb && is_t_umvirate(fa, t);
    if (res.witnesses.size() < max_witnesses)
      res.witnesses.emplace_back(std::move(fa), std::move(fb));
    else
      res.witnesses_truncated = true;
  }
  return res;
}

// --- constructions ------------------------------------------------------------

CounterexampleResult counterexample_family(int n, int t, std::uint64_t pair_budget) {
  if (t < 0) throw PreconditionError("t must be non-negative");
  if (t + 2 > n) throw PreconditionError("counterexample family needs t + 2 <= n");
  if (n > kEnumerateMaxN)
    throw ResourceGuardError("enumerating S_" + std::to_string(n) + " is beyond the cap (" +
                             std::to_string(kEnumerateMaxN) + ")");
  std::vector<Permutation> members;
  for_each_permutation(n, [&](const Permutation& s) {
    int fixed = 0;
    for (int i = 1; i <= t + 2; ++i) fixed += s(i) == i;
    if (fixed >= t + 1) members.push_back(s);
  });
  CounterexampleResult res{PermFamily(n, std::move(members)), 0, 0, 0, std::nullopt};
  res.size = res.family.size();
  res.formula = (t + 2) * factorial(static_cast<unsigned>(n - t - 1)) -
                (t + 1) * factorial(static_cast<unsigned>(n - t - 2));
  res.umvirate_size = factorial(static_cast<unsigned>(n - t));
  res.t_intersecting = is_t_intersecting_bounded(res.family, t, pair_budget);
  return res;
}

StabilityResult stability_family(int n, int t, std::uint64_t pair_budget) {
  if (t < 1 || t >= n - 1)
    throw PreconditionError("stability family needs 1 <= t < n - 1 (got n = " + std::to_string(n) +
                            ", t = " + std::to_string(t) + ")");
  const auto sigma = Permutation::transposition(n, 1, n);
  const auto base = umvirate(UmvirateSpec::diagonal(t), n);
  std::vector<Permutation> a_members = base.members();
  a_members.push_back(sigma);
  std::vector<Permutation> b_members;
  for (const auto& tau : base.members())
    if (agreement(tau, sigma) >= t) b_members.push_back(tau);
  StabilityResult res{sigma, PermFamily(n, std::move(a_members)), PermFamily(n, std::move(b_members)), 0.0,
                      std::nullopt};
  res.ratio = static_cast<double>(res.b.size()) / static_cast<double>(factorial_u64(n - t));
  res.cross_intersecting = is_cross_t_intersecting_bounded(res.a, res.b, t, pair_budget);
  return res;
}

// --- cube set families ------------------------------------------------------

bool is_cross_t_intersecting(const cube::CubeFamily& a, const cube::CubeFamily& b, int t) {
  if (a.dim() != b.dim()) throw StructuralError("cross check of cube families with different dimensions");
  if (t < 0) throw PreconditionError("t must be non-negative");
  for (auto x : a.members())
    for (auto y : b.members())
      if (std::popcount(x & y) < t) return false;
  return true;
}

bool is_t_intersecting(const cube::CubeFamily& family, int t) {
  if (t < 0) throw PreconditionError("t must be non-negative");
  for (auto x : family.members())
    if (std::popcount(x) < t) return false;
  return is_cross_t_intersecting(family, family, t);
}

namespace {

void check_ak_params(int t, int r) {
  if (t < 1) throw PreconditionError("AK family needs t >= 1");
  if (r < 0) throw PreconditionError("AK family needs r >= 0");
}

}  // namespace

cube::CubeFamily ak_family(int t, int r, int n) {
  check_ak_params(t, r);
  if (t + 2 * r > n) throw PreconditionError("AK family needs t + 2r <= n");
  cube::require_exact_dim(n);
  const cube::Mask core = cube::full_mask(t + 2 * r);
  auto f = cube::CubeFamily::from_predicate(n, [&](cube::Mask x) { return std::popcount(x & core) >= t + r; });
  // Intersections are decided on the first t + 2r coordinates alone.
  if (t + 2 * r <= 16) {
    auto core_family = n == t + 2 * r ? f : ak_family(t, r, t + 2 * r);
    if (!is_t_intersecting(core_family, t))
      throw PreconditionError("internal: AK family failed its intersection check");
  }
  return f;
}

AkCheck ak_bound_check(int t, int r, const Probability& p) {
  check_ak_params(t, r);
  const double pv = p.value();
  if (!(pv > 0.0 && pv < 1.0)) throw PreconditionError("p must lie in (0, 1)");
  const int m = t + 2 * r;
  AkCheck res;
  long double total = 0;
  for (int k = t + r; k <= m; ++k)
    total += static_cast<long double>(binomial(m, k).get_d()) * std::pow(static_cast<long double>(pv), k) *
             std::pow(1.0L - pv, m - k);
  res.measure = static_cast<double>(total);
  if (p.exact()) {
    const mpq_class& q = *p.exact();
    mpq_class sum = 0;
    for (int k = t + r; k <= m; ++k) {
      mpq_class term = binomial(m, k);
      for (int i = 0; i < k; ++i) term *= q;
      for (int i = 0; i < m - k; ++i) term *= (1 - q);
      sum += term;
    }
    res.exact_measure = sum;
    res.measure = sum.get_d();
  }
  res.regime_low = r == 0 ? 0.0 : static_cast<double>(r) / (m - 1);
  res.regime_high = static_cast<double>(r + 1) / (m + 1);
  if (p.exact()) {
    const mpq_class& q = *p.exact();
    const mpq_class lo = r == 0 ? mpq_class(0) : mpq_class(r, m - 1);
    const mpq_class hi(r + 1, m + 1);
    res.within_regime = lo < q && q < hi;
  } else {
    res.within_regime = res.regime_low < pv && pv < res.regime_high;
  }
  return res;
}

// --- exhaustive cube search -------------------------------------------------

namespace {

// Max-weight clique among sets of size >= t with pairwise intersections >= t.
class CubeCliqueSearch {
 public:
  CubeCliqueSearch(std::vector<cube::Mask> verts, std::vector<double> weights, int t)
      : v_(std::move(verts)), w_(std::move(weights)), t_(t) {}

  double best_weight() {
    collect_floor_ = -1;
    std::vector<std::size_t> cand(v_.size());
    for (std::size_t i = 0; i < cand.size(); ++i) cand[i] = i;
    std::vector<std::size_t> cur;
    grow(cur, 0.0, cand);
    return best_;
  }

  // All cliques of weight >= floor that are maximal with respect to inclusion.
  std::vector<std::vector<std::size_t>> near_best(double floor) {
    collect_floor_ = floor;
    found_.clear();
    std::vector<std::size_t> cand(v_.size());
    for (std::size_t i = 0; i < cand.size(); ++i) cand[i] = i;
    std::vector<std::size_t> cur;
    grow(cur, 0.0, cand);
    return found_;
  }

 private:
  bool compatible(std::size_t a, std::size_t b) const { return std::popcount(v_[a] & v_[b]) >= t_; }

  void grow(std::vector<std::size_t>& cur, double weight, const std::vector<std::size_t>& cand) {
    double bound = weight;
    for (auto c : cand) bound += w_[c];
    if (collect_floor_ < 0) {
      if (bound <= best_ && !cur.empty()) return;
      if (cand.empty()) {
        best_ = std::max(best_, weight);
        return;
      }
    } else {
      if (bound < collect_floor_) return;
      if (cand.empty()) {
        found_.push_back(cur);
        return;
      }
    }
    // Branch on the first candidate: take it, or exclude it.
    const std::size_t v = cand.front();
    std::vector<std::size_t> with;
    for (std::size_t k = 1; k < cand.size(); ++k)
      if (compatible(v, cand[k])) with.push_back(cand[k]);
    cur.push_back(v);
    grow(cur, weight + w_[v], with);
    cur.pop_back();
    std::vector<std::size_t> without(cand.begin() + 1, cand.end());
    // Excluding v is only useful if some remaining candidate blocks it.
    if (std::any_of(without.begin(), without.end(), [&](std::size_t c) { return !compatible(v, c); }) ||
        collect_floor_ < 0)
      grow(cur, weight, without);
  }

  std::vector<cube::Mask> v_;
  std::vector<double> w_;
  int t_;
  double best_ = 0.0;
  double collect_floor_ = -1;
  std::vector<std::vector<std::size_t>> found_;
};

}  // namespace

CubeSearchResult max_t_intersecting_cube(int n, int t, const Probability& p) {
  if (n < 0) throw PreconditionError("n must be non-negative");
  if (n > kCubeSearchMaxN)
    throw ResourceGuardError("cube family search is capped at n = " + std::to_string(kCubeSearchMaxN));
  if (t < 0) throw PreconditionError("t must be non-negative");
  const double pv = p.value();
  if (!(pv > 0.0 && pv < 1.0)) throw PreconditionError("p must lie in (0, 1)");

  std::vector<cube::Mask> verts;
  std::vector<double> weights;
  for (cube::Mask x = 0; x <= cube::full_mask(n); ++x)
    if (std::popcount(x) >= t) {
      verts.push_back(x);
      weights.push_back(cube::point_mass(x, n, pv));
    }
  CubeCliqueSearch search(verts, weights, t);
  const double best = search.best_weight();
  auto candidates = search.near_best(best - 1e-9);

  CubeSearchResult res{0.0, std::nullopt, cube::CubeFamily::empty(n)};
  bool first = true;
  for (const auto& c : candidates) {
    std::vector<cube::Mask> members;
    for (auto i : c) members.push_back(verts[i]);
    cube::CubeFamily fam(n, std::move(members));
    if (p.exact()) {
      const mpq_class m = cube::measure_exact(fam, *p.exact());
      if (first || m > *res.exact_max_measure) {
        res.exact_max_measure = m;
        res.max_measure = m.get_d();
        res.witness = fam;
      }
    } else {
      const double m = cube::measure(fam, pv);
      if (first || m > res.max_measure) {
        res.max_measure = m;
        res.witness = fam;
      }
    }
    first = false;
  }
  return res;
}

}  // namespace globalcube::families
