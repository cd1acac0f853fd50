#pragma once

// Brute-force reference implementations used only by tests. They share no code
// with the library beyond the plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include <gmpxx.h>

#include "globalcube/cube.hpp"
#include "globalcube/embed.hpp"
#include "globalcube/permutation.hpp"
#include "globalcube/rng.hpp"

namespace oracle {

using globalcube::cube::Mask;

inline double mass(Mask x, int n, double p) {
  double m = 1;
  for (int i = 0; i < n; ++i) m *= ((x >> i) & 1U) ? p : 1 - p;
  return m;
}

inline mpq_class mass_exact(Mask x, int n, const mpq_class& p) {
  mpq_class m = 1;
  for (int i = 0; i < n; ++i) m *= ((x >> i) & 1U) ? p : mpq_class(1 - p);
  return m;
}

inline mpq_class measure_exact(const std::vector<Mask>& members, int n, const mpq_class& p) {
  mpq_class s = 0;
  for (Mask x : members) s += mass_exact(x, n, p);
  return s;
}

inline double chi(Mask s, Mask x, int n, double p) {
  const double sd = std::sqrt(p * (1 - p));
  double v = 1;
  for (int i = 0; i < n; ++i)
    if ((s >> i) & 1U) v *= ((x >> i) & 1U) ? (1 - p) / sd : -p / sd;
  return v;
}

// Coefficient by the defining sum, O(4^n).
inline std::vector<double> fourier(const std::vector<double>& f, int n, double p) {
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> c(size, 0.0);
  for (Mask s = 0; s < size; ++s)
    for (Mask x = 0; x < size; ++x) c[s] += mass(x, n, p) * f[x] * chi(s, x, n, p);
  return c;
}

// E[f(x) | y] where each x_i is 1 with probability q/p if y_i = 1, else 0.
inline std::vector<double> coupling(const std::vector<double>& f, int n, double q, double p) {
  const std::size_t size = std::size_t{1} << n;
  const double r = q / p;
  std::vector<double> out(size, 0.0);
  for (Mask y = 0; y < size; ++y)
    for (Mask x = 0; x < size; ++x) {
      if ((x & ~y) != 0) continue;
      double w = 1;
      for (int i = 0; i < n; ++i)
        if ((y >> i) & 1U) w *= ((x >> i) & 1U) ? r : 1 - r;
      out[y] += w * f[x];
    }
  return out;
}

inline std::vector<Mask> up_closure(const std::vector<Mask>& members, int n) {
  std::vector<Mask> out;
  for (Mask y = 0; y < (Mask{1} << n); ++y)
    for (Mask x : members)
      if ((x & ~y) == 0) {
        out.push_back(y);
        break;
      }
  return out;
}

inline std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  std::vector<std::vector<int>> out;
  do out.push_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

inline int agree(const std::vector<int>& a, const std::vector<int>& b) {
  int c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += a[i] == b[i];
  return c;
}

inline std::uint64_t derangements(int m) {
  if (m == 0) return 1;
  std::uint64_t c = 0;
  for (const auto& p : permutations(m)) {
    bool fixed = false;
    for (int i = 0; i < m; ++i) fixed = fixed || p[i] == i + 1;
    c += !fixed;
  }
  return c;
}

// Number of permutations whose matrix is covered by x (a permanent).
inline std::uint64_t dominated_count(const globalcube::embed::BitMatrix& x) {
  std::uint64_t c = 0;
  for (const auto& p : permutations(x.n())) {
    bool ok = true;
    for (int i = 1; i <= x.n() && ok; ++i) ok = x.get(i, p[i - 1]);
    c += ok;
  }
  return c;
}

// Bron-Kerbosch with pivoting over an adjacency list; reports every maximal clique.
class MaximalCliques {
 public:
  explicit MaximalCliques(std::vector<std::vector<bool>> adj) : adj_(std::move(adj)) {}

  void run(const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> r, p(adj_.size()), x;
    std::iota(p.begin(), p.end(), 0);
    recurse(r, p, x, visit);
  }

 private:
  void recurse(std::vector<int>& r, std::vector<int> p, std::vector<int> x,
               const std::function<void(const std::vector<int>&)>& visit) {
    if (p.empty() && x.empty()) {
      visit(r);
      return;
    }
    int pivot = p.empty() ? x.front() : p.front();
    std::vector<int> candidates;
    for (int v : p)
      if (!adj_[pivot][v]) candidates.push_back(v);
    for (int v : candidates) {
      std::vector<int> np, nx;
      for (int u : p)
        if (adj_[v][u]) np.push_back(u);
      for (int u : x)
        if (adj_[v][u]) nx.push_back(u);
      r.push_back(v);
      recurse(r, np, nx, visit);
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  }

  std::vector<std::vector<bool>> adj_;
};

// Maximum t-intersecting subfamilies of S_n found from all maximal cliques.
struct CliqueOracle {
  std::size_t max_size = 0;
  std::vector<std::vector<int>> maximum;  // vertex indices into permutations(n)
};

inline CliqueOracle max_intersecting(int n, int t) {
  const auto perms = permutations(n);
  std::vector<std::vector<bool>> adj(perms.size(), std::vector<bool>(perms.size(), false));
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (std::size_t b = 0; b < perms.size(); ++b) adj[a][b] = a != b && agree(perms[a], perms[b]) >= t;
  CliqueOracle out;
  MaximalCliques(adj).run([&](const std::vector<int>& c) {
    // Self-agreement n >= t is required for a vertex to appear at all.
    if (n < t) return;
    if (c.size() > out.max_size) {
      out.max_size = c.size();
      out.maximum.clear();
    }
    if (c.size() == out.max_size) {
      auto s = c;
      std::sort(s.begin(), s.end());
      out.maximum.push_back(s);
    }
  });
  return out;
}

// Random monotone family: up-closure of a few random points.
inline std::vector<Mask> random_monotone(int n, globalcube::Rng& rng, double density = 0.5) {
  std::vector<Mask> gens(1 + rng.below(4));
  for (auto& g : gens) {
    g = 0;
    for (int i = 0; i < n; ++i)
      if (rng.bernoulli(density)) g |= Mask{1} << i;
  }
  return up_closure(gens, n);
}

}  // namespace oracle
