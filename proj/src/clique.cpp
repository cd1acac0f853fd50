#include "globalcube/clique.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace globalcube::clique {

BitGraph::BitGraph(std::size_t n) : n_(n), words_((n + 63) / 64), adj_(n * ((n + 63) / 64), 0) {}

void BitGraph::add_edge(std::size_t u, std::size_t v) {
  if (u == v) return;
  adj_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
  adj_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
}

std::size_t BitGraph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (std::size_t w = 0; w < words_; ++w) d += std::popcount(row(v)[w]);
  return d;
}

namespace {

using Bits = std::vector<std::uint64_t>;

class Search {
 public:
  Search(const BitGraph& g, std::size_t max_kept) : g_(g), max_kept_(max_kept) {}

  CliqueSearchResult run() {
    Bits all(g_.words(), 0);
    for (std::size_t v = 0; v < g_.size(); ++v) all[v / 64] |= std::uint64_t{1} << (v % 64);
    if (g_.size() > 0) expand(all);
    return std::move(result_);
  }

 private:
  // Greedy colouring of P in vertex order; fills order/colour so that the
  // colour of order[k] bounds the clique size reachable from order[0..k].
  void colour(const Bits& p, std::vector<std::size_t>& order, std::vector<std::size_t>& bound) const {
    Bits uncoloured = p;
    std::size_t c = 0;
    while (any(uncoloured)) {
      ++c;
      Bits q = uncoloured;
      while (any(q)) {
        const std::size_t v = first(q);
        clear(uncoloured, v);
        clear(q, v);
        const std::uint64_t* nv = g_.row(v);
        for (std::size_t w = 0; w < q.size(); ++w) q[w] &= ~nv[w];
        order.push_back(v);
        bound.push_back(c);
      }
    }
  }

  void expand(Bits p) {
    std::vector<std::size_t> order, bound;
    colour(p, order, bound);
    for (std::size_t k = order.size(); k-- > 0;) {
      // Strict: equal-size cliques are still enumerated.
      if (current_.size() + bound[k] < result_.max_size) return;
      const std::size_t v = order[k];
      current_.push_back(v);
      Bits next(p.size());
      const std::uint64_t* nv = g_.row(v);
      for (std::size_t w = 0; w < p.size(); ++w) next[w] = p[w] & nv[w];
      if (any(next))
        expand(std::move(next));
      else
        record();
      current_.pop_back();
      clear(p, v);
    }
  }

  void record() {
    if (current_.size() > result_.max_size) {
      result_.max_size = current_.size();
      result_.cliques.clear();
      result_.count = 0;
      result_.truncated = false;
    }
    if (current_.size() == result_.max_size) {
      ++result_.count;
      if (result_.cliques.size() < max_kept_) {
        auto c = current_;
        std::sort(c.begin(), c.end());
        result_.cliques.push_back(std::move(c));
      } else {
        result_.truncated = true;
      }
    }
  }

  static bool any(const Bits& b) {
    return std::any_of(b.begin(), b.end(), [](std::uint64_t w) { return w != 0; });
  }
  static std::size_t first(const Bits& b) {
    for (std::size_t w = 0; w < b.size(); ++w)
      if (b[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(b[w]));
    return b.size() * 64;
  }
  static void clear(Bits& b, std::size_t v) { b[v / 64] &= ~(std::uint64_t{1} << (v % 64)); }

  const BitGraph& g_;
  std::size_t max_kept_;
  std::vector<std::size_t> current_;
  CliqueSearchResult result_;
};

}  // namespace

CliqueSearchResult all_maximum_cliques(const BitGraph& graph, std::size_t max_kept) {
  // Relabel by non-increasing degree so the colouring sees dense vertices first.
  const std::size_t n = graph.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return graph.degree(a) > graph.degree(b); });
  BitGraph relabelled(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (graph.adjacent(order[a], order[b])) relabelled.add_edge(a, b);
  auto result = Search(relabelled, max_kept).run();
  for (auto& c : result.cliques) {
    for (auto& v : c) v = order[v];
    std::sort(c.begin(), c.end());
  }
  return result;
}

}  // namespace globalcube::clique
