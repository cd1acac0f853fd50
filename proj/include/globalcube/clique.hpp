#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace globalcube::clique {

/// Undirected graph with one adjacency bitset per vertex.
class BitGraph {
 public:
  explicit BitGraph(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }
  void add_edge(std::size_t u, std::size_t v);
  bool adjacent(std::size_t u, std::size_t v) const {
    return (adj_[u * words_ + v / 64] >> (v % 64)) & 1U;
  }
  const std::uint64_t* row(std::size_t v) const { return adj_.data() + v * words_; }
  std::size_t degree(std::size_t v) const;

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> adj_;
};

struct CliqueSearchResult {
  std::size_t max_size = 0;
  // Maximum cliques, each sorted ascending, in the order found; at most the
  // requested number are kept.
  std::vector<std::vector<std::size_t>> cliques;
  std::uint64_t count = 0;  // all maximum cliques, kept or not
  bool truncated = false;
};

/// Exact branch and bound: vertices ordered by non-increasing degree, greedy
/// colouring as the upper bound. Enumerates every clique of maximum size.
CliqueSearchResult all_maximum_cliques(const BitGraph& graph, std::size_t max_kept = 1000);

}  // namespace globalcube::clique
