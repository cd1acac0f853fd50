#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace globalcube::families {

inline constexpr int kMaxPermDegree = 255;
inline constexpr int kMaxFamilyDegree = 64;  // agreement checks use 64-bit coordinate masks

/// A bijection of [n] in one-line notation, images 1-based.
class Permutation {
 public:
  explicit Permutation(std::vector<int> image);
  static Permutation identity(int n);
  // Swaps a and b, fixes everything else.
  static Permutation transposition(int n, int a, int b);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[i - 1]; }
  std::span<const std::uint8_t> images() const { return image_; }
  std::vector<int> one_line() const;

  // (this o other)(i) = this(other(i))
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;
  int fixed_points() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Trusted {};
  Permutation(Trusted, std::vector<std::uint8_t> image) : image_(std::move(image)) {}
  friend void for_each_permutation(int, const std::function<void(const Permutation&)>&);

  std::vector<std::uint8_t> image_;
};

/// A set of permutations of a common [n], kept sorted and duplicate-free.
class PermFamily {
 public:
  explicit PermFamily(int n, std::vector<Permutation> members = {});

  int n() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Permutation>& members() const { return members_; }
  bool contains(const Permutation& sigma) const;

  friend bool operator==(const PermFamily&, const PermFamily&) = default;

 private:
  int n_;
  std::vector<Permutation> members_;
};

// Visits S_n in lexicographic order. n <= 12.
void for_each_permutation(int n, const std::function<void(const Permutation&)>& visit);
std::vector<Permutation> all_permutations(int n);

// Number of i with sigma(i) == tau(i). Throws StructuralError on size mismatch.
int agreement(const Permutation& sigma, const Permutation& tau);

// Lexicographic rank in S_n (0-based) and its inverse.
std::uint64_t rank(const Permutation& sigma);
Permutation unrank(int n, std::uint64_t r);

}  // namespace globalcube::families
