#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "globalcube/probability.hpp"

namespace globalcube::cube {

// Points of {0,1}^n are unsigned masks, coordinate i (1-based) at bit i-1.
using Mask = std::uint32_t;

inline constexpr int kExactMaxDim = 24;

// Throws ResourceGuardError for n > kExactMaxDim, StructuralError for n < 0.
void require_exact_dim(int n);

inline Mask full_mask(int n) { return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1; }
inline Mask coord_bit(int coord) { return Mask{1} << (coord - 1); }
inline int weight(Mask x) { return std::popcount(x); }

class CubePoint {
 public:
  CubePoint(int dim, Mask bits);
  static CubePoint from_bits(std::span<const int> bits);

  int dim() const { return dim_; }
  Mask bits() const { return bits_; }
  bool at(int coord) const { return (bits_ >> (coord - 1)) & 1U; }
  int weight() const { return std::popcount(bits_); }

  friend bool operator==(const CubePoint&, const CubePoint&) = default;

 private:
  int dim_;
  Mask bits_;
};

/// A finite set of points of {0,1}^dim, stored sorted and duplicate-free.
class CubeFamily {
 public:
  CubeFamily(int dim, std::vector<Mask> members);

  static CubeFamily empty(int dim);
  static CubeFamily full(int dim);
  static CubeFamily from_predicate(int dim, const std::function<bool(Mask)>& pred);
  static CubeFamily from_indicator(int dim, std::span<const std::uint8_t> indicator);

  int dim() const { return dim_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Mask>& members() const { return members_; }
  bool contains(Mask x) const;

  // Dense 0/1 table of length 2^dim.
  std::vector<std::uint8_t> indicator() const;

  friend bool operator==(const CubeFamily&, const CubeFamily&) = default;

 private:
  int dim_;
  std::vector<Mask> members_;
};

/// Fixes the coordinates in `coords` to the matching bits of `values`.
class Restriction {
 public:
  Restriction() = default;
  Restriction(Mask coords, Mask values);
  static Restriction from_lists(std::span<const int> coords, std::span<const int> values);

  Mask coords() const { return coords_; }
  Mask values() const { return values_; }
  int size() const { return std::popcount(coords_); }
  bool empty() const { return coords_ == 0; }
  bool agrees(Mask x) const { return (x & coords_) == values_; }
  // True when every fixed coordinate is set to 1.
  bool sets_only_ones() const { return values_ == coords_; }

  std::vector<int> coord_list() const;
  std::vector<int> value_list() const;

  friend bool operator==(const Restriction&, const Restriction&) = default;

 private:
  Mask coords_ = 0;
  Mask values_ = 0;
};

// Packs the bits of x selected by `keep` into the low bits, preserving order.
Mask compress_bits(Mask x, Mask keep);
// Inverse of compress_bits: spreads the low bits of x over the positions of `keep`.
Mask expand_bits(Mask x, Mask keep);

double point_mass(Mask x, int dim, double p);
mpq_class point_mass_exact(Mask x, int dim, const mpq_class& p);

double measure(const CubeFamily& family, const BiasedMeasure& m);
double measure(const CubeFamily& family, double p);
mpq_class measure_exact(const CubeFamily& family, const mpq_class& p);

// Measure of the points agreeing with r, i.e. mu_p of the subcube.
double subcube_mass(const Restriction& r, double p);

/// {x restricted to [n]\S : x in F, x agrees with r}, surviving coordinates
/// relabelled 1..n-|S| in their original order.
CubeFamily restrict_to(const CubeFamily& family, const Restriction& r);

CubeFamily up_closure(const CubeFamily& family);
bool is_monotone(const CubeFamily& family);

CubeFamily intersect(const CubeFamily& a, const CubeFamily& b);
CubeFamily unite(const CubeFamily& a, const CubeFamily& b);

struct FkgResult {
  double lhs = 0;  // mu(F & G)
  double rhs = 0;  // mu(F) mu(G)
  bool holds = false;
};

inline constexpr double kMeasureTolerance = 1e-12;

/// Correlation check for two monotone families; non-monotone input throws
/// PreconditionError naming the family.
FkgResult fkg_check(const CubeFamily& f, const CubeFamily& g, const BiasedMeasure& m);

}  // namespace globalcube::cube
