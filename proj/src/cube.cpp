#include "globalcube/cube.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "globalcube/errors.hpp"

namespace globalcube::cube {

void require_exact_dim(int n) {
  if (n < 0) throw StructuralError("dimension must be non-negative, got " + std::to_string(n));
  if (n > kExactMaxDim)
    throw ResourceGuardError("dimension " + std::to_string(n) + " exceeds the exact-mode cap of " +
                             std::to_string(kExactMaxDim));
}

CubePoint::CubePoint(int dim, Mask bits) : dim_(dim), bits_(bits) {
  require_exact_dim(dim);
  if (dim < 1) throw StructuralError("cube point needs a positive dimension");
  if ((bits & ~full_mask(dim)) != 0) throw StructuralError("point has bits beyond its dimension");
}

CubePoint CubePoint::from_bits(std::span<const int> bits) {
  Mask x = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw StructuralError("cube point entries must be 0 or 1");
    if (bits[i]) x |= Mask{1} << i;
  }
  return CubePoint(static_cast<int>(bits.size()), x);
}

CubeFamily::CubeFamily(int dim, std::vector<Mask> members) : dim_(dim), members_(std::move(members)) {
  require_exact_dim(dim);
  const Mask limit = full_mask(dim);
  for (Mask x : members_)
    if ((x & ~limit) != 0)
      throw StructuralError("family member has bits beyond dimension " + std::to_string(dim));
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

CubeFamily CubeFamily::empty(int dim) { return CubeFamily(dim, {}); }

CubeFamily CubeFamily::full(int dim) {
  require_exact_dim(dim);
  std::vector<Mask> all(std::size_t{1} << dim);
  for (std::size_t x = 0; x < all.size(); ++x) all[x] = static_cast<Mask>(x);
  return CubeFamily(dim, std::move(all));
}

CubeFamily CubeFamily::from_predicate(int dim, const std::function<bool(Mask)>& pred) {
  require_exact_dim(dim);
  std::vector<Mask> out;
  const std::uint64_t total = std::uint64_t{1} << dim;
  for (std::uint64_t x = 0; x < total; ++x)
    if (pred(static_cast<Mask>(x))) out.push_back(static_cast<Mask>(x));
  return CubeFamily(dim, std::move(out));
}

CubeFamily CubeFamily::from_indicator(int dim, std::span<const std::uint8_t> indicator) {
  require_exact_dim(dim);
  if (indicator.size() != (std::size_t{1} << dim))
    throw StructuralError("indicator length does not match 2^dim");
  std::vector<Mask> out;
  for (std::size_t x = 0; x < indicator.size(); ++x)
    if (indicator[x]) out.push_back(static_cast<Mask>(x));
  return CubeFamily(dim, std::move(out));
}

bool CubeFamily::contains(Mask x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

std::vector<std::uint8_t> CubeFamily::indicator() const {
  std::vector<std::uint8_t> table(std::size_t{1} << dim_, 0);
  for (Mask x : members_) table[x] = 1;
  return table;
}

Restriction::Restriction(Mask coords, Mask values) : coords_(coords), values_(values) {
  if ((values & ~coords) != 0) throw StructuralError("restriction values set outside its coordinates");
}

Restriction Restriction::from_lists(std::span<const int> coords, std::span<const int> values) {
  if (coords.size() != values.size())
    throw StructuralError("restriction needs one value per coordinate");
  Mask c = 0, v = 0;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k] < 1 || coords[k] > kExactMaxDim)
      throw StructuralError("restriction coordinate " + std::to_string(coords[k]) + " out of range");
    if (c & coord_bit(coords[k])) throw StructuralError("restriction repeats a coordinate");
    if (values[k] != 0 && values[k] != 1) throw StructuralError("restriction values must be 0 or 1");
    c |= coord_bit(coords[k]);
    if (values[k]) v |= coord_bit(coords[k]);
  }
  return Restriction(c, v);
}

std::vector<int> Restriction::coord_list() const {
  std::vector<int> out;
  for (Mask c = coords_; c; c &= c - 1) out.push_back(std::countr_zero(c) + 1);
  return out;
}

std::vector<int> Restriction::value_list() const {
  std::vector<int> out;
  for (Mask c = coords_; c; c &= c - 1) out.push_back((values_ >> std::countr_zero(c)) & 1U);
  return out;
}

Mask compress_bits(Mask x, Mask keep) {
  Mask out = 0;
  int pos = 0;
  for (Mask k = keep; k; k &= k - 1, ++pos)
    if (x & (k & -k)) out |= Mask{1} << pos;
  return out;
}

Mask expand_bits(Mask x, Mask keep) {
  Mask out = 0;
  int pos = 0;
  for (Mask k = keep; k; k &= k - 1, ++pos)
    if ((x >> pos) & 1U) out |= k & -k;
  return out;
}

double point_mass(Mask x, int dim, double p) {
  const int ones = std::popcount(x);
  return std::pow(p, ones) * std::pow(1.0 - p, dim - ones);
}

mpq_class point_mass_exact(Mask x, int dim, const mpq_class& p_in) {
  const int ones = std::popcount(x);
  mpq_class p(p_in);
  p.canonicalize();
  mpq_class out(1), q(1 - p);
  for (int i = 0; i < ones; ++i) out *= p;
  for (int i = ones; i < dim; ++i) out *= q;
  return out;
}

double measure(const CubeFamily& family, double p) {
  // Group by Hamming weight so each point costs one table lookup.
  const int n = family.dim();
  std::vector<double> by_weight(n + 1);
  for (int k = 0; k <= n; ++k) by_weight[k] = std::pow(p, k) * std::pow(1.0 - p, n - k);
  double total = 0;
  for (Mask x : family.members()) total += by_weight[std::popcount(x)];
  return total;
}

double measure(const CubeFamily& family, const BiasedMeasure& m) { return measure(family, m.p()); }

mpq_class measure_exact(const CubeFamily& family, const mpq_class& p) {
  const int n = family.dim();
  std::vector<std::size_t> count(n + 1, 0);
  for (Mask x : family.members()) ++count[std::popcount(x)];
  mpq_class total(0);
  for (int k = 0; k <= n; ++k) {
    if (count[k] == 0) continue;
    total += mpq_class(mpz_class(static_cast<unsigned long>(count[k]))) *
             point_mass_exact(full_mask(k), n, p);
  }
  return total;
}

double subcube_mass(const Restriction& r, double p) {
  const int ones = std::popcount(r.values());
  return std::pow(p, ones) * std::pow(1.0 - p, r.size() - ones);
}

CubeFamily restrict_to(const CubeFamily& family, const Restriction& r) {
  const int n = family.dim();
  if ((r.coords() & ~full_mask(n)) != 0)
    throw StructuralError("restriction coordinates exceed the family dimension " + std::to_string(n));
  const Mask keep = full_mask(n) & ~r.coords();
  std::vector<Mask> out;
  for (Mask x : family.members())
    if (r.agrees(x)) out.push_back(compress_bits(x, keep));
  return CubeFamily(n - r.size(), std::move(out));
}

CubeFamily up_closure(const CubeFamily& family) {
  const int n = family.dim();
  auto table = family.indicator();
  // Superset propagation one coordinate at a time.
  for (int i = 0; i < n; ++i) {
    const Mask bit = Mask{1} << i;
    for (std::size_t x = 0; x < table.size(); ++x)
      if (!(x & bit) && table[x]) table[x | bit] = 1;
  }
  return CubeFamily::from_indicator(n, table);
}

bool is_monotone(const CubeFamily& family) {
  const int n = family.dim();
  for (Mask x : family.members())
    for (int i = 0; i < n; ++i) {
      const Mask bit = Mask{1} << i;
      if (!(x & bit) && !family.contains(x | bit)) return false;
    }
  return true;
}

CubeFamily intersect(const CubeFamily& a, const CubeFamily& b) {
  if (a.dim() != b.dim()) throw StructuralError("families live in different dimensions");
  std::vector<Mask> out;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(),
                        b.members().end(), std::back_inserter(out));
  return CubeFamily(a.dim(), std::move(out));
}

CubeFamily unite(const CubeFamily& a, const CubeFamily& b) {
  if (a.dim() != b.dim()) throw StructuralError("families live in different dimensions");
  std::vector<Mask> out;
  std::set_union(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                 std::back_inserter(out));
  return CubeFamily(a.dim(), std::move(out));
}

FkgResult fkg_check(const CubeFamily& f, const CubeFamily& g, const BiasedMeasure& m) {
  if (f.dim() != g.dim()) throw StructuralError("FKG check needs families of equal dimension");
  if (!is_monotone(f)) throw PreconditionError("FKG check: first family (F) is not monotone");
  if (!is_monotone(g)) throw PreconditionError("FKG check: second family (G) is not monotone");
  FkgResult r;
  r.lhs = measure(intersect(f, g), m);
  r.rhs = measure(f, m) * measure(g, m);
  r.holds = r.lhs >= r.rhs - kMeasureTolerance;
  return r;
}

}  // namespace globalcube::cube
