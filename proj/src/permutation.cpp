#include "globalcube/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "globalcube/errors.hpp"

namespace globalcube::families {

namespace {

std::vector<std::uint8_t> checked_image(const std::vector<int>& image) {
  const int n = static_cast<int>(image.size());
  if (n < 1 || n > kMaxPermDegree)
    throw StructuralError("permutation degree must lie in 1.." + std::to_string(kMaxPermDegree));
  std::vector<bool> seen(n + 1, false);
  std::vector<std::uint8_t> out(n);
  for (int i = 0; i < n; ++i) {
    const int v = image[i];
    if (v < 1 || v > n) throw StructuralError("permutation image " + std::to_string(v) + " outside [n]");
    if (seen[v]) throw StructuralError("permutation repeats the image " + std::to_string(v));
    seen[v] = true;
    out[i] = static_cast<std::uint8_t>(v);
  }
  return out;
}

std::uint64_t factorial_u64(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace

Permutation::Permutation(std::vector<int> image) : image_(checked_image(image)) {}

Permutation Permutation::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(int n, int a, int b) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  if (a < 1 || a > n || b < 1 || b > n) throw StructuralError("transposition points outside [n]");
  std::swap(img[a - 1], img[b - 1]);
  return Permutation(std::move(img));
}

std::vector<int> Permutation::one_line() const { return {image_.begin(), image_.end()}; }

Permutation Permutation::compose(const Permutation& other) const {
  if (size() != other.size()) throw StructuralError("cannot compose permutations of different degree");
  std::vector<std::uint8_t> out(image_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = image_[other.image_[i] - 1];
  return Permutation(Trusted{}, std::move(out));
}

Permutation Permutation::inverse() const {
  std::vector<std::uint8_t> out(image_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[image_[i] - 1] = static_cast<std::uint8_t>(i + 1);
  return Permutation(Trusted{}, std::move(out));
}

int Permutation::fixed_points() const {
  int count = 0;
  for (std::size_t i = 0; i < image_.size(); ++i) count += image_[i] == i + 1;
  return count;
}

PermFamily::PermFamily(int n, std::vector<Permutation> members) : n_(n), members_(std::move(members)) {
  if (n < 1 || n > kMaxFamilyDegree) throw StructuralError("permutation family degree out of range");
  for (const auto& m : members_)
    if (m.size() != n) throw StructuralError("family member has degree " + std::to_string(m.size()) +
                                             ", expected " + std::to_string(n));
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool PermFamily::contains(const Permutation& sigma) const {
  return std::binary_search(members_.begin(), members_.end(), sigma);
}

void for_each_permutation(int n, const std::function<void(const Permutation&)>& visit) {
  if (n < 1) throw StructuralError("S_n needs n >= 1");
  if (n > 12) throw ResourceGuardError("enumerating S_" + std::to_string(n) + " is beyond the exact cap (12)");
  std::vector<std::uint8_t> img(n);
  std::iota(img.begin(), img.end(), std::uint8_t{1});
  Permutation sigma(Permutation::Trusted{}, img);
  do {
    sigma.image_ = img;
    visit(sigma);
  } while (std::next_permutation(img.begin(), img.end()));
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  for_each_permutation(n, [&](const Permutation& s) { out.push_back(s); });
  return out;
}

int agreement(const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != tau.size())
    throw StructuralError("agreement of permutations with different degrees");
  int count = 0;
  const auto a = sigma.images(), b = tau.images();
  for (std::size_t i = 0; i < a.size(); ++i) count += a[i] == b[i];
  return count;
}

std::uint64_t rank(const Permutation& sigma) {
  const int n = sigma.size();
  if (n > 20) throw ResourceGuardError("rank overflows 64 bits above n = 20");
  std::uint64_t r = 0;
  std::vector<bool> used(n + 1, false);
  for (int i = 1; i <= n; ++i) {
    int smaller = 0;
    for (int v = 1; v < sigma(i); ++v) smaller += !used[v];
    r += static_cast<std::uint64_t>(smaller) * factorial_u64(n - i);
    used[sigma(i)] = true;
  }
  return r;
}

Permutation unrank(int n, std::uint64_t r) {
  if (n < 1 || n > 20) throw ResourceGuardError("unrank supports 1 <= n <= 20");
  if (r >= factorial_u64(n)) throw PreconditionError("rank out of range for S_" + std::to_string(n));
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> img;
  for (int i = n; i >= 1; --i) {
    const std::uint64_t f = factorial_u64(i - 1);
    const auto k = static_cast<std::size_t>(r / f);
    r %= f;
    img.push_back(pool[k]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return Permutation(std::move(img));
}

}  // namespace globalcube::families
