#include "globalcube/fourier.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "globalcube/errors.hpp"

namespace globalcube::fourier {

RealFunctionOnCube::RealFunctionOnCube(int dim, std::vector<double> values)
    : dim_(dim), values_(std::move(values)) {
  cube::require_exact_dim(dim);
  if (values_.size() != (std::size_t{1} << dim))
    throw StructuralError("function table must have exactly 2^n = " +
                          std::to_string(std::size_t{1} << dim) + " values");
  for (double v : values_)
    if (!std::isfinite(v)) throw PreconditionError("function values must be finite");
}

RealFunctionOnCube RealFunctionOnCube::constant(int dim, double value) {
  cube::require_exact_dim(dim);
  return RealFunctionOnCube(dim, std::vector<double>(std::size_t{1} << dim, value));
}

RealFunctionOnCube RealFunctionOnCube::indicator(const cube::CubeFamily& family) {
  std::vector<double> values(std::size_t{1} << family.dim(), 0.0);
  for (Mask x : family.members()) values[x] = 1.0;
  return RealFunctionOnCube(family.dim(), std::move(values));
}

FourierCoeffs::FourierCoeffs(int dim, double bias, std::vector<double> coeffs)
    : dim_(dim), bias_(bias), coeffs_(std::move(coeffs)) {
  cube::require_exact_dim(dim);
  BiasedMeasure check(bias);
  (void)check;
  if (coeffs_.size() != (std::size_t{1} << dim))
    throw StructuralError("coefficient table must have exactly 2^n entries");
}

NoiseRho NoiseRho::make(double q, double p) {
  if (!(q > 0.0 && q < 1.0) || !(p > 0.0 && p < 1.0))
    throw PreconditionError("one-sided noise needs biases strictly inside (0,1)");
  if (q >= p) throw OrderingError("one-sided noise T_{q->p} is only defined for q < p");
  return NoiseRho{q, p, std::sqrt(q * (1.0 - p) / (p * (1.0 - q)))};
}

double character(Mask subset, Mask x, double p) {
  const double on = std::sqrt((1.0 - p) / p);
  const double off = -std::sqrt(p / (1.0 - p));
  const int ones = std::popcount(subset & x);
  const int zeros = std::popcount(subset) - ones;
  return std::pow(on, ones) * std::pow(off, zeros);
}

FourierCoeffs transform(const RealFunctionOnCube& f, const BiasedMeasure& m) {
  const double p = m.p();
  const double scale = std::sqrt(p * (1.0 - p));
  std::vector<double> a = f.values();
  // Per coordinate: (f0, f1) -> (E f, E[f chi_i]) = ((1-p) f0 + p f1, sqrt(p(1-p)) (f1 - f0)).
  for (int i = 0; i < f.dim(); ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t x = 0; x < a.size(); ++x) {
      if (x & bit) continue;
      const double f0 = a[x], f1 = a[x | bit];
      a[x] = (1.0 - p) * f0 + p * f1;
      a[x | bit] = scale * (f1 - f0);
    }
  }
  return FourierCoeffs(f.dim(), p, std::move(a));
}

RealFunctionOnCube inverse_transform(const FourierCoeffs& c) {
  const double p = c.bias();
  const double on = std::sqrt((1.0 - p) / p);
  const double off = std::sqrt(p / (1.0 - p));
  std::vector<double> a = c.coeffs();
  for (int i = 0; i < c.dim(); ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t x = 0; x < a.size(); ++x) {
      if (x & bit) continue;
      const double c0 = a[x], c1 = a[x | bit];
      a[x] = c0 - off * c1;
      a[x | bit] = c0 + on * c1;
    }
  }
  return RealFunctionOnCube(c.dim(), std::move(a));
}

double level_weight(const FourierCoeffs& c, int d) {
  if (d < 0 || d > c.dim())
    throw PreconditionError("level " + std::to_string(d) + " outside 0.." + std::to_string(c.dim()));
  double total = 0;
  for (std::size_t s = 0; s < c.coeffs().size(); ++s)
    if (std::popcount(s) == d) total += c.coeffs()[s] * c.coeffs()[s];
  return total;
}

std::vector<double> level_weights(const FourierCoeffs& c) {
  std::vector<double> out(c.dim() + 1, 0.0);
  for (std::size_t s = 0; s < c.coeffs().size(); ++s)
    out[std::popcount(s)] += c.coeffs()[s] * c.coeffs()[s];
  return out;
}

double inner_product(const RealFunctionOnCube& f, const RealFunctionOnCube& g, double p) {
  if (f.dim() != g.dim()) throw StructuralError("inner product of functions on different cubes");
  const int n = f.dim();
  std::vector<double> mass(n + 1);
  for (int k = 0; k <= n; ++k) mass[k] = std::pow(p, k) * std::pow(1.0 - p, n - k);
  double total = 0;
  for (std::size_t x = 0; x < f.values().size(); ++x)
    total += mass[std::popcount(x)] * f.values()[x] * g.values()[x];
  return total;
}

FourierCoeffs one_sided_noise(const FourierCoeffs& c, double p) {
  const NoiseRho noise = NoiseRho::make(c.bias(), p);
  std::vector<double> out = c.coeffs();
  std::vector<double> powers(c.dim() + 1, 1.0);
  for (int k = 1; k <= c.dim(); ++k) powers[k] = powers[k - 1] * noise.rho;
  for (std::size_t s = 0; s < out.size(); ++s) out[s] *= powers[std::popcount(s)];
  return FourierCoeffs(c.dim(), p, std::move(out));
}

RealFunctionOnCube coupling_expectation(const RealFunctionOnCube& f, double q, double p) {
  NoiseRho::make(q, p);
  const int n = f.dim();
  const double keep = q / p;
  std::vector<double> keep_pow(n + 1, 1.0), drop_pow(n + 1, 1.0);
  for (int k = 1; k <= n; ++k) {
    keep_pow[k] = keep_pow[k - 1] * keep;
    drop_pow[k] = drop_pow[k - 1] * (1.0 - keep);
  }
  std::vector<double> out(f.values().size(), 0.0);
  for (Mask y = 0; y < out.size(); ++y) {
    const int wy = std::popcount(y);
    double total = 0;
    // All x <= y, including x = 0.
    for (Mask x = y;; x = (x - 1) & y) {
      const int wx = std::popcount(x);
      total += keep_pow[wx] * drop_pow[wy - wx] * f(x);
      if (x == 0) break;
    }
    out[y] = total;
  }
  return RealFunctionOnCube(n, std::move(out));
}

std::pair<cube::CubePoint, cube::CubePoint> sample_coupled_pair(int n, double q, double p, Rng& rng) {
  NoiseRho::make(q, p);
  cube::require_exact_dim(n);
  Mask x = 0, y = 0;
  for (int i = 0; i < n; ++i) {
    if (rng.bernoulli(p)) {
      y |= Mask{1} << i;
      if (rng.bernoulli(q / p)) x |= Mask{1} << i;
    }
  }
  return {cube::CubePoint(n, x), cube::CubePoint(n, y)};
}

std::pair<cube::CubePoint, cube::CubePoint> sample_coupled_pair(int n, double q, double p,
                                                                std::uint64_t seed) {
  Rng rng(seed);
  return sample_coupled_pair(n, q, p, rng);
}

RealFunctionOnCube permute_coordinates(const RealFunctionOnCube& f, std::span<const int> perm) {
  const int n = f.dim();
  if (static_cast<int>(perm.size()) != n) throw StructuralError("permutation length must equal n");
  std::vector<double> out(f.values().size());
  for (Mask x = 0; x < out.size(); ++x) {
    Mask src = 0;
    for (int i = 0; i < n; ++i)
      if ((x >> perm[i]) & 1U) src |= Mask{1} << i;
    out[x] = f(src);
  }
  return RealFunctionOnCube(n, std::move(out));
}

}  // namespace globalcube::fourier
