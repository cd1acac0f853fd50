#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "globalcube/cube.hpp"
#include "globalcube/rng.hpp"

namespace globalcube::fourier {

using cube::Mask;

/// A real-valued function on {0,1}^n stored as a dense table indexed by point mask.
class RealFunctionOnCube {
 public:
  RealFunctionOnCube(int dim, std::vector<double> values);

  static RealFunctionOnCube constant(int dim, double value);
  static RealFunctionOnCube indicator(const cube::CubeFamily& family);

  int dim() const { return dim_; }
  const std::vector<double>& values() const { return values_; }
  double operator()(Mask x) const { return values_[x]; }

 private:
  int dim_;
  std::vector<double> values_;
};

/// Coefficients of f in the orthonormal character basis chi_S of L^2(mu_p).
/// Dense: one entry per subset mask, including the ones that are exactly 0.
class FourierCoeffs {
 public:
  FourierCoeffs(int dim, double bias, std::vector<double> coeffs);

  int dim() const { return dim_; }
  double bias() const { return bias_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double operator[](Mask subset) const { return coeffs_[subset]; }

 private:
  int dim_;
  double bias_;
  std::vector<double> coeffs_;
};

struct NoiseRho {
  double q;
  double p;
  double rho;

  // Throws OrderingError unless 0 < q < p < 1.
  static NoiseRho make(double q, double p);
};

// chi_S(x) at bias p.
double character(Mask subset, Mask x, double p);

FourierCoeffs transform(const RealFunctionOnCube& f, const BiasedMeasure& m);
RealFunctionOnCube inverse_transform(const FourierCoeffs& c);

// sum_{|S| = d} fhat(S)^2
double level_weight(const FourierCoeffs& c, int d);
// All levels 0..n at once.
std::vector<double> level_weights(const FourierCoeffs& c);

// E_{mu_p}[f g]
double inner_product(const RealFunctionOnCube& f, const RealFunctionOnCube& g, double p);

/// T_{q->p} in its multiplier form: coefficient on S scaled by rho^|S|, bias q -> p.
FourierCoeffs one_sided_noise(const FourierCoeffs& c, double p);

/// T_{q->p} f(y) = E[f(x)] under D(q,p), summed directly over x <= y with
/// P(x | y) = (q/p)^|x| (1 - q/p)^(|y| - |x|).
RealFunctionOnCube coupling_expectation(const RealFunctionOnCube& f, double q, double p);

/// One draw of (x, y) ~ D(q, p) on {0,1}^n.
std::pair<cube::CubePoint, cube::CubePoint> sample_coupled_pair(int n, double q, double p, Rng& rng);
std::pair<cube::CubePoint, cube::CubePoint> sample_coupled_pair(int n, double q, double p,
                                                                std::uint64_t seed);

// Applies a coordinate permutation: (f o pi)(x) with x_i -> x_{perm[i]}; perm is 0-based.
RealFunctionOnCube permute_coordinates(const RealFunctionOnCube& f, std::span<const int> perm);

}  // namespace globalcube::fourier
