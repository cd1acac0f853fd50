#pragma once

#include <vector>

#include "globalcube/cube.hpp"

namespace globalcube::globalness {

using cube::CubeFamily;
using cube::Restriction;

// Full 3^n restriction scans up to this dimension; above it only monotone
// families are accepted and only set-to-1 restrictions are scanned.
inline constexpr int kFullScanMaxDim = 14;

struct GlobalnessCertificate {
  double g_min = 1.0;
  Restriction witness;
  // worst_ratio[k] = max over |S| = k of mu(f_{S->x}) / mu(f).
  std::vector<double> worst_ratio;
  double mu = 0.0;
  bool full_scan = true;  // false when only set-to-1 patterns were scanned
};

/// Smallest g >= 1 with mu(f_{S->x}) <= g^|S| mu(f) for every restriction.
/// The witness attains the binding ratio; ties go to smaller |S|, then
/// lexicographically smaller S, then smaller x.
GlobalnessCertificate certify_globalness(const CubeFamily& family, const BiasedMeasure& m);

struct GlobalRestriction {
  Restriction restriction;
  CubeFamily restricted;
  double score = 0.0;      // mu(f_{S->x}) / g^|S|
  double mu_before = 0.0;  // mu(F)
  double mu_after = 0.0;   // mu(F')
};

/// Restriction maximising mu(f_{S->x}) / g^|S| (same tie-break as above).
/// The restricted family is g-global and mu(F') >= g^|S| mu(F).
GlobalRestriction extract_global_restriction(const CubeFamily& family, double g,
                                             const BiasedMeasure& m);

// Exact-arithmetic form of mu(F') >= g^|S| mu(F); requires a rational bias.
bool global_restriction_inequality_exact(const CubeFamily& family, const GlobalRestriction& r,
                                         const mpq_class& g, const mpq_class& p);

struct LevelDAuditRow {
  int d = 0;
  double lhs = 0.0;         // ||f^{=d}||^2
  double frame = 0.0;       // mu^2 g^{2d} ln^d(1/mu) / d^d
  double implied_c2 = 0.0;  // (lhs / frame)^{1/d}
};

struct LevelDAudit {
  double mu = 0.0;
  double level0 = 0.0;  // mu^2, so that level0 + sum(lhs) = E[f^2] when d_max = n
  std::vector<LevelDAuditRow> rows;
};

LevelDAudit level_d_audit(const CubeFamily& family, const BiasedMeasure& m, double g, int d_max);

struct SharpThresholdProbe {
  double mu_p = 0.0;
  double mu_third = 0.0;
  double threshold_rhs = 0.0;  // 0.99^t
  bool p_above_third = false;
};

SharpThresholdProbe sharp_threshold_probe(const CubeFamily& family, const BiasedMeasure& m, int t);

struct GlobalCrossProbe {
  double mu_a = 0.0;
  double mu_b = 0.0;
  double min_measure = 0.0;
  double rhs = 0.0;  // exp(-c3 t / (p g^2))
  double g_min_a = 0.0;
  double g_min_b = 0.0;
};

/// Checks every hypothesis of the global cross-intersection bound (monotone,
/// g-global, cross t-intersecting, nonempty) and throws PreconditionError
/// naming the first one that fails.
GlobalCrossProbe global_cross_probe(const CubeFamily& a, const CubeFamily& b, const BiasedMeasure& m,
                                    double g, int t, double c3);

}  // namespace globalcube::globalness
