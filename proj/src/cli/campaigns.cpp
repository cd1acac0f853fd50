#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <numeric>
#include <ostream>

#include <boost/math/distributions/chi_squared.hpp>
#include <json.hpp>

#include "globalcube/bump.hpp"
#include "globalcube/cli.hpp"
#include "globalcube/cube.hpp"
#include "globalcube/embed.hpp"
#include "globalcube/errors.hpp"
#include "globalcube/families.hpp"
#include "globalcube/fourier.hpp"
#include "globalcube/globalness.hpp"
#include "globalcube/io.hpp"
#include "globalcube/rng.hpp"

namespace globalcube::cli {

namespace {

using Json = nlohmann::ordered_json;
using cube::CubeFamily;
using cube::Mask;

struct Outcome {
  Json results = Json::object();
  Json checks = Json::array();
  std::vector<Json> csv_rows;

  void check(const std::string& name, bool holds, Json detail = Json()) {
    Json c{{"name", name}, {"holds", holds}};
    if (!detail.is_null()) c["detail"] = std::move(detail);
    checks.push_back(std::move(c));
  }
};

struct Context {
  const Params& params;
  int workers;
};

using CampaignFn = std::function<void(const Context&, Outcome&)>;

std::string exact_or_null(const std::optional<mpq_class>& q) { return q ? rational_to_string(*q) : std::string(); }

Json maybe_exact(const std::optional<mpq_class>& q) {
  if (!q) return Json();
  return rational_to_string(*q);
}

int as_int(long v, const char* what) {
  if (v < -1000000000L || v > 1000000000L) throw PreconditionError(std::string(what) + " out of range");
  return static_cast<int>(v);
}

std::uint64_t seed_of(const Params& p) { return p.unsigned_integer("seed"); }

std::uint64_t positive_count(const Params& p, const std::string& key) {
  const long v = p.integer(key);
  if (v <= 0) throw PreconditionError("--" + key + " must be positive");
  return static_cast<std::uint64_t>(v);
}

CubeFamily random_monotone_family(int n, Rng& rng) {
  const int gens = 1 + static_cast<int>(rng.below(4));
  std::vector<Mask> g;
  for (int k = 0; k < gens; ++k) {
    Mask x = 0;
    for (int i = 0; i < n; ++i)
      if (rng.bernoulli(0.5)) x |= Mask{1} << i;
    g.push_back(x);
  }
  return cube::up_closure(CubeFamily(n, std::move(g)));
}

Json mask_list(const CubeFamily& f) {
  Json out = Json::array();
  char buf[16];
  for (auto m : f.members()) {
    std::snprintf(buf, sizeof buf, "%x", static_cast<unsigned>(m));
    out.push_back(buf);
  }
  return out;
}

Json restriction_json(const cube::Restriction& r) {
  return Json{{"coords", r.coord_list()}, {"values", r.value_list()}};
}

Json perm_family_json(const families::PermFamily& f, std::size_t limit) {
  Json out = Json::array();
  for (std::size_t k = 0; k < f.members().size() && k < limit; ++k) out.push_back(f.members()[k].one_line());
  return out;
}

// --- fourier ------------------------------------------------------------------

void fourier_roundtrip(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  const BiasedMeasure m(P.probability("p"));
  const auto trials = positive_count(P, "trials");
  const auto seed = seed_of(P);
  double worst_rt = 0, worst_parseval = 0, worst_levels = 0;
  Json rows = Json::array();
  for (long nl : P.integer_list("n")) {
    const int n = as_int(nl, "n");
    cube::require_exact_dim(n);
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(n)));
    double rt = 0, parseval = 0, levels = 0;
    std::vector<double> mass(std::size_t{1} << n);
    for (Mask x = 0; x < mass.size(); ++x) mass[x] = cube::point_mass(x, n, m.p());
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
      std::vector<double> values(mass.size());
      for (auto& v : values) v = 2 * rng.uniform() - 1;
      const fourier::RealFunctionOnCube f(n, values);
      const auto c = fourier::transform(f, m);
      const auto back = fourier::inverse_transform(c);
      double e2 = 0, sq = 0, lv = 0;
      for (Mask x = 0; x < mass.size(); ++x) {
        rt = std::max(rt, std::abs(back(x) - f(x)));
        e2 += mass[x] * f(x) * f(x);
      }
      for (double a : c.coeffs()) sq += a * a;
      for (double w : fourier::level_weights(c)) lv += w;
      parseval = std::max(parseval, std::abs(sq - e2));
      levels = std::max(levels, std::abs(lv - e2));
    }
    Json row{{"n", n}, {"trials", trials}, {"max_roundtrip_error", rt}, {"max_parseval_error", parseval},
             {"max_level_sum_error", levels}};
    rows.push_back(row);
    o.csv_rows.push_back(row);
    worst_rt = std::max(worst_rt, rt);
    worst_parseval = std::max(worst_parseval, parseval);
    worst_levels = std::max(worst_levels, levels);
  }
  o.results["p"] = m.probability().to_string();
  o.results["rows"] = rows;
  o.results["max_roundtrip_error"] = worst_rt;
  o.results["max_parseval_error"] = worst_parseval;
  o.check("roundtrip_within_1e-10", worst_rt <= 1e-10, worst_rt);
  o.check("parseval_within_1e-10", worst_parseval <= 1e-10, worst_parseval);
  o.check("level_weights_sum_within_1e-10", worst_levels <= 1e-10, worst_levels);

  const int on = as_int(P.integer("ortho_n"), "ortho_n");
  if (on > 0) {
    if (on > 10) throw ResourceGuardError("exhaustive orthonormality is capped at n = 10");
    const std::size_t size = std::size_t{1} << on;
    std::vector<double> chars(size * size), mass(size);
    for (Mask x = 0; x < size; ++x) mass[x] = cube::point_mass(x, on, m.p());
    for (Mask s = 0; s < size; ++s)
      for (Mask x = 0; x < size; ++x) chars[s * size + x] = fourier::character(s, x, m.p());
    double worst = 0;
    for (Mask s = 0; s < size; ++s)
      for (Mask t = s; t < size; ++t) {
        double ip = 0;
        for (Mask x = 0; x < size; ++x) ip += mass[x] * chars[s * size + x] * chars[t * size + x];
        worst = std::max(worst, std::abs(ip - (s == t ? 1.0 : 0.0)));
      }
    o.results["orthonormality"] = Json{{"n", on}, {"max_error", worst}};
    o.check("orthonormality_within_1e-12", worst <= 1e-12, worst);
  }
}

void noise_check(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  const auto qs = P.probability_list("q"), ps = P.probability_list("p");
  if (qs.size() != ps.size()) throw PreconditionError("--q and --p must list the same number of biases");
  const auto trials = positive_count(P, "trials");
  const auto samples = positive_count(P, "samples");
  const auto seed = seed_of(P);
  double worst = 0;
  Json rows = Json::array(), marginals = Json::array();
  bool marg_ok = true, ordered = true;
  for (std::size_t k = 0; k < qs.size(); ++k) {
    const double q = qs[k].value(), p = ps[k].value();
    (void)fourier::NoiseRho::make(q, p);
    for (long nl : P.integer_list("n")) {
      const int n = as_int(nl, "n");
      if (n > 12) throw ResourceGuardError("noise check sums over subsets; n is capped at 12");
      cube::require_exact_dim(n);
      Rng rng(derive_seed(seed, k * 1000 + static_cast<std::uint64_t>(n)));
      double err = 0;
      for (std::uint64_t trial = 0; trial < trials; ++trial) {
        std::vector<double> values(std::size_t{1} << n);
        for (auto& v : values) v = 2 * rng.uniform() - 1;
        const fourier::RealFunctionOnCube f(n, values);
        const auto via_fourier =
            fourier::inverse_transform(fourier::one_sided_noise(fourier::transform(f, BiasedMeasure(q)), p));
        const auto via_coupling = fourier::coupling_expectation(f, q, p);
        for (Mask y = 0; y < values.size(); ++y) err = std::max(err, std::abs(via_fourier(y) - via_coupling(y)));
      }
      Json row{{"n", n}, {"q", qs[k].to_string()}, {"p", ps[k].to_string()}, {"max_error", err}};
      rows.push_back(row);
      o.csv_rows.push_back(row);
      worst = std::max(worst, err);
    }
    // Marginals of the coupled pair at n = 1.
    Rng rng(derive_seed(seed, 1'000'000 + k));
    std::uint64_t xs = 0, ys = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
      const auto [x, y] = fourier::sample_coupled_pair(1, q, p, rng);
      ordered = ordered && (x.bits() & ~y.bits()) == 0;
      xs += x.bits();
      ys += y.bits();
    }
    const double mx = static_cast<double>(xs) / static_cast<double>(samples);
    const double my = static_cast<double>(ys) / static_cast<double>(samples);
    const double sx = 3 * std::sqrt(q * (1 - q) / static_cast<double>(samples));
    const double sy = 3 * std::sqrt(p * (1 - p) / static_cast<double>(samples));
    const bool ok = std::abs(mx - q) <= sx && std::abs(my - p) <= sy;
    marg_ok = marg_ok && ok;
    marginals.push_back(Json{{"q", qs[k].to_string()}, {"p", ps[k].to_string()}, {"samples", samples},
                             {"mean_x", mx}, {"mean_y", my}, {"x_band", sx}, {"y_band", sy}, {"within_3_sigma", ok}});
  }
  o.results["rows"] = rows;
  o.results["max_error"] = worst;
  o.results["marginals"] = marginals;
  o.check("fourier_form_matches_coupling_within_1e-10", worst <= 1e-10, worst);
  o.check("coupled_pairs_ordered", ordered);
  o.check("marginals_within_3_sigma", marg_ok);
}

// --- cube / globalness --------------------------------------------------------

void fkg_suite(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  const BiasedMeasure m(P.probability("p"));
  const int en = as_int(P.integer("exhaustive_n"), "exhaustive_n");
  if (en < 0) throw PreconditionError("exhaustive_n must be non-negative");
  if (en > 4) throw ResourceGuardError("exhaustive monotone sweep is capped at n = 4");
  // Monotone families of {0,1}^en as bitsets over the 2^en points.
  const unsigned points = 1u << en;
  std::vector<CubeFamily> monotone;
  for (std::uint32_t set = 0; set < (std::uint32_t{1} << points) || (points == 32 && false); ++set) {
    bool ok = true;
    for (unsigned x = 0; x < points && ok; ++x)
      if ((set >> x) & 1U)
        for (int i = 0; i < en && ok; ++i)
          if (!((set >> (x | (1u << i))) & 1U)) ok = false;
    if (!ok) continue;
    std::vector<Mask> members;
    for (unsigned x = 0; x < points; ++x)
      if ((set >> x) & 1U) members.push_back(x);
    monotone.emplace_back(en, std::move(members));
  }
  std::uint64_t ex_pairs = 0, ex_viol = 0;
  double ex_gap = 0;
  for (const auto& f : monotone)
    for (const auto& g : monotone) {
      const auto r = cube::fkg_check(f, g, m);
      ++ex_pairs;
      ex_viol += !r.holds;
      ex_gap = std::min(ex_gap, r.lhs - r.rhs);
    }
  const int rn = as_int(P.integer("random_n"), "random_n");
  cube::require_exact_dim(rn);
  const auto pairs = positive_count(P, "pairs");
  Rng rng(seed_of(P));
  std::uint64_t rnd_viol = 0;
  double rnd_gap = 0;
  for (std::uint64_t k = 0; k < pairs; ++k) {
    const auto f = random_monotone_family(rn, rng);
    const auto g = random_monotone_family(rn, rng);
    const auto r = cube::fkg_check(f, g, m);
    rnd_viol += !r.holds;
    rnd_gap = std::min(rnd_gap, r.lhs - r.rhs);
  }
  o.results["p"] = m.probability().to_string();
  o.results["exhaustive"] = Json{{"n", en}, {"monotone_families", monotone.size()}, {"pairs", ex_pairs},
                                 {"violations", ex_viol}, {"most_negative_gap", ex_gap}};
  o.results["random"] = Json{{"n", rn}, {"pairs", pairs}, {"violations", rnd_viol}, {"most_negative_gap", rnd_gap}};
  o.csv_rows.push_back(Json{{"sweep", "exhaustive"}, {"n", en}, {"pairs", ex_pairs}, {"violations", ex_viol}});
  o.csv_rows.push_back(Json{{"sweep", "random"}, {"n", rn}, {"pairs", pairs}, {"violations", rnd_viol}});
  o.check("no_exhaustive_violations", ex_viol == 0, ex_viol);
  o.check("no_random_violations", rnd_viol == 0, rnd_viol);
}

void globalness_campaign(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  const auto f = io::load_cube_family(P.text("family"));
  const BiasedMeasure m(P.probability("p"));
  const auto cert = globalness::certify_globalness(f, m);
  o.results["n"] = f.dim();
  o.results["size"] = f.size();
  o.results["mu"] = cube::measure(f, m);
  if (m.exact() && f.dim() <= 16) o.results["mu_exact"] = rational_to_string(cube::measure_exact(f, *m.exact()));
  o.results["monotone"] = cube::is_monotone(f);
  o.results["g_min"] = cert.g_min;
  o.results["witness"] = restriction_json(cert.witness);
  o.results["worst_ratio"] = cert.worst_ratio;
  o.results["full_scan"] = cert.full_scan;
  for (std::size_t k = 0; k < cert.worst_ratio.size(); ++k)
    o.csv_rows.push_back(Json{{"size", k}, {"worst_ratio", cert.worst_ratio[k]}});
}

void extract_global(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  const auto gq = P.probability("g");
  const double g = gq.value();
  const BiasedMeasure m(P.probability("p"));
  std::vector<CubeFamily> input;
  if (P.has("family")) {
    input.push_back(io::load_cube_family(P.text("family")));
  } else {
    const int n = as_int(P.integer("n"), "n");
    if (n < 1 || n > 10) throw PreconditionError("random families need 1 <= n <= 10");
    const auto count = positive_count(P, "random");
    Rng rng(seed_of(P));
    for (std::uint64_t k = 0; k < count; ++k) input.push_back(random_monotone_family(n, rng));
  }
  bool all_global = true, all_exact = true;
  bool exact_available = m.exact().has_value() && gq.exact().has_value();
  Json rows = Json::array();
  for (std::size_t k = 0; k < input.size(); ++k) {
    const auto& f = input[k];
    const auto r = globalness::extract_global_restriction(f, g, m);
    const auto recert = globalness::certify_globalness(r.restricted, m);
    const bool global = recert.g_min <= g * (1 + 1e-12);
    all_global = all_global && global;
    Json row{{"index", k},         {"n", f.dim()},           {"size", f.size()},
             {"restricted", r.restriction.size()}, {"mu_before", r.mu_before}, {"mu_after", r.mu_after},
             {"score", r.score},   {"g_min_after", recert.g_min}, {"recertified", global}};
    if (exact_available) {
      const bool ineq = globalness::global_restriction_inequality_exact(f, r, *gq.exact(), *m.exact());
      all_exact = all_exact && ineq;
      row["inequality_exact"] = ineq;
    }
    o.csv_rows.push_back(row);
    row["restriction"] = restriction_json(r.restriction);
    rows.push_back(row);
  }
  o.results["g"] = gq.to_string();
  o.results["p"] = m.probability().to_string();
  o.results["families"] = input.size();
  o.results["rows"] = rows;
  o.check("restrictions_recertify_global", all_global);
  if (exact_available) o.check("measure_gain_inequality_exact", all_exact);
}

void level_d(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  const auto f = io::load_cube_family(P.text("family"));
  const BiasedMeasure m(P.probability("p"));
  const double g = P.real("g");
  int d_max = as_int(P.integer("d_max"), "d_max");
  if (d_max == 0) d_max = f.dim();
  const auto audit = globalness::level_d_audit(f, m, g, d_max);
  o.results["summary"] = Json{{"mu", audit.mu}, {"p", m.p()}, {"g", g}, {"n", f.dim()}, {"level0", audit.level0}};
  Json rows = Json::array();
  for (const auto& r : audit.rows) {
    Json row{{"d", r.d}, {"lhs", r.lhs}, {"frame", r.frame}, {"implied_c2", r.implied_c2}};
    rows.push_back(row);
    o.csv_rows.push_back(row);
  }
  o.results["rows"] = rows;
}

void sharp_probe(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  const BiasedMeasure m(P.probability("p"));
  const int t = as_int(P.integer("t"), "t");
  const auto a = io::load_cube_family(P.text("family"));
  if (P.text("mode") == "single") {
    const auto r = globalness::sharp_threshold_probe(a, m, t);
    o.results = Json{{"mode", "single"}, {"p", m.p()}, {"t", t}, {"mu_p", r.mu_p}, {"mu_third", r.mu_third},
                     {"threshold_rhs", r.threshold_rhs}, {"p_above_third", r.p_above_third}};
  } else {
    const auto b = io::load_cube_family(P.text("family_b"));
    const auto r = globalness::global_cross_probe(a, b, m, P.real("g"), t, P.real("c3"));
    o.results = Json{{"mode", "cross"}, {"p", m.p()},       {"t", t},
                     {"mu_a", r.mu_a},  {"mu_b", r.mu_b},   {"min_measure", r.min_measure},
                     {"rhs", r.rhs},    {"g_min_a", r.g_min_a}, {"g_min_b", r.g_min_b}};
  }
  o.csv_rows.push_back(o.results);
}

// --- families -----------------------------------------------------------------

void search_max(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  const int t = as_int(P.integer("t"), "t");
  const auto mode = P.text("mode") == "cross" ? families::SearchMode::cross : families::SearchMode::single;
  const auto shown = static_cast<std::size_t>(std::max(0L, P.integer("max_witnesses")));
  Json rows = Json::array();
  bool valid = true;
  for (long nl : P.integer_list("n")) {
    const int n = as_int(nl, "n");
    const auto r = families::max_t_intersecting(n, t, mode);
    // Re-validate every kept witness and record the smallest agreement seen.
    int min_agreement = n;
    for (const auto& [a, b] : r.witnesses) {
      valid = valid && families::is_cross_t_intersecting(a, b, t) && (mode == families::SearchMode::cross ||
                                                                      a.size() == r.max_size);
      if (mode == families::SearchMode::cross) valid = valid && a.size() * b.size() == r.max_size;
      for (const auto& s : a.members())
        for (const auto& u : b.members()) min_agreement = std::min(min_agreement, families::agreement(s, u));
    }
    Json row{{"n", n},
             {"t", t},
             {"mode", P.text("mode")},
             {"max_size", r.max_size},
             {"umvirate_reference", r.umvirate_reference},
             {"equals_reference", r.max_size == r.umvirate_reference},
             {"all_umvirates", r.all_umvirates},
             {"witness_count", r.witness_count},
             {"witnesses_truncated", r.witnesses_truncated},
             {"min_witness_agreement", r.witnesses.empty() ? Json() : Json(min_agreement)},
             {"scope", r.scope}};
    o.csv_rows.push_back(row);
    Json shown_w = Json::array();
    for (std::size_t k = 0; k < r.witnesses.size() && k < shown; ++k) {
      if (mode == families::SearchMode::single)
        shown_w.push_back(perm_family_json(r.witnesses[k].first, 1000));
      else
        shown_w.push_back(Json{{"a", perm_family_json(r.witnesses[k].first, 1000)},
                               {"b", perm_family_json(r.witnesses[k].second, 1000)}});
    }
    row["witnesses"] = shown_w;
    rows.push_back(row);
  }
  o.results["rows"] = rows;
  if (rows.size() == 1) {
    o.results["max_size"] = rows[0]["max_size"];
    o.results["all_umvirates"] = rows[0]["all_umvirates"];
  }
  o.check("witnesses_revalidate", valid);
}

void search_max_cube(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  const int n = as_int(P.integer("n"), "n"), t = as_int(P.integer("t"), "t");
  const auto p = P.probability("p");
  const auto r = families::max_t_intersecting_cube(n, t, p);
  const bool valid = families::is_t_intersecting(r.witness, t);
  o.results = Json{{"n", n},
                   {"t", t},
                   {"p", p.to_string()},
                   {"max_measure", r.max_measure},
                   {"max_measure_exact", maybe_exact(r.exact_max_measure)},
                   {"witness", mask_list(r.witness)}};
  o.csv_rows.push_back(Json{{"n", n}, {"t", t}, {"p", p.to_string()}, {"max_measure", r.max_measure},
                            {"max_measure_exact", exact_or_null(r.exact_max_measure)}});
  o.check("witness_is_t_intersecting", valid);
}

void verify_ak(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  const int t_max = as_int(P.integer("t_max"), "t_max"), r_max = as_int(P.integer("r_max"), "r_max");
  if (t_max < 1 || r_max < 0) throw PreconditionError("need t_max >= 1 and r_max >= 0");
  const auto p = P.probability("p");
  const int point_n = as_int(P.integer("point_check_n"), "point_check_n");
  bool bound_ok = true, points_ok = true;
  Json rows = Json::array(), per_t = Json::array();
  for (int t = 1; t <= t_max; ++t) {
    double best = 0;
    int best_r = 0;
    for (int r = 0; r <= r_max; ++r) {
      const auto ak = families::ak_bound_check(t, r, p);
      Json row{{"t", t},
               {"r", r},
               {"measure", ak.measure},
               {"measure_exact", exact_or_null(ak.exact_measure)},
               {"within_regime", ak.within_regime},
               {"regime_low", ak.regime_low},
               {"regime_high", ak.regime_high}};
      if (t + 2 * r <= point_n && p.value() > 0 && p.value() < 1) {
        const auto fam = families::ak_family(t, r, t + 2 * r);
        bool match;
        if (p.exact())
          match = cube::measure_exact(fam, *p.exact()) == *ak.exact_measure;
        else
          match = std::abs(cube::measure(fam, p.value()) - ak.measure) <= cube::kMeasureTolerance;
        points_ok = points_ok && match;
        row["point_enumeration_matches"] = match;
      }
      rows.push_back(row);
      o.csv_rows.push_back(row);
      if (ak.measure > best) {
        best = ak.measure;
        best_r = r;
      }
    }
    const double bound = std::pow(0.85, t);
    bound_ok = bound_ok && best <= bound;
    per_t.push_back(Json{{"t", t}, {"max_measure", best}, {"argmax_r", best_r}, {"bound_0_85_pow_t", bound},
                         {"holds", best <= bound}});
  }
  o.results["p"] = p.to_string();
  o.results["rows"] = rows;
  o.results["max_per_t"] = per_t;
  if (p.value() > 0 && p.value() < 1) {
    const auto f11 = families::ak_bound_check(1, 1, p);
    o.results["f11_measure"] = f11.measure;
    o.results["f11_measure_exact"] = maybe_exact(f11.exact_measure);
  }
  o.check("max_measure_at_most_0_85_pow_t", bound_ok);
  o.check("binomial_tail_matches_point_enumeration", points_ok);

  const int en = as_int(P.integer("exhaustive_n"), "exhaustive_n");
  if (en > 0) {
    const auto search = families::max_t_intersecting_cube(en, 1, p);
    // Best AK candidate that fits in [en].
    std::optional<mpq_class> best_exact;
    double best = 0;
    for (int r = 0; 1 + 2 * r <= en; ++r) {
      const auto ak = families::ak_bound_check(1, r, p);
      if (ak.measure > best) best = ak.measure;
      if (ak.exact_measure && (!best_exact || *ak.exact_measure > *best_exact)) best_exact = ak.exact_measure;
    }
    const bool equal = search.exact_max_measure && best_exact ? *search.exact_max_measure == *best_exact
                                                              : std::abs(search.max_measure - best) <= 1e-12;
    o.results["exhaustive"] = Json{{"n", en},
                                   {"t", 1},
                                   {"max_measure", search.max_measure},
                                   {"max_measure_exact", maybe_exact(search.exact_max_measure)},
                                   {"best_ak_measure", best},
                                   {"best_ak_measure_exact", maybe_exact(best_exact)},
                                   {"witness", mask_list(search.witness)}};
    o.check("exhaustive_max_equals_best_ak_family", equal);
  }
}

void counterexample(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  const int n = as_int(P.integer("n"), "n"), t = as_int(P.integer("t"), "t");
  const auto r = families::counterexample_family(n, t);
  const bool matches = mpz_class(std::to_string(r.size)) == r.formula;
  const bool exceeds = mpz_class(std::to_string(r.size)) > r.umvirate_size;
  o.results = Json{{"n", n},
                   {"t", t},
                   {"size", r.size},
                   {"formula", r.formula.get_str()},
                   {"umvirate_size", r.umvirate_size.get_str()},
                   {"size_matches_formula", matches},
                   {"exceeds_umvirate", exceeds},
                   {"t_intersecting", r.t_intersecting ? Json(*r.t_intersecting) : Json()}};
  o.csv_rows.push_back(o.results);
  o.check("size_matches_formula", matches);
  o.check("exceeds_umvirate", exceeds);
  o.check("t_intersecting", r.t_intersecting.value_or(false));
}

void stability(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  const int n = as_int(P.integer("n"), "n"), t = as_int(P.integer("t"), "t");
  const auto r = families::stability_family(n, t);
  const double target = 1 - std::exp(-1.0);
  o.results = Json{{"n", n},
                   {"t", t},
                   {"size_a", r.a.size()},
                   {"size_b", r.b.size()},
                   {"ratio", r.ratio},
                   {"one_minus_inv_e", target},
                   {"deviation", std::abs(r.ratio - target)},
                   {"cross_intersecting", r.cross_intersecting ? Json(*r.cross_intersecting) : Json()}};
  o.csv_rows.push_back(o.results);
  o.check("cross_t_intersecting", r.cross_intersecting.value_or(false));
  o.check("ratio_within_0.05_of_1_minus_1_over_e", std::abs(r.ratio - target) <= 0.05, r.ratio);
}

// --- embed --------------------------------------------------------------------

double resolve_p(const Params& P, int n, bool& vacuous) {
  vacuous = false;
  if (P.text("p") == "auto") {
    const auto reg = embed::hall_regime(n);
    vacuous = reg.vacuous;
    return reg.p;
  }
  return P.probability("p").value();
}

void coupling(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  const int n = as_int(P.integer("n"), "n");
  if (n < 2) throw PreconditionError("coupling needs n >= 2");
  bool vacuous = false;
  const double p = resolve_p(P, n, vacuous);
  const auto samples = positive_count(P, "samples");
  const auto seed = seed_of(P);

  // Embedding fidelity: permutations exhaustively, words on random pairs.
  const int fn = as_int(P.integer("fidelity_n"), "fidelity_n");
  if (fn > 6) throw ResourceGuardError("exhaustive embedding check is capped at n = 6");
  std::uint64_t perm_pairs = 0, perm_mismatch = 0, word_pairs = 0, word_mismatch = 0;
  bool injective = true;
  for (int m = 2; m <= fn; ++m) {
    const auto perms = families::all_permutations(m);
    std::vector<embed::BitMatrix> emb;
    for (const auto& s : perms) emb.push_back(embed::embed_perm(s));
    for (std::size_t a = 0; a < perms.size(); ++a)
      for (std::size_t b = 0; b < perms.size(); ++b) {
        ++perm_pairs;
        perm_mismatch += embed::common_ones(emb[a], emb[b]) != families::agreement(perms[a], perms[b]);
      }
    Rng rng(derive_seed(seed, 500 + static_cast<std::uint64_t>(m)));
    auto random_word = [&] {
      std::vector<int> w(m);
      for (auto& x : w) x = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
      return embed::WordPoint(w);
    };
    for (int k = 0; k < 1000; ++k) {
      const auto u = random_word(), v = random_word();
      int agree = 0;
      for (int i = 1; i <= m; ++i) agree += u(i) == v(i);
      ++word_pairs;
      word_mismatch += embed::common_ones(embed::embed_word(u), embed::embed_word(v)) != agree;
      injective = injective && ((u.letters() == v.letters()) == (embed::embed_word(u) == embed::embed_word(v)));
    }
  }
  o.results["fidelity"] = Json{{"max_n", fn},
                               {"permutation_pairs", perm_pairs},
                               {"permutation_mismatches", perm_mismatch},
                               {"word_pairs", word_pairs},
                               {"word_mismatches", word_mismatch},
                               {"word_embedding_injective", injective}};
  o.check("embedding_preserves_agreement", perm_mismatch == 0 && word_mismatch == 0);
  o.check("word_embedding_injective", injective);

  // t-intersecting constructions stay t-intersecting after embedding.
  Json preserved = Json::array();
  bool preserve_ok = true;
  for (int m = 2; m <= fn; ++m)
    for (int t = 1; t < m; ++t) {
      const auto fam = families::umvirate(families::UmvirateSpec::diagonal(t), m);
      std::vector<embed::BitMatrix> pe;
      for (const auto& s : fam.members()) pe.push_back(embed::embed_perm(s));
      int perm_min = m;
      for (std::size_t a = 0; a < pe.size(); ++a)
        for (std::size_t b = 0; b < pe.size(); ++b) perm_min = std::min(perm_min, embed::common_ones(pe[a], pe[b]));
      // Words fixing letter i at position i for i <= t.
      Json entry{{"n", m}, {"t", t}, {"umvirate_min_common", perm_min}};
      bool ok = perm_min >= t;
      if (m <= 5) {
        std::vector<embed::BitMatrix> we;
        std::vector<int> w(m);
        std::uint64_t total = 1;
        for (int i = t; i < m; ++i) total *= static_cast<std::uint64_t>(m);
        for (std::uint64_t code = 0; code < total; ++code) {
          std::uint64_t c = code;
          for (int i = 0; i < m; ++i) {
            if (i < t) {
              w[i] = i + 1;
            } else {
              w[i] = 1 + static_cast<int>(c % static_cast<std::uint64_t>(m));
              c /= static_cast<std::uint64_t>(m);
            }
          }
          we.push_back(embed::embed_word(embed::WordPoint(w)));
        }
        int word_min = m;
        for (std::size_t a = 0; a < we.size(); ++a)
          for (std::size_t b = a; b < we.size(); ++b) word_min = std::min(word_min, embed::common_ones(we[a], we[b]));
        entry["word_family_min_common"] = word_min;
        ok = ok && word_min >= t;
      }
      entry["preserved"] = ok;
      preserve_ok = preserve_ok && ok;
      preserved.push_back(entry);
    }
  o.results["intersection_preservation"] = preserved;
  o.check("t_intersection_preserved_by_embeddings", preserve_ok);

  const auto at_inv_n = embed::embedding_measure_factor(n, 1.0 / n);
  o.results["measure_factor"] = Json{{"p", 1.0 / n}, {"ratio", at_inv_n.point_mass_ratio}, {"bound", at_inv_n.bound}};
  o.check("measure_factor_at_least_e^-n", at_inv_n.point_mass_ratio >= at_inv_n.bound);

  // Coupling draws in fixed chunks so the merged counts do not depend on workers.
  const bool tally = n <= 6;
  const std::uint64_t outcomes = tally ? static_cast<std::uint64_t>(std::tgamma(n + 1) + 0.5) : 0;
  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  struct Tally {
    std::vector<std::uint64_t> counts;
    std::uint64_t dominated = 0;
    bool consistent = true;
    bool exact_uniform = true;
  };
  auto run_chunk = [&](std::uint64_t c) {
    Tally tl;
    tl.counts.assign(outcomes, 0);
    Rng rng(derive_seed(seed, c));
    const std::uint64_t count = std::min(kChunk, samples - c * kChunk);
    for (std::uint64_t s = 0; s < count; ++s) {
      const auto draw = embed::coupling_sample(n, p, rng);
      if (tally) ++tl.counts[families::rank(draw.sigma)];
      tl.dominated += draw.dominated;
      tl.exact_uniform = tl.exact_uniform && draw.exact_uniform;
      if (draw.dominated)
        for (int i = 1; i <= n; ++i) tl.consistent = tl.consistent && draw.x.get(i, draw.sigma(i));
    }
    return tl;
  };
  std::vector<Tally> parts(chunks);
  if (ctx.workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) parts[c] = run_chunk(c);
  } else {
    std::vector<std::future<void>> jobs;
    for (int w = 0; w < ctx.workers; ++w)
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::uint64_t c = static_cast<std::uint64_t>(w); c < chunks; c += static_cast<std::uint64_t>(ctx.workers))
          parts[c] = run_chunk(c);
      }));
    for (auto& j : jobs) j.get();
  }
  Tally total;
  total.counts.assign(outcomes, 0);
  for (const auto& part : parts) {
    for (std::uint64_t k = 0; k < outcomes; ++k) total.counts[k] += part.counts[k];
    total.dominated += part.dominated;
    total.consistent = total.consistent && part.consistent;
    total.exact_uniform = total.exact_uniform && part.exact_uniform;
  }
  const double dom = static_cast<double>(total.dominated) / static_cast<double>(samples);
  Json sampling{{"n", n},
                {"p", p},
                {"regime_vacuous", vacuous},
                {"samples", samples},
                {"dominated_fraction", dom},
                {"exact_uniform_choice", total.exact_uniform}};
  if (!total.exact_uniform)
    sampling["caveat"] = "prospects chosen by randomised augmenting paths; not exactly uniform";
  o.check("dominated_draws_cover_sigma", total.consistent);
  if (tally) {
    const double expected = static_cast<double>(samples) / static_cast<double>(outcomes);
    double stat = 0;
    for (auto c : total.counts) stat += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
    const boost::math::chi_squared_distribution<double> chi(static_cast<double>(outcomes - 1));
    const double p_value = boost::math::cdf(boost::math::complement(chi, stat));
    const double critical = boost::math::quantile(boost::math::complement(chi, 0.001));
    sampling["sigma_counts"] = total.counts;
    sampling["chi_square"] = Json{{"statistic", stat},
                                  {"df", outcomes - 1},
                                  {"p_value", p_value},
                                  {"critical_at_0.001", critical},
                                  {"significant_at_0.001", p_value < 0.001}};
    o.check("sigma_marginal_uniform_at_alpha_0.001", p_value >= 0.001, p_value);
  }
  const double regime_p = embed::hall_regime(n).p;
  if (p >= regime_p) {
    const double band = 3 * std::sqrt(0.25 / static_cast<double>(samples));
    o.check("dominated_fraction_at_least_half", dom >= 0.5 - band, dom);
  }
  o.results["sampling"] = sampling;
  o.csv_rows.push_back(Json{{"n", n}, {"p", p}, {"samples", samples}, {"dominated_fraction", dom}});
}

void hall(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  const auto mode = P.text("mode");
  const auto samples = positive_count(P, "samples");
  const auto seed = seed_of(P);
  Json rows = Json::array();
  for (long nl : P.integer_list("n")) {
    const int n = as_int(nl, "n");
    if (n < 2) throw PreconditionError("hall bound needs n >= 2");
    bool vacuous = false;
    const double pv = resolve_p(P, n, vacuous);
    const Probability prob = P.text("p") == "auto" ? Probability(pv) : P.probability("p");
    if (mode == "exact" && n > embed::kExactHallMaxN)
      throw ResourceGuardError("exact hall bound enumerates 2^(n^2) matrices; n is capped at " +
                               std::to_string(embed::kExactHallMaxN));
    const auto hb = embed::hall_bound(n, prob, samples, derive_seed(seed, static_cast<std::uint64_t>(n)),
                                      mode == "mc", ctx.workers);
    Json row{{"n", n},
             {"p", prob.to_string()},
             {"regime_vacuous", vacuous},
             {"exact", hb.exact},
             {"mu_U", hb.mu_u},
             {"mu_U_exact", exact_or_null(hb.exact_mu_u)},
             {"samples", hb.samples},
             {"ci_low_99", hb.ci_low},
             {"ci_high_99", hb.ci_high},
             {"union_bound_residual", hb.union_bound_residual}};
    if (hb.exact && n * n <= cube::kExactMaxDim) {
      // Independent count: up-closure of the permutation matrices as a cube family.
      std::vector<Mask> pts;
      for (const auto& s : families::all_permutations(n)) {
        Mask x = 0;
        for (int i = 1; i <= n; ++i) x |= Mask{1} << ((i - 1) * n + s(i) - 1);
        pts.push_back(x);
      }
      const auto up = cube::up_closure(CubeFamily(n * n, pts));
      bool agrees;
      if (hb.exact_mu_u)
        agrees = cube::measure_exact(up, *prob.exact()) == *hb.exact_mu_u;
      else
        agrees = std::abs(cube::measure(up, pv) - hb.mu_u) <= cube::kMeasureTolerance;
      row["up_closure_points"] = up.size();
      row["up_closure_agrees"] = agrees;
      o.check("up_closure_matches_n" + std::to_string(n), agrees);
    }
    if (!vacuous && pv >= embed::hall_regime(n).p) {
      o.check("mu_U_lower_99_above_half_n" + std::to_string(n), hb.ci_low > 0.5, hb.ci_low);
      o.check("union_bound_at_most_half_n" + std::to_string(n), hb.union_bound_residual <= 0.5,
              hb.union_bound_residual);
    }
    rows.push_back(row);
    o.csv_rows.push_back(row);
  }
  o.results["rows"] = rows;
  if (rows.size() == 1) {
    o.results["mu_U"] = rows[0]["mu_U"];
    o.results["union_bound_residual"] = rows[0]["union_bound_residual"];
  }
}

// --- bump ---------------------------------------------------------------------

families::PermFamily family_for_bump(const Params& P) {
  const auto kind = P.text("construct");
  if (kind == "none") return io::load_perm_family(P.text("family"));
  const int n = as_int(P.integer("n"), "n"), t = as_int(P.integer("t"), "t");
  if (kind == "counterexample") return families::counterexample_family(n, t).family;
  if (kind == "umvirate") return families::umvirate(families::UmvirateSpec::diagonal(t), n);
  const auto st = families::stability_family(n, t);
  return kind == "stability-a" ? st.a : st.b;
}

void bump_campaign(const Context& ctx, Outcome& o) {
  const auto f = family_for_bump(ctx.params);
  const auto r = bump::density_bump(f);
  bool partition = true;
  for (const auto& row : r.counts)
    partition = partition && std::accumulate(row.begin(), row.end(), std::uint64_t{0}) == r.family_size;
  o.results = Json{{"n", f.n()},           {"size", r.family_size}, {"best_i", r.best_i},
                   {"best_j", r.best_j},   {"ratio", r.ratio},      {"table", r.table},
                   {"counts", r.counts}};
  for (int i = 1; i <= f.n(); ++i)
    for (int j = 1; j <= f.n(); ++j)
      o.csv_rows.push_back(Json{{"i", i}, {"j", j}, {"count", r.counts[i - 1][j - 1]}, {"ratio", r.table[i - 1][j - 1]}});
  o.check("rows_partition_family", partition);
}

void chain(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  const auto kind = P.text("construct");
  const int t = as_int(P.integer("t"), "t");
  std::optional<families::PermFamily> a, b;
  if (kind == "none") {
    a = io::load_perm_family(P.text("family_a"));
    b = io::load_perm_family(P.text("family_b"));
  } else {
    const int n = as_int(P.integer("n"), "n");
    if (kind == "stability") {
      auto st = families::stability_family(n, t);
      a = std::move(st.a);
      b = std::move(st.b);
    } else {
      a = families::umvirate(families::UmvirateSpec::diagonal(t), n);
      b = a;
    }
  }
  constexpr std::uint64_t kBudget = 200'000'000;
  const auto ta = families::is_t_intersecting_bounded(*a, t, kBudget);
  const auto tb = families::is_t_intersecting_bounded(*b, t, kBudget);
  const auto r = bump::restriction_chain(*a, *b, t, kBudget);
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    Json row{{"i", s.i},           {"j", s.j},           {"size_a", s.size_a},
             {"size_b", s.size_b}, {"retained_a", s.retained_a}, {"retained_b", s.retained_b}};
    steps.push_back(row);
    o.csv_rows.push_back(row);
  }
  auto opt = [](const std::optional<bool>& v) { return v ? Json(*v) : Json(); };
  o.results = Json{{"n", a->n()},
                   {"t", t},
                   {"size_a", a->size()},
                   {"size_b", b->size()},
                   {"a_t_intersecting", opt(ta)},
                   {"b_t_intersecting", opt(tb)},
                   {"cross_t_intersecting", opt(r.cross_intersecting)},
                   {"steps", steps},
                   {"final_containment", r.final_containment}};
  if (r.cross_intersecting == false) o.results["warning"] = "input pair is not cross t-intersecting";
}

// --- audits -------------------------------------------------------------------

Json audit_json(const bump::ConstantAudit& a) {
  Json inputs = Json::object(), derived = Json::object(), checks = Json::array();
  for (const auto& [k, v] : a.inputs) inputs[k] = v;
  for (const auto& [k, v] : a.derived) derived[k] = v;
  for (const auto& c : a.checks)
    checks.push_back(Json{{"name", c.name}, {"relation", c.relation}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}});
  return Json{{"inputs", inputs}, {"derived", derived}, {"checks", checks}, {"all_hold", a.all_hold()}};
}

void add_audit_rows(Outcome& o, const bump::ConstantAudit& a) {
  for (const auto& c : a.checks) {
    Json row = Json::object();
    for (const auto& [k, v] : a.inputs) row[k] = v;
    row["check"] = c.name;
    row["relation"] = c.relation;
    row["lhs"] = c.lhs;
    row["rhs"] = c.rhs;
    row["holds"] = c.holds;
    o.csv_rows.push_back(row);
  }
}

// (n, t) pairs from --grid, or the single --n/--t pair.
std::vector<std::pair<long, long>> grid_points(const Params& P) {
  if (!P.has("grid")) return {{P.integer("n"), P.integer("t")}};
  std::vector<long> ns{P.integer("n")}, ts{P.integer("t")};
  for (const auto& axis : parse_grid(P.text("grid"))) {
    if (axis.name == "n")
      ns = axis.values();
    else if (axis.name == "t")
      ts = axis.values();
    else
      throw ParseError("grid axis '" + axis.name + "' is not n or t");
  }
  std::vector<std::pair<long, long>> out;
  for (long t : ts)
    for (long n : ns) out.emplace_back(n, t);
  return out;
}

void finish_audits(Outcome& o, const std::vector<bump::ConstantAudit>& audits, std::size_t skipped) {
  Json all = Json::array();
  bool ok = true;
  for (const auto& a : audits) {
    all.push_back(audit_json(a));
    add_audit_rows(o, a);
    ok = ok && a.all_hold();
  }
  o.results["audits"] = all;
  o.results["audited_points"] = audits.size();
  o.results["skipped_points"] = skipped;
  o.check("all_audit_checks_hold", ok && !audits.empty());
}

std::vector<std::pair<long, long>> regime_filter(const Params& P, std::size_t& skipped) {
  auto pts = grid_points(P);
  skipped = 0;
  if (P.has("regime_only") && P.text("regime_only") == "true" && P.has("grid")) {
    std::vector<std::pair<long, long>> kept;
    for (const auto& [n, t] : pts)
      if (t >= 1 && n >= 500 * t)
        kept.emplace_back(n, t);
      else
        ++skipped;
    pts = std::move(kept);
  }
  return pts;
}

void audit_claim52(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  std::size_t skipped = 0;
  std::vector<bump::ConstantAudit> audits;
  for (const auto& [n, t] : regime_filter(P, skipped))
    audits.push_back(bump::audit_claim52(n, t, P.real("a"), P.real("c")));
  finish_audits(o, audits, skipped);
}

void audit_bootstrap(const Context& ctx, Outcome& o) {
  std::size_t skipped = 0;
  const auto pts = regime_filter(ctx.params, skipped);
  finish_audits(o, bump::audit_bootstrap_grid(pts), skipped);
}

void audit_prop41(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  std::optional<double> g2;
  if (P.has("g2")) g2 = P.real("g2");
  const auto a = bump::audit_prop41_cases(P.real("n"), P.real("t"), P.real("k"), P.real("c"), P.real("g"), g2);
  Json all = Json::array();
  all.push_back(audit_json(a));
  add_audit_rows(o, a);
  o.results["audits"] = all;
  // Reported, not asserted: these inequalities only hold for n beyond unstated thresholds.
}

void basis_bound(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  const int n = as_int(P.integer("n"), "n"), t = as_int(P.integer("t"), "t");
  const auto mode = P.text("exact");
  const bool exact = mode == "true" || (mode == "auto" && n <= bump::kBasisExactMaxN);
  const auto r = bump::induction_basis_bound(n, t, exact);
  o.results = Json{{"n", n},
                   {"t", t},
                   {"exact_count", r.exact_count ? Json(*r.exact_count) : Json()},
                   {"binom_bound", r.binom_bound.get_str()},
                   {"two_n_bound", r.two_n_bound.get_str()}};
  o.csv_rows.push_back(o.results);
  bool chain_ok = r.binom_bound <= r.two_n_bound;
  if (r.exact_count) chain_ok = chain_ok && mpz_class(std::to_string(*r.exact_count)) <= r.binom_bound;
  o.check("exact_le_binom_le_two_n", chain_ok);
}

void r_audit(const Context& ctx, Outcome& o) {
  const auto& P = ctx.params;
  const double c0 = P.real("c0");
  std::size_t skipped = 0;
  std::vector<bump::ConstantAudit> audits;
  for (const auto& [n, t] : grid_points(P)) {
    if (t < 0 || n < static_cast<long>(std::floor(c0 * static_cast<double>(t)))) {
      if (!P.has("grid")) (void)bump::r_of(n, t, c0);  // reports the precondition
      ++skipped;
      continue;
    }
    audits.push_back(bump::r_audit(n, t, c0));
  }
  finish_audits(o, audits, skipped);
  if (audits.size() == 1) o.results["log4_r"] = audits[0].derived.front().second;
}

const std::map<std::string, CampaignFn>& dispatch() {
  static const std::map<std::string, CampaignFn> table = {
      {"fourier-roundtrip", fourier_roundtrip},
      {"noise-check", noise_check},
      {"fkg-suite", fkg_suite},
      {"globalness", globalness_campaign},
      {"extract-global", extract_global},
      {"level-d-audit", level_d},
      {"sharp-probe", sharp_probe},
      {"search-max", search_max},
      {"search-max-cube", search_max_cube},
      {"verify-ak", verify_ak},
      {"counterexample", counterexample},
      {"stability", stability},
      {"coupling", coupling},
      {"hall-bound", hall},
      {"bump", bump_campaign},
      {"chain", chain},
      {"audit-claim52", audit_claim52},
      {"audit-bootstrap", audit_bootstrap},
      {"audit-prop41", audit_prop41},
      {"basis-bound", basis_bound},
      {"r-audit", r_audit},
  };
  return table;
}

std::string csv_cell(const Json& v) {
  std::string s;
  if (v.is_string())
    s = v.get<std::string>();
  else if (v.is_null())
    s = "";
  else
    s = v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  return s;
}

void write_csv(std::ostream& out, const std::vector<Json>& rows) {
  std::vector<std::string> columns;
  for (const auto& row : rows)
    for (const auto& [k, v] : row.items())
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << csv_cell(columns[c]);
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << (c ? "," : "");
      if (row.contains(columns[c])) out << csv_cell(row[columns[c]]);
    }
    out << '\n';
  }
}

}  // namespace

void run_campaign(const CampaignConfig& config, std::ostream& out) {
  const auto it = dispatch().find(config.subcommand);
  if (it == dispatch().end()) throw PreconditionError("no campaign named " + config.subcommand);
  const Params params(config.params);
  const Context ctx{params, config.workers};
  Outcome outcome;
  const auto start = std::chrono::steady_clock::now();
  it->second(ctx, outcome);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (config.format == "csv") {
    write_csv(out, outcome.csv_rows);
    return;
  }
  Json cfg = Json::object();
  for (const auto& [k, v] : config.params) cfg[k] = v;
  cfg["format"] = config.format;
  cfg["workers"] = config.workers;
  bool all = true;
  for (const auto& c : outcome.checks) all = all && c["holds"].get<bool>();
  Json report{{"tool", kToolName},
              {"version", kVersion},
              {"subcommand", config.subcommand},
              {"config", cfg},
              {"results", outcome.results},
              {"checks", outcome.checks},
              {"all_checks_pass", all},
              {"wall_clock_s", seconds}};
  out << report.dump(2) << '\n';
}

}  // namespace globalcube::cli
