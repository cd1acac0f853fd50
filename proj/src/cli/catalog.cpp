#include <algorithm>
#include <charconv>

#include "globalcube/cli.hpp"
#include "globalcube/errors.hpp"

namespace globalcube::cli {

namespace {

using T = ParamType;

ParamSpec param(std::string name, T type, std::string def, std::string help) {
  return {std::move(name), type, std::move(def), std::move(help), {}};
}

ParamSpec choice(std::string name, std::vector<std::string> choices, std::string help) {
  std::string def = choices.front();
  return {std::move(name), T::choice, std::move(def), std::move(help), std::move(choices)};
}

ParamSpec seed() { return param("seed", T::integer, "", "master seed; falls back to $GLOBALCUBE_SEED, then 1"); }

ParamSpec grid() {
  return param("grid", T::grid, "", "parameter ranges such as 'n=500..10000:500 t=1..20'; overrides n and t");
}

std::vector<Campaign> build() {
  std::vector<Campaign> c;
  c.push_back({"fourier-roundtrip",
               "transform/inverse round trip, Parseval and level weights on random functions; "
               "exhaustive character orthonormality",
               {"fourier.transform", "fourier.inverse_transform", "fourier.level_weight"},
               {param("n", T::integer_list, "6,10,14", "dimensions"),
                param("p", T::probability, "0.25", "bias"),
                param("trials", T::integer, "100", "random functions per dimension"),
                param("ortho_n", T::integer, "6", "dimension of the exhaustive orthonormality check (0 skips)"),
                seed()}});
  c.push_back({"noise-check",
               "one-sided noise in Fourier form against the exact coupling expectation; coupled-pair sampling",
               {"fourier.one_sided_noise", "fourier.coupling_expectation", "fourier.sample_coupled_pair"},
               {param("n", T::integer_list, "1,2,3,4,5,6,7,8", "dimensions"),
                param("q", T::probability_list, "0.1,0.25", "source biases, paired with p"),
                param("p", T::probability_list, "0.3,0.5", "target biases"),
                param("trials", T::integer, "50", "random functions per (n, q, p)"),
                param("samples", T::integer, "100000", "coupled pairs drawn at n = 1 for the marginal test"),
                seed()}});
  c.push_back({"fkg-suite",
               "correlation inequality over all monotone pairs at small n and random monotone pairs at larger n",
               {"cube.fkg_check"},
               {param("exhaustive_n", T::integer, "4", "dimension of the exhaustive sweep (<= 4)"),
                param("random_n", T::integer, "12", "dimension of the random sweep"),
                param("pairs", T::integer, "1000", "random pairs"), param("p", T::probability, "0.3", "bias"),
                seed()}});
  c.push_back({"globalness",
               "measure, monotonicity and the smallest globalness constant of a family",
               {"cube.measure", "cube.is_monotone", "globalness.certify_globalness"},
               {param("family", T::path, "", "cube family file"), param("p", T::probability, "1/2", "bias")}});
  c.push_back({"extract-global",
               "global restrictions of a family (or of random monotone families), re-certified",
               {"cube.restrict", "globalness.extract_global_restriction"},
               {param("family", T::path, "", "cube family file; random monotone families when absent"),
                param("random", T::integer, "200", "number of random monotone families"),
                param("n", T::integer, "8", "dimension of the random families (<= 10)"),
                param("g", T::real, "4", "globalness parameter"), param("p", T::probability, "1/10", "bias"),
                seed()}});
  c.push_back({"level-d-audit",
               "level-d weights of an indicator against mu^2 g^(2d) ln^d(1/mu) / d^d",
               {"globalness.level_d_audit"},
               {param("family", T::path, "", "cube family file"), param("p", T::probability, "1/2", "bias"),
                param("g", T::real, "2", "globalness parameter"),
                param("d_max", T::integer, "0", "largest level (0 means n)")}});
  c.push_back({"sharp-probe",
               "sharp-threshold probe of a monotone family, or the global cross-intersection bound for a pair",
               {"globalness.sharp_threshold_probe", "globalness.global_cross_probe"},
               {choice("mode", {"single", "cross"}, "probe kind"), param("family", T::path, "", "cube family file"),
                param("family_b", T::path, "", "second family (cross mode)"),
                param("p", T::probability, "1/2", "bias"), param("t", T::integer, "1", "intersection size"),
                param("g", T::real, "2", "globalness parameter (cross mode)"),
                param("c3", T::real, "1", "constant in exp(-c3 t/(p g^2)) (cross mode)")}});
  c.push_back({"search-max",
               "exact largest t-intersecting family in S_n, or largest |A||B| for cross pairs",
               {"families.agreement", "families.max_t_intersecting"},
               {param("n", T::integer_list, "4", "degrees"), param("t", T::integer, "1", "agreement size"),
                choice("mode", {"single", "cross"}, "search kind"),
                param("max_witnesses", T::integer, "10", "witnesses printed per n")}});
  c.push_back({"search-max-cube",
               "exact largest mu_p over t-intersecting families of subsets of [n]",
               {"families.max_t_intersecting_cube"},
               {param("n", T::integer, "3", "ground set size (<= 4)"), param("t", T::integer, "1", "intersection"),
                param("p", T::probability, "1/3", "bias")}});
  c.push_back({"verify-ak",
               "biased AK families: measures, regimes, the 0.85^t bound at p = 1/3 and small exhaustive maxima",
               {"families.ak_family", "families.ak_bound_check"},
               {param("t_max", T::integer, "10", "largest t"), param("r_max", T::integer, "5", "largest r"),
                param("p", T::probability, "1/3", "bias"),
                param("exhaustive_n", T::integer, "3", "ground set of the exhaustive t = 1 comparison (0 skips)"),
                param("point_check_n", T::integer, "12", "largest n for point-enumeration cross-checks")}});
  c.push_back({"counterexample",
               "permutations with at least t+1 fixed points among 1..t+2 against (n-t)!",
               {"families.counterexample_family"},
               {param("n", T::integer, "8", "degree"), param("t", T::integer, "4", "agreement size")}});
  c.push_back({"stability",
               "umvirate plus a transposition and its cross partner; |B|/(n-t)! against 1 - 1/e",
               {"families.stability_family"},
               {param("n", T::integer, "10", "degree"), param("t", T::integer, "1", "agreement size")}});
  c.push_back({"coupling",
               "embedding fidelity, the embedding measure factor and the uniform-under-x coupling",
               {"embed.embed_perm", "embed.embed_word", "embed.embedding_measure_factor", "embed.coupling_sample"},
               {param("n", T::integer, "3", "degree"),
                param("p", T::probability, "auto", "bias; 'auto' is min(1, 10 ln n / n)"),
                param("samples", T::integer, "100000", "coupling draws"),
                param("fidelity_n", T::integer, "4", "exhaustive embedding check on S_m for m <= this (<= 6)"),
                seed()}});
  c.push_back({"hall-bound",
               "mu_p of the up-closure of the permutation matrices, with the union-bound residual",
               {"cube.up_closure", "embed.hall_membership", "embed.hall_bound"},
               {param("n", T::integer_list, "2", "degrees"),
                param("p", T::probability, "auto", "bias; 'auto' is min(1, 10 ln n / n)"),
                choice("mode", {"auto", "exact", "mc"}, "exact enumeration (n <= 3) or Monte Carlo"),
                param("samples", T::integer, "10000", "Monte Carlo samples"), seed()}});
  c.push_back({"bump",
               "dictatorship density table of a permutation family",
               {"bump.density_bump"},
               {param("family", T::path, "", "permutation family file"),
                choice("construct", {"none", "counterexample", "umvirate", "stability-a", "stability-b"},
                       "built-in family used instead of a file"),
                param("n", T::integer, "8", "degree for built-in families"),
                param("t", T::integer, "4", "t for built-in families")}});
  c.push_back({"chain",
               "intersection predicates and the greedy restriction chain for a pair of families",
               {"families.is_t_intersecting", "families.is_cross_t_intersecting", "families.umvirate",
                "bump.restriction_chain"},
               {param("family_a", T::path, "", "first permutation family file"),
                param("family_b", T::path, "", "second permutation family file"),
                choice("construct", {"none", "stability", "umvirate"}, "built-in pair used instead of files"),
                param("n", T::integer, "8", "degree for built-in pairs"),
                param("t", T::integer, "1", "agreement size")}});
  c.push_back({"audit-claim52",
               "density-concentration arithmetic: Delta, root bounds and the 7/n chain",
               {"bump.audit_claim52"},
               {param("n", T::integer, "500", "n"), param("t", T::integer, "1", "t"),
                param("a", T::real, "50", "bump size a = n |A_{1->i}| / |A|"),
                param("c", T::real, "2/3", "density constant"), grid(),
                choice("regime_only", {"true", "false"}, "skip grid points with n < 500 t")}});
  c.push_back({"audit-bootstrap",
               "bootstrapping inequalities and the exact derangement floor",
               {"bump.audit_bootstrap", "families.derangement_count"},
               {param("n", T::integer, "500", "n"), param("t", T::integer, "1", "t"), grid(),
                choice("regime_only", {"true", "false"}, "skip grid points with n < 500 t")}});
  c.push_back({"audit-prop41",
               "both sides of the large/medium/small-t restriction-size inequalities and the case boundaries",
               {"bump.audit_prop41_cases"},
               {param("n", T::real, "1000000", "n"), param("t", T::real, "2000", "t"),
                param("k", T::real, "50", "density bump k"), param("c", T::real, "2/3", "density constant"),
                param("g", T::real, "2", "globalness parameter of the first restriction"),
                param("g2", T::real, "", "globalness parameter of the second restriction (default g)")}});
  c.push_back({"basis-bound",
               "permutations agreeing with the identity on >= t points against C(n,t)(n-t)! and 2^n (n-t)!",
               {"bump.induction_basis_bound"},
               {param("n", T::integer, "4", "degree"), param("t", T::integer, "2", "agreement size"),
                choice("exact", {"auto", "true", "false"}, "enumerate S_n (auto: when n <= 8)")}});
  c.push_back({"r-audit",
               "r(n,t) = max(4^(2 floor(c0 t) - n), 1) and its two monotonicity relations",
               {"bump.r_of"},
               {param("n", T::integer, "1000", "n"), param("t", T::integer, "1", "t"),
                param("c0", T::real, "500", "c0"), grid()}});
  return c;
}

bool parse_long(std::string_view s, long& out) {
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && !s.empty();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

const std::vector<Campaign>& catalog() {
  static const std::vector<Campaign> campaigns = build();
  return campaigns;
}

const Campaign* find_campaign(std::string_view name) {
  for (const auto& c : catalog())
    if (c.name == name) return &c;
  return nullptr;
}

void validate_param(const ParamSpec& spec, const std::string& value) {
  auto bad = [&](const std::string& why) {
    throw ParseError("parameter --" + spec.name + "='" + value + "': " + why);
  };
  auto check_real = [&](const std::string& v) {
    try {
      (void)Probability::parse(v);
    } catch (const Error&) {
      bad("not a number");
    }
  };
  auto check_prob = [&](const std::string& v) {
    if (v == "auto") return;
    Probability p(0.0);
    try {
      p = Probability::parse(v);
    } catch (const Error&) {
      bad("not a probability");
    }
    if (!(p.value() > 0.0 && p.value() <= 1.0)) bad("probability must lie in (0, 1]");
  };
  long dummy = 0;
  switch (spec.type) {
    case T::integer:
      if (!parse_long(value, dummy)) bad("not an integer");
      break;
    case T::integer_list:
      for (const auto& v : split_list(value))
        if (!parse_long(v, dummy)) bad("not a comma-separated integer list");
      break;
    case T::real:
      check_real(value);
      break;
    case T::real_list:
      for (const auto& v : split_list(value)) check_real(v);
      break;
    case T::probability:
      check_prob(value);
      break;
    case T::probability_list:
      for (const auto& v : split_list(value)) check_prob(v);
      break;
    case T::grid:
      (void)parse_grid(value);
      break;
    case T::choice:
      if (std::find(spec.choices.begin(), spec.choices.end(), value) == spec.choices.end()) bad("unknown choice");
      break;
    case T::text:
    case T::path:
      if (value.empty()) bad("empty value");
      break;
  }
}

}  // namespace globalcube::cli
