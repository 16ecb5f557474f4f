#include "tameforge/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "tameforge/composer.hpp"
#include "tameforge/error.hpp"
#include "tameforge/products.hpp"
#include "tameforge/serialize.hpp"
#include "tameforge/sl2.hpp"
#include "tameforge/symplectic.hpp"
#include "tameforge/verify.hpp"

namespace tameforge {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDetTol = 1e-12;
// Axis and fiber inputs are drawn this far apart so the interpolants stay tame.
constexpr double kInputSeparation = 0.3;

struct Outcome {
  VerificationReport report;
  AutoChain chain{2};
  std::optional<json> stages;
};

// Resolved view of a RunConfig; every field the command uses is set.
struct Ctx {
  const RunConfig& in;
  ToleranceConfig cfg;
  json config;

  int get(const std::optional<int>& v, const char* key, int def, int lo, int hi) {
    const int x = v.value_or(def);
    if (x < lo || x > hi) {
      throw ConfigError(std::string("--") + key + " must lie in [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    }
    config[key] = x;
    return x;
  }
};

// Residuals that overflow are failed checks, not construction errors.
double measure(const std::function<double()>& f) {
  try {
    const double r = f();
    return std::isnan(r) ? kInf : r;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NonFiniteEvaluation || e.kind() == ErrorKind::ChartSingularity) {
      return kInf;
    }
    throw;
  }
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--injection: cannot parse \"" + item + "\"");
    }
  }
  return out;
}

// l(1..K) from --injection; K comes from the list when one is given.
std::vector<int> injection(Ctx& c, int def_k, int cap, int def_range) {
  const std::string& spec = c.in.injection;
  std::vector<int> ell;
  int K = 0;
  if (spec == "identity" || spec == "random") {
    K = c.get(c.in.k, "k", def_k, 1, cap);
    if (spec == "random") {
      const int range = c.get(c.in.range, "range", std::max(def_range, K), K, 1000000);
      ell = random_injection(K, range, c.in.seed);
    } else {
      for (int i = 1; i <= K; ++i) ell.push_back(i);
    }
  } else {
    ell = parse_list(spec);
    K = static_cast<int>(ell.size());
    if (c.in.k && *c.in.k != K) throw ConfigError("--k disagrees with the injection list length");
    c.get(K, "k", K, 1, cap);
  }
  std::set<int> seen;
  for (int v : ell) {
    if (v < 1 || !seen.insert(v).second) throw ConfigError("--injection must be injective into 1, 2, ...");
  }
  c.config["injection"] = spec;
  c.config["ell"] = ell;
  return ell;
}

std::vector<Complex> distinct_disc(Sampler& s, int count, double r) {
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < count) {
    const Complex z = s.in_disc(r);
    if (std::all_of(out.begin(), out.end(),
                    [&](Complex w) { return std::abs(z - w) > kInputSeparation; })) {
      out.push_back(z);
    }
  }
  return out;
}

double mapping(const AutoChain& chain, const std::vector<CxVector>& points,
               const std::vector<CxVector>& images, const ToleranceConfig& cfg) {
  return measure([&] { return verify_tame_action(chain, points, images, cfg).checks[0].residual; });
}

double symplectic(const AutoChain& chain, int n, const ToleranceConfig& cfg, std::uint64_t seed) {
  return measure([&] {
    return check_symplectic(chain, n, cfg, SampleSpec{50, 2.0, seed}).checks[0].residual;
  });
}

Outcome run_sl2(Ctx& c, bool first) {
  const std::vector<int> ell = injection(c, 10, first ? 50 : 30, 200);
  const SL2Construction s = first ? seq1_chain(ell) : seq2_chain(ell);
  Outcome o;
  o.chain = s.chain;
  o.report.add("tame_action", mapping(s.chain, s.points, s.images, c.cfg), c.cfg.residual_tol);
  o.report.add("det", measure([&] {
                 double worst = 0.0;
                 for (const CxVector& p : s.points) {
                   worst = std::max(worst, SL2Elem::from_vector(s.chain.apply(p)).det_residual());
                 }
                 return worst;
               }),
               kDetTol);
  o.report.add("haar", measure([&] {
                 return haar_residual(s.chain, c.cfg, SampleSpec{50, 2.0, c.in.seed});
               }),
               c.cfg.jac_tol);
  return o;
}

Outcome run_axis(Ctx& c) {
  const int K = c.get(c.in.k, "k", 8, 1, 60);
  const int n = c.get(c.in.n, "n", 1, 1, 4);
  Sampler s(c.in.seed);
  const auto alpha = distinct_disc(s, K, 3.0), beta = distinct_disc(s, K, 3.0);
  const Construction a = axis_relabel(alpha, beta, n);
  Outcome o;
  o.chain = a.chain;
  o.report.add("mapping", mapping(a.chain, a.points, a.images, c.cfg), c.cfg.residual_tol);
  o.report.add("symplectic", symplectic(a.chain, n, c.cfg, c.in.seed), c.cfg.jac_tol);
  return o;
}

Outcome run_fiber(Ctx& c) {
  const int K = c.get(c.in.k, "k", 6, 1, 60);
  const int n = c.get(c.in.n, "n", 2, 1, 4);
  Sampler s(c.in.seed);
  const auto b = distinct_disc(s, K, 2.0);
  std::vector<CxVector> targets;
  for (Complex x : b) {
    CxVector z = s.in_polydisc(2 * n, 2.0);
    z[0] = x;
    targets.push_back(z);
  }
  const Construction f = fiber_lift_chain(b, targets, n);
  Outcome o;
  o.chain = f.chain;
  o.report.add("mapping", mapping(f.chain, f.points, f.images, c.cfg), c.cfg.residual_tol);
  o.report.add("symplectic", symplectic(f.chain, n, c.cfg, c.in.seed), c.cfg.jac_tol);
  return o;
}

Outcome run_flatten(Ctx& c) {
  const int K = c.get(c.in.k, "k", 4, 1, 8);
  const std::string& mode = c.in.mode;
  if (mode != "corrected" && mode != "paper") throw ConfigError("--mode must be corrected or paper");
  c.config["mode"] = mode;
  const bool paper = mode == "paper";
  const Construction f =
      flatten_pairs_c4(PairLattice::cantor(K), paper ? FlattenMode::Paper : FlattenMode::Corrected);
  Outcome o;
  o.chain = f.chain;
  o.report.add("mapping", mapping(f.chain, f.points, f.images, c.cfg), c.cfg.residual_tol, paper);
  o.report.add("symplectic", symplectic(f.chain, 2, c.cfg, c.in.seed), c.cfg.jac_tol, paper);
  return o;
}

Outcome run_tame_c4(Ctx& c) {
  const int K = c.get(c.in.k, "k", 4, 1, 30);
  const std::vector<CxVector> A = sample_points(4, SampleSpec{K, 1.0, c.in.seed});
  const Construction t = tame_c4_projection(A, c.in.seed);
  Outcome o;
  o.chain = t.chain;
  o.report.add("mapping", mapping(t.chain, t.points, t.images, c.cfg), c.cfg.residual_tol);
  o.report.add("symplectic", symplectic(t.chain, 2, c.cfg, c.in.seed), c.cfg.jac_tol);
  return o;
}

Outcome run_product(Ctx& c) {
  const Construction p = product_chain(injection(c, 5, kMaxProductK, 20));
  Outcome o;
  o.chain = p.chain;
  o.report.add("mapping", mapping(p.chain, p.points, p.images, c.cfg), c.cfg.residual_tol);
  return o;
}

Outcome run_gizatullin(Ctx& c) {
  const int m = c.get(c.in.m, "m", 1, 0, 4);
  int cap = 1;
  while (std::pow(cap + 1, m + 1) <= kMaxExponent) ++cap;
  const Construction g = gizatullin_chain(m, injection(c, cap, cap, 60));
  Outcome o;
  o.chain = g.chain;
  o.report.add("mapping", mapping(g.chain, g.points, g.images, c.cfg), 1e-7);
  return o;
}

Outcome run_kr(Ctx& c) {
  const int count = c.get(c.in.points, "points", 100, 1, 100000);
  Sampler s(c.in.seed);
  KRVariety var;
  std::vector<CxVector> pts;
  if (c.in.variety) {
    try {
      var = variety_from_json(*c.in.variety);
    } catch (const Error& e) {
      throw ConfigError(std::string("--variety: ") + e.what());
    }
    c.config["variety"] = to_json(var);
    for (int i = 0; i < count; ++i) pts.push_back(kr_point_solve_y(s, var, 0.1, 2.0));
  } else {
    if (c.in.preset != "kr-cubic") throw ConfigError("--preset must be kr-cubic");
    c.config["preset"] = c.in.preset;
    var = KRVariety::kr_cubic();
    // a fifth of the points sit on the x ~ 0 branch
    for (int i = 0; i < count; ++i) {
      pts.push_back(i % 5 == 0 ? kr_cubic_point(s, 1e-8, 1e-5) : kr_cubic_point(s, 1e-8, 2.0));
    }
  }
  Outcome o;
  o.report = kr_battery(var, pts, c.in.seed);
  const FlowParams params{0, std::make_shared<const KRVariety>(var)};
  o.chain = AutoChain(var.point_dim());
  o.chain.push(FlowPrimitive(Generator::KR_V, 1.0, params));
  o.chain.push(FlowPrimitive(Generator::KR_W, 1.0, params));
  return o;
}

Outcome run_equivalence(Ctx& c) {
  const int count = c.get(c.in.points, "points", 3, 1, 8);
  if (!(c.in.eps > 0.0) || !(c.in.growth > 1.0)) throw ConfigError("need --eps > 0 and --growth > 1");
  c.config["eps"] = c.in.eps;
  c.config["growth"] = c.in.growth;
  std::vector<CxVector> A, B;
  shell_instance(count, c.in.seed, A, B);
  const EquivalenceResult r = equivalence_chain(A, B, c.in.eps, c.in.growth, 1.0, c.cfg, c.in.seed);
  Outcome o;
  o.chain = r.chain;
  o.report.add("mapping", mapping(r.chain, A, B, c.cfg), c.cfg.residual_tol);
  double ratio = 0.0, fixed = 0.0;
  json stages = json::array();
  for (std::size_t k = 0; k < r.stages.size(); ++k) {
    const StageLog& s = r.stages[k];
    ratio = std::max(ratio, s.measured_deviation / s.epsilon_target);
    stages.push_back({{"k", s.k},
                      {"epsilon_target", s.epsilon_target},
                      {"measured_deviation", s.measured_deviation},
                      {"matched_pairs", s.matched_pairs},
                      {"damping_nodes_used", s.damping_nodes_used},
                      {"box_radius", s.box_radius},
                      {"pair", r.order[k]}});
    const CxVector& b = B[static_cast<std::size_t>(r.order[k])];
    for (std::size_t j = k + 1; j < r.stage_maps.size(); ++j) {
      fixed = std::max(fixed, sup_norm(r.stage_maps[j].apply(b) - b));
    }
  }
  // measured deviation over target; at most 1 on every stage
  o.report.add("stage_deviation", ratio, 1.0);
  o.report.add("matched_fixed", fixed, 1e-9);
  o.stages = std::move(stages);
  return o;
}

Outcome run_oka(Ctx& c) {
  const int cutoff = c.get(c.in.k, "k", 30, 2, 60);
  const int count = c.get(c.in.points, "points", 25, 1, 10000);
  const PrimeMask mask = PrimeMask::up_to(cutoff);
  const OkaFields fields = OkaFields::build(mask);
  int generic = 3;
  for (const SL2Elem& m : sample_sl2(count, 2.0, c.in.seed)) generic = std::min(generic, oka_rank(m, fields));
  int on_z = 0;
  for (int k : mask.primes) {
    const double x = k;
    on_z = std::max(on_z, oka_rank(SL2Elem{1.0 - x, x, -x, 1.0 + x}, fields));
  }
  Outcome o;
  o.chain = AutoChain(4);
  // rank deficit at random points, rank on the tame set
  o.report.add("generic_rank", 3.0 - generic, 0.0);
  o.report.add("rank_on_z", on_z, 0.0);
  c.config["primes"] = mask.primes;
  return o;
}

using Runner = std::function<Outcome(Ctx&)>;

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table{
      {"seq1", [](Ctx& c) { return run_sl2(c, true); }},
      {"seq2", [](Ctx& c) { return run_sl2(c, false); }},
      {"sympl-axis", run_axis},
      {"fiber-lift", run_fiber},
      {"flatten-c4", run_flatten},
      {"tame-c4", run_tame_c4},
      {"product", run_product},
      {"gizatullin", run_gizatullin},
      {"kr-flow", run_kr},
      {"equivalence", run_equivalence},
      {"oka-rank", run_oka},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& run_commands() {
  static const std::vector<std::string> names{"seq1",       "seq2",        "sympl-axis", "fiber-lift",
                                              "flatten-c4", "tame-c4",     "product",    "gizatullin",
                                              "kr-flow",    "equivalence", "oka-rank"};
  return names;
}

ToleranceConfig tolerance_from_env() {
  ToleranceConfig cfg;
  if (const char* env = std::getenv("TAMEFORGE_TOL")) {
    try {
      std::size_t used = 0;
      cfg.residual_tol = std::stod(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("TAMEFORGE_TOL: cannot parse \"") + env + "\"");
    }
  }
  return cfg;
}

RunResult run(const RunConfig& config, const ToleranceConfig& base) {
  const auto it = runners().find(config.command);
  if (it == runners().end()) throw ConfigError("unknown command \"" + config.command + "\"");
  Ctx ctx{config, base, json::object()};
  if (config.tol) ctx.cfg.residual_tol = *config.tol;
  try {
    ctx.cfg.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  ctx.config["command"] = config.command;

  json report;
  report["construction"] = config.command;
  report["seed"] = config.seed;
  report["version"] = kVersion;
  RunResult out;
  try {
    Outcome o = it->second(ctx);
    o.report.construction_name = config.command;
    o.report.sample_seed = config.seed;
    o.report.config = ctx.cfg;
    report["checks"] = to_json(o.report).at("checks");
    report["chain"] = to_json(o.chain);
    if (o.stages) report["stages"] = *o.stages;
    out.exit_code = o.report.ok() ? 0 : 1;
  } catch (const Error& e) {
    report["checks"] = json::array();
    report["chain"] = nullptr;
    report["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    out.exit_code = 1;
  }
  ctx.config["tolerances"] = to_json(ctx.cfg);
  report["config"] = ctx.config;
  out.report = std::move(report);
  return out;
}

}  // namespace tameforge
