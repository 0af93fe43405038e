#include "ruusc/runner.hpp"

#include "ruusc/algebra.hpp"
#include "ruusc/catalog.hpp"
#include "ruusc/envelope.hpp"
#include "ruusc/modulus.hpp"
#include "ruusc/radial.hpp"
#include "ruusc/relaxation.hpp"
#include "ruusc/report_io.hpp"
#include "ruusc/starshape.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ruusc {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

struct Ctx {
  json spec;
  RunOptions options;
  std::string prefix;
  RunOutcome* outcome = nullptr;

  std::uint64_t seed() const {
    if (options.seed_override) return *options.seed_override;
    return spec.value("/params/seed"_json_pointer, std::uint64_t{7});
  }

  json params() const { return spec.value("params", json::object()); }

  double param_or(const char* key, double dflt) const {
    return params().value(key, dflt);
  }

  int iparam_or(const char* key, int dflt) const { return params().value(key, dflt); }

  void write(const std::string& suffix, const std::string& content) const {
    const std::string path =
        (std::filesystem::path(options.out_dir) / (prefix + suffix)).string();
    write_text_file(path, content);
    if (outcome) outcome->files_written.push_back(path);
  }
};

std::vector<double> to_doubles(const json& arr) {
  std::vector<double> v;
  for (const auto& x : arr) v.push_back(x.get<double>());
  return v;
}

FunctionOracle function_from(const json& spec, const char* key) {
  if (!spec.contains(key)) throw SpecError(std::string("problem spec: missing field '") + key + "'");
  const json& f = spec.at(key);
  if (!f.contains("name")) throw SpecError(std::string("problem spec: '") + key + "' needs a name");
  return make_catalog_function(f.at("name").get<std::string>(),
                               to_doubles(f.value("params", json::array())));
}

Region region_from(const json& spec, const char* key = "region") {
  if (!spec.contains(key)) throw SpecError(std::string("problem spec: missing field '") + key + "'");
  const json& r = spec.at(key);
  if (!r.contains("name")) throw SpecError(std::string("problem spec: '") + key + "' needs a name");
  return make_catalog_region(r.at("name").get<std::string>(),
                             to_doubles(r.value("params", json::array())));
}

Integrand integrand_from(const json& spec) {
  if (!spec.contains("integrand")) throw SpecError("problem spec: missing field 'integrand'");
  const json& l = spec.at("integrand");
  const std::string name = l.value("name", "");
  const int rows = l.value("rows", 2);
  const int cols = l.value("cols", 2);
  if (name == "frobenius_sq") return frobenius_squared(rows, cols);
  if (name == "frobenius_cubed") return frobenius_cubed_misdeclared(rows, cols);
  if (name == "shifted_well") return shifted_well(rows, cols);
  if (name == "neg_frobenius_sq") return negated_frobenius_squared(rows, cols);
  throw SpecError("unknown integrand '" + name + "'");
}

ConstraintSet constraint_from(const json& spec) {
  if (!spec.contains("constraint")) throw SpecError("problem spec: missing field 'constraint'");
  const json& c = spec.at("constraint");
  const std::string name = c.value("name", "");
  const std::vector<double> p = to_doubles(c.value("params", json::array()));
  if (name == "s_epsilon") return s_epsilon_set(p.at(0));
  if (name == "matrix_ball")
    return matrix_ball_set(static_cast<int>(p.at(0)), static_cast<int>(p.at(1)), p.at(2));
  if (name == "interval") return interval_set(p.at(0), p.at(1));
  throw SpecError("unknown constraint '" + name + "'");
}

Mesh mesh_from(const json& spec) {
  Mesh m;
  if (spec.contains("mesh")) {
    const json& j = spec.at("mesh");
    m.d = j.value("d", 2);
    m.cells = j.value("cells", 8);
    m.components = j.value("components", m.d);
  }
  if (m.d < 1 || m.d > 2 || m.cells < 1) throw SpecError("problem spec: bad mesh");
  return m;
}

VerifyParams verify_params_from(const Ctx& ctx) {
  VerifyParams p;
  p.seed = ctx.seed();
  p.threads = ctx.options.threads;
  p.resolution_scale = ctx.options.resolution_scale;
  p.boundary_count = ctx.iparam_or("boundary_count", 50);
  p.domain_count = ctx.iparam_or("domain_count", 400);
  p.star_samples = ctx.iparam_or("star_samples", 1000);
  p.cert_samples = ctx.iparam_or("cert_samples", 1000);
  p.tolerance = ctx.param_or("tolerance", 1e-3);
  p.lsc_tol = ctx.param_or("lsc_tol", 1e-3);
  p.radial.osc_tol = ctx.param_or("osc_tol", 1e-6);
  const int k_max = ctx.iparam_or("t_k_max", 40);
  p.radial.t_schedule = geometric_t_schedule(1, k_max);
  p.certify.eps_cert = ctx.param_or("eps_cert", 1e-6);
  p.envelope.samples_per_shell = ctx.iparam_or("shell_samples", 64);
  p.envelope.levels = ctx.iparam_or("shell_levels", 16);
  p.envelope.seed = mix_seed(p.seed, "envelope");
  p.enforce_hypotheses = ctx.params().value("enforce_hypotheses", true);
  if (ctx.params().contains("a_candidates"))
    p.a_candidates = to_doubles(ctx.params()["a_candidates"]);
  return p;
}

CertifyParams certify_params_from(const Ctx& ctx) {
  CertifyParams cp;
  cp.eps_cert = ctx.param_or("eps_cert", 1e-6);
  cp.modulus.threads = ctx.options.threads;
  return cp;
}

void finish(RunOutcome& out, bool passed, double max_gap, const std::string& message = "") {
  out.exit_code = passed ? kPass : kFail;
  out.verdict = passed ? "pass" : "fail";
  out.max_gap = max_gap;
  out.message = message;
}

void write_theorem_report(const Ctx& ctx, const TheoremReport& rep) {
  ctx.write("_report.json", to_json(rep));
  ctx.write("_report.csv", to_csv(rep));
}

// --- statement handlers -----------------------------------------------------

void run_star_shape(Ctx& ctx) {
  const Region d = region_from(ctx.spec);
  const int samples = ctx.iparam_or("star_samples", 1000);
  SampleSet closure = closure_region(d).sample_inside(samples, mix_seed(ctx.seed(), "star"));
  StarShapeReport rep = check_strong_star_shape(d, geometric_t_schedule(1, ctx.iparam_or("t_k_max", 20)),
                                                closure, ctx.options.threads);
  ctx.write("_violations.csv", to_csv(rep));
  finish(*ctx.outcome, rep.pass, static_cast<double>(rep.violations.size()),
         rep.pass ? "no violation found" : "star-shape violations found");
}

void run_convex_bound(Ctx& ctx) {
  const FunctionOracle f = function_from(ctx.spec, "function");
  const Region d = region_from(ctx.spec);
  SampleSet samples = d.sample_inside(ctx.iparam_or("domain_count", 1000), mix_seed(ctx.seed(), "cb"));
  const auto ts = geometric_t_schedule(1, ctx.iparam_or("t_k_max", 20));
  ConvexBoundCheck check = convex_bound_check(f, d, ts, samples, ctx.options.threads);
  json j;
  j["ok"] = check.ok;
  j["a"] = check.a;
  if (check.witness) {
    j["witness_t"] = check.witness->t;
    j["witness_ratio"] = check.witness->ratio;
  }
  ctx.write("_report.json", j.dump(2) + "\n");
  finish(*ctx.outcome, check.ok, check.witness ? check.witness->ratio : 0.0);
}

void run_certify(Ctx& ctx) {
  const FunctionOracle f = function_from(ctx.spec, "function");
  const Region d = region_from(ctx.spec);
  CertifyParams cp = certify_params_from(ctx);
  SampleSet samples = d.sample_inside(ctx.iparam_or("cert_samples", 1000), mix_seed(ctx.seed(), "cert"));
  const std::vector<double> cands = ctx.params().contains("a_candidates")
                                        ? to_doubles(ctx.params()["a_candidates"])
                                        : default_a_candidates(f, d.center);
  RuUscCertificate cert = certify_ru_usc(f, d, cands, samples, cp);
  ctx.write("_certificate.json", to_json(cert));
  // Also emit the modulus profile at the chosen a for inspection.
  ModulusProfile prof = modulus_profile(f, d, cert.a_used > 0 ? cert.a_used : cands.front(),
                                        geometric_t_schedule(1, 40), samples, cp.modulus);
  ctx.write("_profile.csv", to_csv(prof));
  switch (cert.verdict) {
    case RuUscCertificate::Verdict::Supported:
      finish(*ctx.outcome, true, cert.limsup_estimate.as_double(), "supported with a = " + std::to_string(cert.a_used));
      break;
    case RuUscCertificate::Verdict::Refuted:
      finish(*ctx.outcome, false, cert.limsup_estimate.as_double(), "refuted with reproducible witness");
      break;
    default:
      ctx.outcome->exit_code = kRefused;
      ctx.outcome->verdict = "refused";
      ctx.outcome->message = "certificate inconclusive at this sampling";
      break;
  }
}

void run_lsc_in_region(Ctx& ctx) {
  const FunctionOracle f = function_from(ctx.spec, "function");
  const Region d = region_from(ctx.spec);
  VerifyParams p = verify_params_from(ctx);
  SampleSet inside = d.sample_inside(p.domain_count, mix_seed(p.seed, "lsc"));
  EnvelopeParams ep = p.envelope;
  ep.threads = p.threads;
  LscReport rep = check_lsc_in_region(f, d, inside, p.lsc_tol, ep);
  json j;
  j["pass"] = rep.pass;
  j["tested"] = rep.tested;
  j["failures"] = rep.failures.size();
  j["inconclusive"] = rep.inconclusive_points;
  ctx.write("_report.json", j.dump(2) + "\n");
  finish(*ctx.outcome, rep.pass, static_cast<double>(rep.failures.size()));
}

void run_limit_exists(Ctx& ctx) {
  const FunctionOracle f = function_from(ctx.spec, "function");
  const Region d = region_from(ctx.spec);
  TheoremReport rep = verify_limit_exists_on_closure(f, d, verify_params_from(ctx));
  write_theorem_report(ctx, rep);
  finish(*ctx.outcome, rep.passed, rep.max_gap());
}

void run_radial_representation(Ctx& ctx, bool sequential) {
  const FunctionOracle f = function_from(ctx.spec, "function");
  const Region d = region_from(ctx.spec);
  TheoremReport rep = verify_radial_representation(f, d, verify_params_from(ctx));
  if (sequential) {
    rep.statement = "radial_representation_seq";
    rep.notes.push_back(
        "sequential form: on metric spaces the sequential envelope equals the "
        "topological one, so the same estimator serves both statements");
  }
  write_theorem_report(ctx, rep);
  finish(*ctx.outcome, rep.passed, rep.max_gap());
}

void run_envelope_representation(Ctx& ctx, bool sequential) {
  const FunctionOracle f = function_from(ctx.spec, "function");
  const FunctionOracle g = function_from(ctx.spec, "function_g");
  const Region domf = region_from(ctx.spec);
  TheoremReport rep = verify_envelope_representation(f, g, domf, verify_params_from(ctx));
  if (sequential) {
    rep.statement = "envelope_representation_seq";
    rep.notes.push_back(
        "sequential form: on metric spaces the sequential envelope equals the "
        "topological one, so the same estimator serves both statements");
  }
  write_theorem_report(ctx, rep);
  finish(*ctx.outcome, rep.passed, rep.max_gap());
}

void run_convex_representation(Ctx& ctx) {
  const FunctionOracle f = function_from(ctx.spec, "function");
  const Region domf = region_from(ctx.spec);
  TheoremReport rep = verify_convex_representation(f, domf, ctx.iparam_or("interior_base_count", 3),
                                                   verify_params_from(ctx));
  write_theorem_report(ctx, rep);
  finish(*ctx.outcome, rep.passed, rep.max_gap());
}

void run_inf_equality(Ctx& ctx) {
  const FunctionOracle f = function_from(ctx.spec, "function");
  const Region d = region_from(ctx.spec);
  const double tol = ctx.param_or("tolerance", 1e-6);
  InfEqualityResult res = check_inf_equality(f, d, tol, verify_params_from(ctx));
  json j;
  j["inf_inside"] = res.inf_inside;
  j["inf_closure"] = res.inf_closure;
  j["gap"] = res.gap;
  j["verdict"] = res.pass ? "pass" : "fail";
  ctx.write("_report.json", j.dump(2) + "\n");
  finish(*ctx.outcome, res.pass, res.gap);
}

CertifiedFunction certified_input(Ctx& ctx, const char* fn_key, const Region& d) {
  const json& f = ctx.spec.at(fn_key);
  return certified_base(f.at("name").get<std::string>(),
                        to_doubles(f.value("params", json::array())), d,
                        ctx.iparam_or("cert_samples", 600), mix_seed(ctx.seed(), fn_key),
                        certify_params_from(ctx));
}

void recertify_and_finish(Ctx& ctx, const CertifiedFunction& result, const Region& d) {
  // Reconstruct from provenance and recertify from scratch: propagation is a
  // hint, certification is the ground truth.
  FunctionOracle rebuilt = reconstruct(result.provenance);
  RuUscCertificate cert = certify_ru_usc(rebuilt, d, ctx.iparam_or("cert_samples", 600),
                                         mix_seed(ctx.seed(), "recert"), certify_params_from(ctx));
  ctx.write("_recertificate.json", to_json(cert));
  json j;
  j["operation"] = result.provenance.op;
  j["recertified"] = cert.supported();
  j["propagated_a"] = result.certificate ? result.certificate->a_used : 0.0;
  ctx.write("_report.json", j.dump(2) + "\n");
  finish(*ctx.outcome, cert.supported(), cert.limsup_estimate.as_double(),
         "recertification " + cert.verdict_str());
}

void run_op_translate(Ctx& ctx) {
  const Region d = region_from(ctx.spec);
  CertifiedFunction f = certified_input(ctx, "function", d);
  CertifiedFunction out = translate(f, ctx.param_or("c_shift", 0.0));
  recertify_and_finish(ctx, out, d);
}

void run_op_scale(Ctx& ctx) {
  const Region d = region_from(ctx.spec);
  CertifiedFunction f = certified_input(ctx, "function", d);
  CertifiedFunction out = scale(f, ctx.param_or("lambda", 1.0));
  recertify_and_finish(ctx, out, d);
}

void run_op_add(Ctx& ctx) {
  const Region d = region_from(ctx.spec);
  CertifiedFunction f = certified_input(ctx, "function", d);
  CertifiedFunction g = certified_input(ctx, "function_g", d);
  AlgebraParams ap;
  ap.seed = ctx.seed();
  CertifiedFunction out = add(f, g, d, ap);
  recertify_and_finish(ctx, out, d);
}

void run_op_multiply(Ctx& ctx) {
  const Region d = region_from(ctx.spec);
  CertifiedFunction f = certified_input(ctx, "function", d);
  CertifiedFunction g = certified_input(ctx, "function_g", d);
  AlgebraParams ap;
  ap.seed = ctx.seed();
  CertifiedFunction out = multiply(f, g, d, ap);
  recertify_and_finish(ctx, out, d);
}

void run_holder_check(Ctx& ctx) {
  const FunctionOracle g = function_from(ctx.spec, "function");
  const Region d = region_from(ctx.spec);
  const double alpha = ctx.param_or("alpha", 0.0);
  const double beta = ctx.param_or("beta", 0.0);
  const double c = ctx.param_or("c", 1.0);
  const double c_prime = ctx.param_or("c_prime", 0.0);
  const double k_factor = ctx.param_or("delta_factor", 1.0);
  SampleSet samples = d.sample_inside(ctx.iparam_or("domain_count", 1000), mix_seed(ctx.seed(), "rh"));
  HolderCheck check = check_holder_perturbation(
      g, alpha, beta, c, c_prime, [k_factor](double t) { return k_factor * (1.0 - t); }, d,
      geometric_t_schedule(1, 20), samples);
  json j;
  j["ok"] = check.ok;
  j["a_derived"] = check.a_derived;
  j["violated"] = check.which;
  ctx.write("_report.json", j.dump(2) + "\n");
  finish(*ctx.outcome, check.ok, 0.0, check.ok ? "both growth conditions hold" : ("violated " + check.which));
}

Box box_from_params(const Ctx& ctx) {
  const json p = ctx.params();
  if (!p.contains("box")) throw SpecError("problem spec: missing params.box");
  Box b;
  const auto lo = to_doubles(p["box"]["lo"]);
  const auto hi = to_doubles(p["box"]["hi"]);
  b.lo = Vec(static_cast<Eigen::Index>(lo.size()));
  b.hi = Vec(static_cast<Eigen::Index>(hi.size()));
  for (std::size_t i = 0; i < lo.size(); ++i) b.lo[static_cast<Eigen::Index>(i)] = lo[i];
  for (std::size_t i = 0; i < hi.size(); ++i) b.hi[static_cast<Eigen::Index>(i)] = hi[i];
  if (!b.valid()) throw SpecError("problem spec: empty grid box");
  return b;
}

void run_inf_convolution(Ctx& ctx) {
  const FunctionOracle f = function_from(ctx.spec, "function");
  const FunctionOracle g = function_from(ctx.spec, "function_g");
  const Box box = box_from_params(ctx);
  const int res = ctx.iparam_or("res", 201);
  TabulatedFunction tab = inf_convolution(f, g, box, res, ctx.options.threads);
  ctx.write("_table.csv", to_csv(tab));
  finish(*ctx.outcome, true, 0.0, "min-plus table written");
}

void run_infconv_certify(Ctx& ctx) {
  const Region df = region_from(ctx.spec, "region");
  const Region dg = region_from(ctx.spec, "region_g");
  CertifiedFunction f = certified_input(ctx, "function", df);
  CertifiedFunction g = certified_input(ctx, "function_g", dg);
  const Box box = box_from_params(ctx);
  const int res = ctx.iparam_or("res", 201);
  const std::string route_s = ctx.params().value("route", "g_bounded");
  const InfConvRoute route =
      route_s == "both_bounded_below" ? InfConvRoute::BothBoundedBelow : InfConvRoute::GBounded;
  AlgebraParams ap;
  ap.seed = ctx.seed();
  CertifiedFunction out = check_infconv_ruusc(f, g, route, box, res, ap, certify_params_from(ctx));
  ctx.write("_certificate.json", to_json(*out.certificate));
  finish(*ctx.outcome, out.supported(), out.certificate->limsup_estimate.as_double(),
         "certification " + out.certificate->verdict_str());
}

void run_s_epsilon(Ctx& ctx) {
  const double eps = ctx.param_or("eps", 1.0);
  SEpsilonReport rep =
      check_s_epsilon_properties(eps, ctx.iparam_or("closure_samples", 10000),
                                 ctx.iparam_or("rank_one_samples", 10000), ctx.seed(),
                                 ctx.options.threads);
  ctx.write("_report.json", to_json(rep));
  finish(*ctx.outcome, rep.pass,
         static_cast<double>(rep.radial_violations + rep.rank_one_violations));
}

void run_growth_lipschitz(Ctx& ctx) {
  const Integrand L = integrand_from(ctx.spec);
  GrowthCheck check = check_growth_and_lipschitz(L, ctx.iparam_or("samples", 2000),
                                                 ctx.param_or("radius", 10.0), ctx.seed());
  json j;
  j["pass"] = check.pass;
  j["c_est"] = check.c_est;
  j["C_est"] = check.C_est;
  j["C_prime_est"] = check.C_prime_est;
  j["violated"] = check.which;
  ctx.write("_report.json", j.dump(2) + "\n");
  finish(*ctx.outcome, check.pass, 0.0, check.pass ? "" : ("violated " + check.which));
}

void run_quasiconvexity(Ctx& ctx) {
  const Integrand L = integrand_from(ctx.spec);
  QuasiconvexityReport rep = check_quasiconvexity_necessary(
      L, ctx.iparam_or("xi_samples", 100), ctx.iparam_or("fields_per_xi", 10),
      ctx.iparam_or("mesh_cells", 8), ctx.seed());
  json j;
  j["checked"] = rep.checked;
  j["violations"] = rep.violations;
  j["verdict"] = rep.pass ? "no violation found" : "violation found";
  ctx.write("_report.json", j.dump(2) + "\n");
  finish(*ctx.outcome, rep.pass, static_cast<double>(rep.violations));
}

void run_energy_modulus_bound(Ctx& ctx) {
  const Integrand L = integrand_from(ctx.spec);
  const ConstraintSet S = constraint_from(ctx.spec);
  const Mesh mesh = mesh_from(ctx.spec);
  auto fields = sample_constrained_fields(S, mesh, ctx.iparam_or("field_count", 100),
                                          ctx.param_or("amplitude", 0.1), ctx.seed());
  EnergyModulusParams p;
  p.seed = ctx.seed();
  p.threads = ctx.options.threads;
  if (ctx.params().contains("t_list")) p.t_schedule = to_doubles(ctx.params()["t_list"]);
  TheoremReport rep = verify_energy_modulus_bound(L, S, fields, p);
  rep.notes.push_back(
      "closure surrogate: per-cell gradients, with the sequential weak closure "
      "replaced by closure membership of each cell gradient");
  write_theorem_report(ctx, rep);
  finish(*ctx.outcome, rep.passed, rep.max_gap());
}

void run_energy_radial_limit(Ctx& ctx) {
  const Integrand L = integrand_from(ctx.spec);
  const ConstraintSet S = constraint_from(ctx.spec);
  const Mesh mesh = mesh_from(ctx.spec);
  auto fields = sample_constrained_fields(S, mesh, ctx.iparam_or("field_count", 20),
                                          ctx.param_or("amplitude", 0.1), ctx.seed());
  const double tol = ctx.param_or("tolerance", 1e-6);
  bool all = true;
  double worst = 0.0;
  json rows = json::array();
  for (const auto& u : fields) {
    EnergyRadialCheck check = verify_radial_energy_limit(u, L, S, tol);
    all = all && check.pass;
    worst = std::max(worst, check.extrapolation_gap);
    json r;
    r["J"] = check.energy_at_field;
    r["extrapolated"] = check.extrapolated;
    r["gap"] = check.extrapolation_gap;
    r["geometric_decay"] = check.geometric_decay;
    rows.push_back(std::move(r));
  }
  json j;
  j["fields"] = rows;
  j["verdict"] = all ? "pass" : "fail";
  j["note"] =
      "closure surrogate: per-cell gradients, with the sequential weak closure "
      "replaced by closure membership of each cell gradient";
  ctx.write("_report.json", j.dump(2) + "\n");
  finish(*ctx.outcome, all, worst);
}

void dispatch(Ctx& ctx) {
  const std::string st = ctx.spec.value("statement", "");
  ctx.outcome->statement = st;
  if (st == "star_shape") return run_star_shape(ctx);
  if (st == "convex_bound") return run_convex_bound(ctx);
  if (st == "certify") return run_certify(ctx);
  if (st == "lsc_in_region") return run_lsc_in_region(ctx);
  if (st == "limit_exists") return run_limit_exists(ctx);
  if (st == "radial_representation") return run_radial_representation(ctx, false);
  if (st == "radial_representation_seq") return run_radial_representation(ctx, true);
  if (st == "envelope_representation") return run_envelope_representation(ctx, false);
  if (st == "envelope_representation_seq") return run_envelope_representation(ctx, true);
  if (st == "convex_representation") return run_convex_representation(ctx);
  if (st == "inf_equality") return run_inf_equality(ctx);
  if (st == "op_translate") return run_op_translate(ctx);
  if (st == "op_scale") return run_op_scale(ctx);
  if (st == "op_add") return run_op_add(ctx);
  if (st == "op_multiply") return run_op_multiply(ctx);
  if (st == "holder_check") return run_holder_check(ctx);
  if (st == "inf_convolution") return run_inf_convolution(ctx);
  if (st == "infconv_certify") return run_infconv_certify(ctx);
  if (st == "s_epsilon") return run_s_epsilon(ctx);
  if (st == "growth_lipschitz") return run_growth_lipschitz(ctx);
  if (st == "quasiconvexity") return run_quasiconvexity(ctx);
  if (st == "energy_modulus_bound") return run_energy_modulus_bound(ctx);
  if (st == "energy_radial_limit") return run_energy_radial_limit(ctx);
  throw SpecError("unknown statement '" + st + "'");
}

}  // namespace

RunOutcome run_problem_text(const std::string& json_text, const RunOptions& options) {
  RunOutcome outcome;
  const auto start = std::chrono::steady_clock::now();
  try {
    json spec = json::parse(json_text);
    if (spec.value("schema_version", kSchemaVersion) != kSchemaVersion)
      throw SpecError("unsupported schema_version");
    Ctx ctx;
    ctx.spec = std::move(spec);
    ctx.options = options;
    ctx.prefix = ctx.spec.value("out_prefix", std::string("report"));
    ctx.outcome = &outcome;
    dispatch(ctx);
  } catch (const HypothesisRefused& e) {
    outcome.exit_code = kRefused;
    outcome.verdict = "refused";
    outcome.message = e.what();
  } catch (const SpecError& e) {
    outcome.exit_code = kSpecError;
    outcome.verdict = "spec-error";
    outcome.message = e.what();
  } catch (const json::exception& e) {
    outcome.exit_code = kSpecError;
    outcome.verdict = "spec-error";
    outcome.message = e.what();
  } catch (const std::exception& e) {
    outcome.exit_code = kSpecError;
    outcome.verdict = "spec-error";
    outcome.message = e.what();
  }
  outcome.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return outcome;
}

RunOutcome run_problem_file(const std::string& path, const RunOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    RunOutcome out;
    out.exit_code = kSpecError;
    out.verdict = "spec-error";
    out.message = "cannot read " + path;
    return out;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return run_problem_text(ss.str(), options);
}

int run_suite_file(const std::string& path, const RunOptions& options,
                   std::vector<RunOutcome>* outcomes) {
  json suite;
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) return kSpecError;
    try {
      suite = json::parse(in);
    } catch (const json::exception&) {
      return kSpecError;
    }
  }
  if (!suite.contains("suite") || !suite["suite"].is_array() || suite["suite"].empty())
    return kSpecError;

  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  int worst = kPass;
  std::ostringstream summary;
  summary << "statement,prefix,verdict,max_gap,runtime_ms\n";
  for (const auto& entry : suite["suite"]) {
    RunOutcome out;
    std::string prefix;
    if (entry.is_string()) {
      const std::string member = (base / entry.get<std::string>()).string();
      out = run_problem_file(member, options);
      prefix = std::filesystem::path(entry.get<std::string>()).stem().string();
    } else {
      out = run_problem_text(entry.dump(), options);
      prefix = entry.value("out_prefix", std::string("report"));
    }
    worst = std::max(worst, out.exit_code);
    summary << out.statement << "," << prefix << "," << out.verdict << ","
            << format_double(out.max_gap) << "," << format_double(out.runtime_ms) << "\n";
    if (outcomes) outcomes->push_back(std::move(out));
  }
  write_text_file((std::filesystem::path(options.out_dir) / "summary.csv").string(), summary.str());
  return worst;
}

}  // namespace ruusc
