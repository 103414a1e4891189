#include "lk/cli_runner.hpp"

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lk/algebra.hpp"
#include "lk/generators.hpp"
#include "lk/io.hpp"
#include "lk/rk4.hpp"

namespace lk::cli {

namespace {

struct ValidationError {
  std::vector<std::string> details;
};

cxd json_complex(const nlohmann::json& v, const std::string& what,
                 std::vector<std::string>& errors) {
  if (v.is_number()) return cxd(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return cxd(v[0].get<double>(), v[1].get<double>());
  errors.push_back(what + ": expected number or [re, im]");
  return cxd(0.0, 0.0);
}

/// Field-by-field config reader; collects diagnostics instead of stopping at
/// the first problem and rejects keys no command declares.
class Schema {
 public:
  explicit Schema(const nlohmann::json& cfg) : cfg_(cfg) {
    if (!cfg.is_object()) errors_.push_back("config must be a JSON object");
  }

  const nlohmann::json* field(const std::string& key, bool required) {
    allowed_.insert(key);
    if (!cfg_.is_object()) return nullptr;
    auto it = cfg_.find(key);
    if (it == cfg_.end()) {
      if (required) errors_.push_back("missing required field \"" + key + "\"");
      return nullptr;
    }
    return &*it;
  }

  int integer(const std::string& key, bool required, int def = 0) {
    const auto* v = field(key, required);
    if (!v) return def;
    if (!v->is_number_integer()) {
      errors_.push_back("field \"" + key + "\" must be an integer");
      return def;
    }
    return v->get<int>();
  }

  double number(const std::string& key, bool required, double def = 0.0) {
    const auto* v = field(key, required);
    if (!v) return def;
    if (!v->is_number()) {
      errors_.push_back("field \"" + key + "\" must be a number");
      return def;
    }
    return v->get<double>();
  }

  uint64_t seed(const std::string& key, bool required, uint64_t def = 0) {
    const auto* v = field(key, required);
    if (!v) return def;
    if (!v->is_number_unsigned() && !v->is_number_integer()) {
      errors_.push_back("field \"" + key + "\" must be an integer seed");
      return def;
    }
    return v->get<uint64_t>();
  }

  cxd complex_value(const std::string& key, bool required, cxd def = cxd(0.0, 0.0)) {
    const auto* v = field(key, required);
    if (!v) return def;
    return json_complex(*v, "field \"" + key + "\"", errors_);
  }

  std::vector<cxd> complex_vector(const std::string& key, bool required) {
    const auto* v = field(key, required);
    std::vector<cxd> out;
    if (!v) return out;
    if (!v->is_array()) {
      errors_.push_back("field \"" + key + "\" must be an array");
      return out;
    }
    for (const auto& item : *v)
      out.push_back(json_complex(item, "field \"" + key + "\"", errors_));
    return out;
  }

  void require(bool cond, const std::string& message) {
    if (!cond) errors_.push_back(message);
  }

  void finish() {
    if (!cfg_.is_object()) return;
    for (auto it = cfg_.begin(); it != cfg_.end(); ++it)
      if (!allowed_.contains(it.key()))
        errors_.push_back("unknown field \"" + it.key() + "\"");
    if (!errors_.empty()) throw ValidationError{errors_};
  }

  std::vector<std::string>& errors() { return errors_; }

 private:
  const nlohmann::json& cfg_;
  std::set<std::string> allowed_;
  std::vector<std::string> errors_;
};

std::string artifact_base(const std::string& command, const nlohmann::json& config) {
  nlohmann::json effective = config.is_null() ? nlohmann::json::object() : config;
  effective["command"] = command;
  return command + "-" + hash_hex(fnv1a64(effective.dump()));
}

std::vector<cxd> momenta_preset(const std::string& name, int n,
                                std::vector<std::string>& errors) {
  std::vector<cxd> psibar(static_cast<size_t>(n), cxd(0.0, 0.0));
  if (name == "none") return {};
  if (name == "e1")
    psibar[0] = 1.0;
  else if (name == "en")
    psibar.back() = 1.0;
  else if (name == "ones")
    std::fill(psibar.begin(), psibar.end(), cxd(1.0, 0.0));
  else
    errors.push_back("unknown momenta preset \"" + name + "\" (want none|e1|en|ones)");
  return psibar;
}

std::vector<cxd> vector_or_preset(Schema& schema, const std::string& key, int n, bool required,
                                  const std::string& default_preset) {
  const auto* v = schema.field(key, required);
  if (!v) {
    if (default_preset.empty()) return {};
    return momenta_preset(default_preset, n, schema.errors());
  }
  if (v->is_string()) return momenta_preset(v->get<std::string>(), n, schema.errors());
  if (v->is_array()) {
    std::vector<cxd> out;
    for (const auto& item : *v)
      out.push_back(json_complex(item, "field \"" + key + "\"", schema.errors()));
    if (static_cast<int>(out.size()) != n)
      schema.errors().push_back("field \"" + key + "\" must have length n");
    return out;
  }
  schema.errors().push_back("field \"" + key + "\" must be a preset name or an array");
  return {};
}

DrivingFunction driving_from_schema(Schema& schema, std::vector<std::string>& errors) {
  const auto* spec = schema.field("driving", true);
  if (!spec) throw ValidationError{errors};
  try {
    return DrivingFunction::from_json(*spec);
  } catch (const std::invalid_argument& e) {
    errors.push_back(e.what());
    throw ValidationError{errors};
  }
}

void check_caratheodory(const DrivingFunction& p, double T, std::vector<std::string>& errors) {
  if (p.alternate()) return;
  std::vector<double> probes = p.breakpoints();
  probes.push_back(0.0);
  probes.push_back(T);
  for (double t : probes) {
    const auto res = caratheodory_check(p, std::min(t, T), 24);
    if (!res.ok) {
      std::ostringstream os;
      os << "driving function leaves the admissible class at t = " << std::min(t, T)
         << " (min Re p = " << res.margin << "); set \"alternate\": true to allow it";
      errors.push_back(os.str());
      return;
    }
  }
}

// ---------------------------------------------------------------- commands

int cmd_evolve(const nlohmann::json& config, const RunOptions& opts, std::ostream& out) {
  Schema schema(config);
  const int n = schema.integer("n", true);
  const double dt = schema.number("dt", true);
  const double T = schema.number("T", true);
  schema.require(n >= 1, "field \"n\" must be >= 1");
  schema.require(dt > 0, "field \"dt\" must be positive");
  schema.require(T > 0, "field \"T\" must be positive");
  auto driver = driving_from_schema(schema, schema.errors());
  auto psibar = vector_or_preset(schema, "psibar0", n, false, "none");
  const double blowup = schema.number("blowup", false, 1e6);
  const auto* mode = schema.field("mode", false);
  const std::string mode_name = mode && mode->is_string() ? mode->get<std::string>() : "ode";
  const auto* norm = schema.field("normalization", false);
  const std::string norm_name = norm && norm->is_string() ? norm->get<std::string>() : "divide";
  const cxd a0 = schema.complex_value("a0", false, cxd(1.0, 0.0));
  schema.require(mode_name == "ode" || mode_name == "alternate",
                 "field \"mode\" must be \"ode\" or \"alternate\"");
  schema.require(norm_name == "divide" || norm_name == "rescale",
                 "field \"normalization\" must be \"divide\" or \"rescale\"");
  if (mode_name == "ode") check_caratheodory(driver, T, schema.errors());
  schema.finish();

  EvolutionState init;
  init.c.assign(static_cast<size_t>(n), cxd(0.0, 0.0));
  init.psibar = psibar;
  IntegrateOptions iopts{blowup};

  Trajectory traj;
  if (mode_name == "alternate") {
    init.a0 = a0;
    traj = alternate_evolve(init, driver, T, dt,
                            norm_name == "divide" ? Normalization::divide
                                                  : Normalization::rescale,
                            iopts);
  } else {
    traj = integrate(init, driver, T, dt, iopts);
  }

  const std::string base = artifact_base("evolve", config);
  write_text_file(opts.out_dir + "/" + base + ".csv", trajectory_csv(traj));

  double cmax = 0.0;
  for (const cxd& v : traj.samples.back().c) cmax = std::max(cmax, std::abs(v));
  if (!opts.quiet)
    out << "evolve " << base << ": samples=" << traj.samples.size() << " max|c(T)|=" << fmt17(cmax)
        << "\n";
  return kExitOk;
}

int cmd_conserve(const nlohmann::json& config, const RunOptions& opts, std::ostream& out) {
  Schema schema(config);
  const int n = schema.integer("n", true);
  const double dt = schema.number("dt", true);
  const double T = schema.number("T", true);
  schema.require(n >= 1, "field \"n\" must be >= 1");
  schema.require(dt > 0, "field \"dt\" must be positive");
  schema.require(T > 0, "field \"T\" must be positive");
  auto driver = driving_from_schema(schema, schema.errors());
  auto psibar = vector_or_preset(schema, "psibar0", n, false, "e1");
  const double blowup = schema.number("blowup", false, 1e6);
  if (psibar.empty()) schema.errors().push_back("conserve requires momenta (psibar0 != none)");
  check_caratheodory(driver, T, schema.errors());
  schema.finish();

  EvolutionState init;
  init.c.assign(static_cast<size_t>(n), cxd(0.0, 0.0));
  init.psibar = psibar;
  const auto traj = integrate(init, driver, T, dt, IntegrateOptions{blowup});
  const auto report = conserved_virasoro(traj);

  const std::string base = artifact_base("conserve", config);
  write_text_file(opts.out_dir + "/" + base + ".json", conserved_report_json(report).dump(2) + "\n");

  double max_rel = 0.0;
  for (const auto& e : report.entries)
    if (e.k >= 1) max_rel = std::max(max_rel, e.max_rel_drift);
  if (!opts.quiet)
    out << "conserve " << base << ": max_rel_drift(L_k)=" << fmt17(max_rel) << "\n";
  return kExitOk;
}

int cmd_build_lneg(const nlohmann::json& config, const RunOptions& opts, std::ostream& out) {
  Schema schema(config);
  const int n = schema.integer("n", true);
  const int depth = schema.integer("depth", true);
  schema.require(n >= 3, "field \"n\" must be >= 3");
  schema.require(depth >= 0 && depth <= n - 1, "field \"depth\" must satisfy 0 <= depth <= n-1");
  schema.finish();

  const auto gens = build_L_nonpositive(n, depth);
  nlohmann::json list = nlohmann::json::array();
  for (int m = 0; m <= gens.depth(); ++m)
    list.push_back({{"index", -m},
                    {"trusted_slots", gens.gen(m).trusted},
                    {"text", gens.gen(m).str()}});
  nlohmann::json doc = {{"n", n}, {"depth", depth}, {"generators", std::move(list)}};

  const std::string base = artifact_base("build-lneg", config);
  write_text_file(opts.out_dir + "/" + base + ".json", doc.dump(2) + "\n");
  if (!opts.quiet)
    out << "build-lneg " << base << ": built L_0..L_-" << depth << " at n=" << n << "\n";
  return kExitOk;
}

int cmd_witt_check(const nlohmann::json& config, const RunOptions& opts, std::ostream& out) {
  Schema schema(config);
  const int n = schema.integer("n", true);
  schema.require(n >= 2, "field \"n\" must be >= 2");
  schema.finish();

  nlohmann::json pairs = nlohmann::json::array();
  size_t max_residual = 0;
  for (int m = 1; m < n; ++m) {
    for (int k = m + 1; m + k <= n; ++k) {
      auto br = lie_bracket(kirillov_field(m, n), kirillov_field(k, n));
      auto expect = kirillov_field(m + k, n);
      size_t residual_terms = 0;
      for (int j = 1; j <= n; ++j) {
        auto diff = br.component(j) - expect.component(j).scaled(RationalComplex(k - m));
        residual_terms += diff.term_count();
      }
      max_residual = std::max(max_residual, residual_terms);
      pairs.push_back({{"m", m}, {"k", k}, {"residual_terms", residual_terms}});
    }
  }
  nlohmann::json doc = {{"n", n},
                        {"pairs", std::move(pairs)},
                        {"max_residual_terms", max_residual},
                        {"identity_holds", max_residual == 0}};

  const std::string base = artifact_base("witt-check", config);
  write_text_file(opts.out_dir + "/" + base + ".json", doc.dump(2) + "\n");
  if (!opts.quiet)
    out << "witt-check " << base << ": max_residual_terms=" << max_residual << "\n";
  return kExitOk;
}

int cmd_duality_check(const nlohmann::json& config, const RunOptions& opts, std::ostream& out) {
  Schema schema(config);
  const int n = schema.integer("n", true);
  schema.require(n >= 1, "field \"n\" must be >= 1");
  schema.finish();

  const auto w = omega_forms(n);
  const auto wc = omega_forms_closed(n);
  bool constructions_match = true;
  for (int k = 1; k <= n; ++k)
    if (!(w[static_cast<size_t>(k - 1)] == wc[static_cast<size_t>(k - 1)]))
      constructions_match = false;

  nlohmann::json mismatches = nlohmann::json::array();
  for (int k = 1; k <= n; ++k) {
    for (int m = 1; m <= n; ++m) {
      const auto val = pair(w[static_cast<size_t>(k - 1)], kirillov_field(m, n));
      const bool ok = (k == m) ? (val == CoeffPolynomial(1)) : val.is_zero();
      if (!ok)
        mismatches.push_back({{"k", k}, {"m", m}, {"value", val.str()}});
    }
  }
  nlohmann::json doc = {{"n", n},
                        {"identity", mismatches.empty()},
                        {"constructions_match", constructions_match},
                        {"mismatches", std::move(mismatches)}};

  const std::string base = artifact_base("duality-check", config);
  write_text_file(opts.out_dir + "/" + base + ".json", doc.dump(2) + "\n");
  if (!opts.quiet)
    out << "duality-check " << base << ": identity=" << (mismatches.empty() ? "yes" : "NO")
        << " constructions_match=" << (constructions_match ? "yes" : "NO") << "\n";
  return kExitOk;
}

std::vector<cxd> random_unit_vector(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cxd> v(static_cast<size_t>(n));
  for (auto& x : v) x = cxd(u(rng), u(rng));
  return v;
}

int cmd_geodesic(const nlohmann::json& config, const RunOptions& opts, std::ostream& out) {
  Schema schema(config);
  const int n = schema.integer("n", true);
  const double dt = schema.number("dt", true);
  const double T = schema.number("T", true);
  const uint64_t seed = schema.seed("seed", false, 1);
  schema.require(n >= 1, "field \"n\" must be >= 1");
  schema.require(dt > 0, "field \"dt\" must be positive");
  schema.require(T > 0, "field \"T\" must be positive");
  auto c0 = vector_or_preset(schema, "c0", n, false, "none");
  if (c0.empty()) c0.assign(static_cast<size_t>(n), cxd(0.0, 0.0));
  const auto* pb = schema.field("psibar0", false);
  std::vector<cxd> psibar0;
  if (!pb || (pb->is_string() && pb->get<std::string>() == "random")) {
    psibar0 = random_unit_vector(n, seed);
  } else if (pb->is_array()) {
    for (const auto& item : *pb)
      psibar0.push_back(json_complex(item, "field \"psibar0\"", schema.errors()));
    if (static_cast<int>(psibar0.size()) != n)
      schema.errors().push_back("field \"psibar0\" must have length n");
  } else {
    schema.errors().push_back("field \"psibar0\" must be \"random\" or an array");
  }
  schema.finish();

  CotangentState s0{std::move(c0), std::move(psibar0)};
  const auto traj = integrate_geodesic(s0, T, dt);

  double e0 = energy(traj.samples.front().u);
  double max_drift = 0.0, max_mismatch = 0.0;
  for (const auto& s : traj.samples) {
    max_drift = std::max(max_drift, std::abs(energy(s.u) - e0));
    const auto l = momenta_from_state(s.state);
    for (size_t k = 0; k < l.size(); ++k)
      max_mismatch = std::max(max_mismatch, std::abs(std::conj(s.u[k]) - l[k]));
  }

  const std::string base = artifact_base("geodesic", config);
  write_text_file(opts.out_dir + "/" + base + ".csv", geodesic_csv(traj));
  nlohmann::json doc = {{"n", n},
                        {"dt", dt},
                        {"T", T},
                        {"energy_initial", e0},
                        {"energy_final", energy(traj.samples.back().u)},
                        {"max_abs_energy_drift", max_drift},
                        {"max_rel_energy_drift", e0 > 0 ? max_drift / e0 : 0.0},
                        {"max_velocity_momentum_mismatch", max_mismatch}};
  write_text_file(opts.out_dir + "/" + base + ".json", doc.dump(2) + "\n");
  if (!opts.quiet)
    out << "geodesic " << base << ": rel_energy_drift=" << fmt17(e0 > 0 ? max_drift / e0 : 0.0)
        << "\n";
  return kExitOk;
}

int cmd_geodesic_const(const nlohmann::json& config, const RunOptions& opts, std::ostream& out) {
  Schema schema(config);
  const int n = schema.integer("n", true);
  const double s_end = schema.number("s", true);
  const double dt = schema.number("dt", false, 1e-3);
  schema.require(n >= 1, "field \"n\" must be >= 1");
  schema.require(s_end > 0, "field \"s\" must be positive");
  auto c0 = vector_or_preset(schema, "c0", n, false, "none");
  if (c0.empty()) c0.assign(static_cast<size_t>(n), cxd(0.0, 0.0));
  auto u0 = schema.complex_vector("u0", true);
  if (static_cast<int>(u0.size()) != n && schema.errors().empty())
    schema.errors().push_back("field \"u0\" must have length n");
  schema.finish();

  const auto polys = constant_u_geodesic(c0, u0);

  // Numeric cross-check: RK4 on the frozen field.
  std::vector<cxd> y = c0;
  auto rhs = [&](double, const std::vector<cxd>& c, std::vector<cxd>& dc) {
    std::vector<cxd> ubar(u0.size());
    for (size_t i = 0; i < u0.size(); ++i) ubar[i] = std::conj(u0[i]);
    auto v = cdot_from_u<cxd>(ubar, c);
    std::copy(v.begin(), v.end(), dc.begin());
  };
  rk4_integrate(rhs, 0.0, s_end, dt, {}, y, [](double, const std::vector<cxd>&) {});
  double max_err = 0.0;
  for (int k = 1; k <= n; ++k)
    max_err = std::max(max_err,
                       std::abs(polys[static_cast<size_t>(k - 1)].eval(s_end) -
                                y[static_cast<size_t>(k - 1)]));

  nlohmann::json plist = nlohmann::json::array();
  for (int k = 1; k <= n; ++k) {
    const auto& p = polys[static_cast<size_t>(k - 1)];
    nlohmann::json coeffs = nlohmann::json::array();
    for (const cxd& a : p.a) coeffs.push_back({a.real(), a.imag()});
    plist.push_back({{"k", k}, {"degree", p.degree()}, {"coeffs", std::move(coeffs)}});
  }
  nlohmann::json doc = {{"n", n},
                        {"s", s_end},
                        {"polynomials", std::move(plist)},
                        {"numeric_max_error", max_err}};

  const std::string base = artifact_base("geodesic-const", config);
  write_text_file(opts.out_dir + "/" + base + ".json", doc.dump(2) + "\n");
  if (!opts.quiet)
    out << "geodesic-const " << base << ": numeric_max_error=" << fmt17(max_err) << "\n";
  return kExitOk;
}

SleParams sle_params_from(Schema& schema) {
  SleParams p;
  p.kappa = schema.number("kappa", true);
  p.dt = schema.number("dt", true);
  p.T = schema.number("T", true);
  p.n_paths = schema.integer("n_paths", true);
  p.seed = schema.seed("seed", true);
  schema.require(p.kappa > 0, "field \"kappa\" must be positive");
  schema.require(p.dt > 0, "field \"dt\" must be positive");
  schema.require(p.T > 0, "field \"T\" must be positive");
  schema.require(p.n_paths >= 1, "field \"n_paths\" must be >= 1");
  return p;
}

EnsembleOptions ensemble_options_from(Schema& schema, const RunOptions& opts) {
  EnsembleOptions eopts;
  eopts.swallow_eps = schema.number("swallow_eps", false, 1e-3);
  const auto* cps = schema.field("checkpoints", false);
  if (cps) {
    if (!cps->is_array())
      schema.errors().push_back("field \"checkpoints\" must be an array of times");
    else
      for (const auto& t : *cps) eopts.checkpoint_times.push_back(t.get<double>());
  }
  eopts.exec = opts.threads == 1 ? Exec::serial : Exec::parallel;
  return eopts;
}

int cmd_sle_sim(const nlohmann::json& config, const RunOptions& opts, std::ostream& out) {
  Schema schema(config);
  SleParams params = sle_params_from(schema);
  const cxd z0 = schema.complex_value("z0", true);
  schema.require(z0.imag() > 0, "field \"z0\" must lie in the upper half-plane");
  EnsembleOptions eopts = ensemble_options_from(schema, opts);
  schema.finish();

  const auto ens = simulate_chordal(params, z0, eopts);
  const auto cw = charge_weight(params.kappa);

  nlohmann::json cps = nlohmann::json::array();
  for (size_t c = 0; c < ens.checkpoint_times.size(); ++c) {
    cxd sum(0.0, 0.0);
    long alive = 0;
    for (size_t i = 0; i < ens.k_values[c].size(); ++i) {
      if (!ens.alive[c][i]) continue;
      sum += ens.k_values[c][i];
      ++alive;
    }
    const cxd mean = alive ? sum / static_cast<double>(alive) : cxd(0.0, 0.0);
    double var = 0.0;
    for (size_t i = 0; i < ens.k_values[c].size(); ++i)
      if (ens.alive[c][i]) var += std::norm(ens.k_values[c][i] - mean);
    const double se = alive > 1 ? std::sqrt(var / static_cast<double>(alive - 1) /
                                            static_cast<double>(alive))
                                : 0.0;
    cps.push_back({{"t", ens.checkpoint_times[c]},
                   {"mean_re", mean.real()},
                   {"mean_im", mean.imag()},
                   {"stderr", se},
                   {"n_alive", static_cast<int>(alive)}});
  }
  nlohmann::json doc = {{"kappa", params.kappa},
                        {"c", cw.c},
                        {"h", cw.h},
                        {"checkpoints", std::move(cps)},
                        {"swallowed_fraction", ens.swallowed_fraction}};

  const std::string base = artifact_base("sle-sim", config);
  write_text_file(opts.out_dir + "/" + base + ".json", doc.dump(2) + "\n");
  if (!opts.quiet)
    out << "sle-sim " << base << ": paths=" << params.n_paths
        << " swallowed_fraction=" << fmt17(ens.swallowed_fraction) << "\n";
  return kExitOk;
}

int cmd_sle_martingale(const nlohmann::json& config, const RunOptions& opts, std::ostream& out) {
  Schema schema(config);
  SleParams params = sle_params_from(schema);
  const cxd z0 = schema.complex_value("z0", true);
  schema.require(z0.imag() > 0, "field \"z0\" must lie in the upper half-plane");
  EnsembleOptions eopts = ensemble_options_from(schema, opts);

  Observable f = Observable::monomial(-1.0);
  const auto* obs = schema.field("observable", false);
  if (obs) {
    if (obs->is_string()) {
      const std::string name = obs->get<std::string>();
      if (name == "inverse")
        f = Observable::monomial(-1.0);
      else if (name == "driftless")
        f = Observable::monomial(params.kappa != 0.0 ? 1.0 - 4.0 / params.kappa : 1.0);
      else
        schema.errors().push_back("unknown observable preset \"" + name + "\"");
    } else if (obs->is_object() && obs->contains("terms") && (*obs)["terms"].is_array() &&
               obs->size() == 1) {
      f.terms.clear();
      for (const auto& term : (*obs)["terms"]) {
        if (!term.is_object() || !term.contains("power")) {
          schema.errors().push_back("observable terms need \"power\" (and optional \"coeff\")");
          continue;
        }
        Observable::Term t;
        t.power = term.at("power").get<double>();
        t.coeff = term.contains("coeff")
                      ? json_complex(term.at("coeff"), "observable coeff", schema.errors())
                      : cxd(1.0, 0.0);
        f.terms.push_back(t);
      }
    } else {
      schema.errors().push_back("field \"observable\" must be a preset or {\"terms\": [...]}");
    }
  }
  schema.finish();

  const auto report = martingale_test(f, params, z0, eopts);

  const std::string base = artifact_base("sle-martingale", config);
  write_text_file(opts.out_dir + "/" + base + ".json",
                  ensemble_report_json(report).dump(2) + "\n");

  double max_dev = 0.0;
  for (const auto& cp : report.checkpoints) max_dev = std::max(max_dev, cp.deviation_se);
  if (!opts.quiet) {
    out << "sle-martingale " << base << ": max_deviation_se=" << fmt17(max_dev)
        << " swallowed_fraction=" << fmt17(report.swallowed_fraction);
    if (report.swallow_warning) out << " WARNING: swallowed fraction exceeds 1%";
    out << "\n";
  }
  return kExitOk;
}

}  // namespace

bool known_command(const std::string& command) {
  static const std::set<std::string> commands = {
      "evolve",         "conserve", "build-lneg",     "witt-check",    "geodesic",
      "geodesic-const", "sle-sim",  "sle-martingale", "duality-check"};
  return commands.contains(command);
}

int run_command(const std::string& command, const nlohmann::json& config, const RunOptions& opts,
                std::ostream& out, std::ostream& err) {
  auto emit_error = [&err](int code, const std::string& message,
                           const std::vector<std::string>& details = {}) {
    nlohmann::json doc = {{"error", {{"code", code}, {"message", message}, {"details", details}}}};
    err << doc.dump() << "\n";
    return code;
  };

#ifdef _OPENMP
  if (opts.threads > 0) omp_set_num_threads(opts.threads);
#endif

  try {
    if (command == "evolve") return cmd_evolve(config, opts, out);
    if (command == "conserve") return cmd_conserve(config, opts, out);
    if (command == "build-lneg") return cmd_build_lneg(config, opts, out);
    if (command == "witt-check") return cmd_witt_check(config, opts, out);
    if (command == "duality-check") return cmd_duality_check(config, opts, out);
    if (command == "geodesic") return cmd_geodesic(config, opts, out);
    if (command == "geodesic-const") return cmd_geodesic_const(config, opts, out);
    if (command == "sle-sim") return cmd_sle_sim(config, opts, out);
    if (command == "sle-martingale") return cmd_sle_martingale(config, opts, out);
    return emit_error(kExitValidation, "unknown command \"" + command + "\"");
  } catch (const ValidationError& e) {
    return emit_error(kExitValidation, "config validation failed", e.details);
  } catch (const BlowUpError& e) {
    return emit_error(kExitBlowup, e.what());
  } catch (const DegenerateScaleError& e) {
    return emit_error(kExitBlowup, e.what());
  } catch (const std::ios_base::failure& e) {
    return emit_error(kExitIo, e.what());
  } catch (const std::invalid_argument& e) {
    return emit_error(kExitValidation, e.what());
  }
}

}  // namespace lk::cli
