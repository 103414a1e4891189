#include "lk/sle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace lk {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Deterministic standard normals: Box-Muller over mt19937_64 draws.
class NormalStream {
 public:
  explicit NormalStream(uint64_t seed) : rng_(seed) {}

  double next() {
    // u1 in (0,1], u2 in [0,1).
    const double u1 = ((rng_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = (rng_() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 rng_;
};

struct PathResult {
  std::vector<cxd> k_at;      // per checkpoint
  std::vector<uint8_t> alive;
  double xi_final = 0.0;
  bool swallowed = false;
};

PathResult simulate_path(const SleParams& p, cxd z0, const EnsembleOptions& opts,
                         std::span<const long> checkpoint_steps, long n_steps, int index) {
  NormalStream normals(splitmix64(p.seed + static_cast<uint64_t>(index) * 0x9E3779B97F4A7C15ULL));
  const double sigma = std::sqrt(p.kappa * p.dt) * opts.noise_scale;

  PathResult out;
  out.k_at.resize(checkpoint_steps.size());
  out.alive.resize(checkpoint_steps.size());

  cxd k = z0;
  double xi = 0.0;
  bool swallowed = false;
  size_t next_cp = 0;
  auto record_if_checkpoint = [&](long step) {
    while (next_cp < checkpoint_steps.size() && checkpoint_steps[next_cp] == step) {
      out.k_at[next_cp] = k;
      out.alive[next_cp] = swallowed ? 0 : 1;
      ++next_cp;
    }
  };

  record_if_checkpoint(0);
  for (long s = 1; s <= n_steps; ++s) {
    if (!swallowed) {
      const double db = normals.next() * sigma;
      k += (2.0 / k) * p.dt - db;
      xi += db;
      if (std::abs(k) < opts.swallow_eps || k.imag() <= 0.0) swallowed = true;
    }
    record_if_checkpoint(s);
  }
  out.xi_final = xi;
  out.swallowed = swallowed;
  return out;
}

}  // namespace

ChargeWeight charge_weight(double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("charge_weight: kappa must be positive");
  return {(6.0 - kappa) * (3.0 * kappa - 8.0) / (2.0 * kappa), (6.0 - kappa) / (2.0 * kappa)};
}

ChargeWeightExact charge_weight_exact(const Rational& kappa) {
  if (!(kappa > 0)) throw std::invalid_argument("charge_weight_exact: kappa must be positive");
  const Rational six_minus = 6 - kappa;
  return {six_minus * (3 * kappa - 8) / (2 * kappa), six_minus / (2 * kappa)};
}

cxd deterministic_map(cxd z, double t) {
  if (t < 0.0) throw std::invalid_argument("deterministic_map: negative time");
  const cxd s = z * z + 4.0 * t;
  cxd r = std::sqrt(s);
  // Branch continuous from g(z,0) = z: of the two roots pick the one in the
  // upper half-plane; for real non-negative s the point sits on the slit.
  if (r.imag() < 0.0 || (r.imag() == 0.0 && z.real() < 0.0)) r = -r;
  return r;
}

Ensemble simulate_chordal(const SleParams& params, cxd z0, const EnsembleOptions& opts) {
  if (!(params.dt > 0.0)) throw std::invalid_argument("simulate_chordal: dt must be positive");
  if (!(params.T > 0.0)) throw std::invalid_argument("simulate_chordal: T must be positive");
  if (params.n_paths < 1) throw std::invalid_argument("simulate_chordal: need at least one path");
  if (params.kappa < 0.0) throw std::invalid_argument("simulate_chordal: kappa must be >= 0");
  if (!(z0.imag() > 0.0))
    throw std::invalid_argument("simulate_chordal: z0 must lie in the upper half-plane");

  const long n_steps = std::lround(std::ceil(params.T / params.dt - 1e-9));

  std::vector<double> cps = opts.checkpoint_times;
  if (cps.empty())
    for (int i = 1; i <= 5; ++i) cps.push_back(params.T * i / 5.0);
  std::vector<long> cp_steps;
  for (double t : cps) {
    long s = std::lround(t / params.dt);
    cp_steps.push_back(std::clamp(s, 0L, n_steps));
  }
  std::sort(cp_steps.begin(), cp_steps.end());
  cp_steps.erase(std::unique(cp_steps.begin(), cp_steps.end()), cp_steps.end());

  Ensemble out;
  out.params = params;
  out.z0 = z0;
  for (long s : cp_steps) out.checkpoint_times.push_back(static_cast<double>(s) * params.dt);
  const size_t ncp = cp_steps.size();
  const size_t np = static_cast<size_t>(params.n_paths);
  out.k_values.assign(ncp, std::vector<cxd>(np));
  out.alive.assign(ncp, std::vector<uint8_t>(np));
  out.xi_final.resize(np);
  std::vector<uint8_t> swallowed(np, 0);

  const std::span<const long> cp_span(cp_steps.data(), cp_steps.size());

  if (opts.exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < params.n_paths; ++i) {
      const auto r = simulate_path(params, z0, opts, cp_span, n_steps, i);
      for (size_t c = 0; c < ncp; ++c) {
        out.k_values[c][static_cast<size_t>(i)] = r.k_at[c];
        out.alive[c][static_cast<size_t>(i)] = r.alive[c];
      }
      out.xi_final[static_cast<size_t>(i)] = r.xi_final;
      swallowed[static_cast<size_t>(i)] = r.swallowed ? 1 : 0;
    }
  } else {
    for (int i = 0; i < params.n_paths; ++i) {
      const auto r = simulate_path(params, z0, opts, cp_span, n_steps, i);
      for (size_t c = 0; c < ncp; ++c) {
        out.k_values[c][static_cast<size_t>(i)] = r.k_at[c];
        out.alive[c][static_cast<size_t>(i)] = r.alive[c];
      }
      out.xi_final[static_cast<size_t>(i)] = r.xi_final;
      swallowed[static_cast<size_t>(i)] = r.swallowed ? 1 : 0;
    }
  }

  // Reduction in fixed path order, independent of the execution policy.
  long count = 0;
  for (uint8_t s : swallowed) count += s;
  out.swallowed_fraction = static_cast<double>(count) / static_cast<double>(np);
  return out;
}

Observable Observable::monomial(double power, cxd coeff) {
  Observable f;
  f.terms.push_back({power, coeff});
  return f;
}

cxd Observable::eval(cxd z) const {
  cxd r(0.0, 0.0);
  for (const Term& t : terms) r += t.coeff * std::pow(z, cxd(t.power, 0.0));
  return r;
}

std::string Observable::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " + ";
    os << "(" << terms[i].coeff.real();
    if (terms[i].coeff.imag() != 0.0) os << (terms[i].coeff.imag() < 0 ? "" : "+")
                                         << terms[i].coeff.imag() << "i";
    os << ")*z^" << terms[i].power;
  }
  return terms.empty() ? "0" : os.str();
}

Observable drift_operator(const Observable& f, double kappa) {
  Observable out;
  for (const Observable::Term& t : f.terms) {
    // (kappa/2) a p (p-1) z^{p-2} + 2 a p z^{p-2}
    const double factor = t.power * (0.5 * kappa * (t.power - 1.0) + 2.0);
    if (factor != 0.0) out.terms.push_back({t.power - 2.0, t.coeff * factor});
  }
  return out;
}

MartingaleReport martingale_test(const Observable& f, const SleParams& params, cxd z0,
                                 const EnsembleOptions& opts) {
  const Observable drift = drift_operator(f, params.kappa);
  double fscale = 0.0, dscale = 0.0;
  for (const auto& t : f.terms) fscale = std::max(fscale, std::abs(t.coeff));
  for (const auto& t : drift.terms) dscale = std::max(dscale, std::abs(t.coeff));
  if (dscale > 1e-12 * std::max(fscale, 1.0))
    throw std::invalid_argument(
        "martingale_test: observable is not drift-less for this kappa");

  const Ensemble ens = simulate_chordal(params, z0, opts);

  MartingaleReport rep;
  rep.kappa = params.kappa;
  rep.cw = charge_weight(params.kappa);
  rep.f_z0 = f.eval(z0);
  rep.swallowed_fraction = ens.swallowed_fraction;
  rep.swallow_warning = ens.swallowed_fraction > 0.01;

  for (size_t c = 0; c < ens.checkpoint_times.size(); ++c) {
    MartingaleCheckpoint cp;
    cp.t = ens.checkpoint_times[c];
    // Fixed-order accumulation over path indices.
    cxd sum(0.0, 0.0);
    long n = 0;
    for (size_t i = 0; i < ens.k_values[c].size(); ++i) {
      if (!ens.alive[c][i]) continue;
      sum += f.eval(ens.k_values[c][i]);
      ++n;
    }
    cp.n_alive = static_cast<int>(n);
    if (n > 0) {
      cp.mean = sum / static_cast<double>(n);
      double var = 0.0;
      for (size_t i = 0; i < ens.k_values[c].size(); ++i) {
        if (!ens.alive[c][i]) continue;
        var += std::norm(f.eval(ens.k_values[c][i]) - cp.mean);
      }
      if (n > 1) {
        cp.stderr_ = std::sqrt(var / static_cast<double>(n - 1) / static_cast<double>(n));
        cp.deviation_se = cp.stderr_ > 0.0 ? std::abs(cp.mean - rep.f_z0) / cp.stderr_ : 0.0;
      }
    }
    rep.checkpoints.push_back(cp);
  }
  return rep;
}

}  // namespace lk
