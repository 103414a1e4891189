#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lk/rational.hpp"

namespace lk {

using cxd = std::complex<double>;

struct SleParams {
  double kappa = 0.0;   // diffusion strength, > 0 (0 allowed for the noise-off limit)
  double dt = 0.0;      // Euler-Maruyama step
  double T = 0.0;       // horizon
  int n_paths = 0;
  uint64_t seed = 0;
};

struct ChargeWeight {
  double c = 0.0;
  double h = 0.0;
};

struct ChargeWeightExact {
  Rational c, h;
};

/// c = (6-k)(3k-8)/(2k), h = (6-k)/(2k); rejects kappa <= 0.
ChargeWeight charge_weight(double kappa);
ChargeWeightExact charge_weight_exact(const Rational& kappa);

/// Driving-free chordal map g(z,t) = sqrt(z^2 + 4t), branch continuous from
/// g(z,0) = z on the upper half-plane.
cxd deterministic_map(cxd z, double t);

enum class Exec { serial, parallel };

struct EnsembleOptions {
  double swallow_eps = 1e-3;  // |k| below this marks the point swallowed
  double noise_scale = 1.0;   // 0 turns the driving off (deterministic limit)
  std::vector<double> checkpoint_times;  // defaults to 5 even checkpoints up to T
  Exec exec = Exec::parallel;
};

/// Flow values of one ensemble: k_t(z0) per path at each checkpoint, with
/// per-checkpoint alive masks (false once the path was swallowed earlier).
struct Ensemble {
  SleParams params;
  cxd z0;
  std::vector<double> checkpoint_times;
  std::vector<std::vector<cxd>> k_values;      // [checkpoint][path]
  std::vector<std::vector<uint8_t>> alive;     // [checkpoint][path]
  std::vector<double> xi_final;                // driving value at T per path
  double swallowed_fraction = 0.0;
};

/// Euler-Maruyama on dk = (2/k) dt - dxi, xi = sqrt(kappa) B_t.  Paths are
/// deterministic functions of (seed, path index): path i draws its normals
/// from mt19937_64 seeded with splitmix64(seed + i * 0x9E3779B97F4A7C15).
/// Results are bitwise identical for serial and parallel execution.
Ensemble simulate_chordal(const SleParams& params, cxd z0, const EnsembleOptions& opts = {});

/// Linear combination of (possibly fractional) powers of z, evaluated with
/// the principal branch; the observables of the martingale tests.
struct Observable {
  struct Term {
    double power = 0.0;
    cxd coeff;
  };
  std::vector<Term> terms;

  static Observable monomial(double power, cxd coeff = cxd(1.0, 0.0));
  cxd eval(cxd z) const;
  std::string str() const;
};

/// Generator of the flow on observables: (kappa/2) F'' + (2/z) F'.
/// A vanishing result is the drift-less (martingale) condition.
Observable drift_operator(const Observable& f, double kappa);

struct MartingaleCheckpoint {
  double t = 0.0;
  cxd mean;
  double stderr_ = 0.0;
  int n_alive = 0;
  double deviation_se = 0.0;  // |mean - F(z0)| in units of standard error
};

struct MartingaleReport {
  double kappa = 0.0;
  ChargeWeight cw;
  cxd f_z0;
  std::vector<MartingaleCheckpoint> checkpoints;
  double swallowed_fraction = 0.0;
  bool swallow_warning = false;  // swallowed fraction exceeded 1%
};

/// Monte-Carlo estimate of E[F(k_t)] at the checkpoints versus F(z0).
/// Requires drift_operator(F, kappa) to vanish identically (checked).
MartingaleReport martingale_test(const Observable& f, const SleParams& params, cxd z0,
                                 const EnsembleOptions& opts = {});

}  // namespace lk
