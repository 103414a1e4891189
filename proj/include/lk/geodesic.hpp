#pragma once

#include <complex>
#include <span>
#include <vector>

#include "lk/evolution.hpp"

namespace lk {

struct CotangentState {
  std::vector<cxd> c;
  std::vector<cxd> psibar;
};

/// l_k = psibar_k + sum_{j=1}^{n-k} (j+1) c_j psibar_{k+j}; triangular, so
/// l_n = psibar_n.
std::vector<cxd> momenta_from_state(const CotangentState& s);

/// Inverts momenta_from_state given c (solve downward from k = n).
std::vector<cxd> state_from_momenta(std::span<const cxd> l, std::span<const cxd> c);

struct HamiltonianRhs {
  std::vector<cxd> cdot;
  std::vector<cxd> psidot;
};

/// The printed cotangent system: cdot_k = conj(l_k) + sum (j+1) c_j
/// conj(l_{k-j}); psidot_p = -(p+1) sum_{k=1}^{n-p} l_k psibar_{k+p}, and
/// psidot_n = 0.
HamiltonianRhs hamiltonian_rhs(const CotangentState& s);

/// Decoupled velocity flow udot_k = sum_{j=1}^{n-k} (j-k) conj(u_j) u_{j+k}.
std::vector<cxd> u_flow_rhs(std::span<const cxd> u);

/// Conjugate twin of the velocity flow: ldot_k = sum (j-k) conj(l_j) l_{j+k}.
std::vector<cxd> l_flow_rhs(std::span<const cxd> l);

double energy(std::span<const cxd> u);      // sum |u_k|^2
double lagrangian(std::span<const cxd> u);  // half of it

struct GeodesicSample {
  double t = 0.0;
  CotangentState state;
  std::vector<cxd> u;  // redundant velocity channel propagated alongside
};

struct GeodesicTrajectory {
  std::vector<GeodesicSample> samples;
  double dt = 0.0;
};

/// RK4 on the cotangent system, with the velocity flow integrated in
/// parallel as a consistency channel (u(0) = conj(l(0))).
GeodesicTrajectory integrate_geodesic(const CotangentState& s0, double t_end, double dt,
                                      const IntegrateOptions& opts = {});

/// Polynomial in one real parameter with complex coefficients.
struct PolyInS {
  std::vector<cxd> a;  // a[0] + a[1] s + ...

  int degree() const;
  cxd eval(double s) const;
};

/// Exact solution of cdot = sum_k conj(u0_k) L_k(c): the triangular system
/// integrates to polynomials, c_k(s) of degree k (for conj(u0_1) != 0).
std::vector<PolyInS> constant_u_geodesic(std::span<const cxd> c0, std::span<const cxd> u0);

}  // namespace lk
