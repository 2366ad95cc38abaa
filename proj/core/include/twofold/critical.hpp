#pragma once
// The T = infinity non-generic critical variety for fully packed models:
// closed forms at a = 1, the semi-analytic solver for general bending weight,
// the symmetric bending model with its a_max boundary, Potts critical
// couplings and the Ising cross-check.

#include <twofold/elliptic.hpp>

#include <utility>

namespace twofold {

enum class Regime { dense_generic, dilute_boundary, invalid_positivity };

struct CriticalPoint {
  double b = 0, a = 1, u = 1, r = 1;  // inputs
  Cplx w1, w2;                        // solved marked points
  double h1 = 0, h2 = 0;
  double g1m = 0, g1p = 0, g2m = 0, g2p = 0;  // cut endpoints
  double lam = 0, del = 0;  // trigonometric x(v) data: x = lam - del (cos pi v - 1)/(cos pi v - cos pi w1)
  Regime regime = Regime::dense_generic;
  double residual = 0;
  // Laurent data of omega at the marked points (order l = 0,1,2). The a = 1
  // path stores the coefficients of the symmetric-basis expansion (lc_beta
  // set), the general path those of the two-point basis.
  Cplx lc[2][3] = {};
  bool lc_beta = false;
};

// kappa_b(w) = b cos(pi b w) sin(pi w) - sin(pi b w) cos(pi w).
double kappa_b(double b, double w);

// Unique w1 in ]0,1[ with kappa_b(w1)/kappa_b(1-w1) = r.
double solve_w1_a1(double r, double b);

// Closed-form critical point at a = 1.
CriticalPoint critical_point_a1(double u, double r, double b);

struct PottsCritical {
  double Q = 0, t_c = 0, J_c = 0, K_c = 0;
  double t_selfdual = 0, J_selfdual = 0;  // symmetric-model comparison values
};

// Potts critical couplings for 0 < Q < 4 via r = sqrt(Q), u = Q^{1/4}.
PottsCritical potts_critical(double Q);

// Marked points for general bending weight: solves the 4x4 linear system for
// the Laurent coefficients and root-finds the two residual conditions (the
// fifth condition and the equality of the dual h1 determinations) in
// (w1, w2). Regular at a = 1. Seeded from the a = 1 point, with continuation
// in a when the direct solve stalls.
std::pair<Cplx, Cplx> solve_w1w2_general(double r, double a, double b);

// Full critical point for general a from the closed-form inversions.
CriticalPoint critical_point_general(double u, double r, double a, double b);

// Closed forms of the n -> 0 limit: w1, w2, h1, h2 and symmetric cuts
// +-2 sqrt(u) r^{+-1/4} in terms of eta = sqrt(4 a^2 r^{2/3} + (1-r^{2/3})^2).
CriticalPoint critical_point_nzero(double u, double r, double a);

// Symmetric bending model (r = 1, u1 = u2 = u): w1 from the closed-form
// bending relation a(w1), h from the closed-form H(w1).
CriticalPoint symmetric_bending(double a, double b, double u);

// a(w1) of the symmetric model (analytic in w1, valid on the imaginary
// branch as well).
double atow(double b, Cplx w1);
// H(w1) with h = sqrt(H) / (sqrt(2-n) |a^2-1| sqrt(u)).
double symmetric_H(double b, Cplx w1);

// Largest admissible bending weight: (w1_max, a_max), w1_max the root of the
// explicit trigonometric polynomial in (1/2, 1).
std::pair<double, double> a_max(double b);

struct IsingCritical {
  double H_nongeneric = 0;  // (2/9)(1 - 3a + 2 a^{3/2})
  double H_generic = 0;     // (3a^2 - 8)/36
  double P_nongeneric = 0;  // accompanying root of the defining system
  double P_generic = 0;
};

IsingCritical ising_critical(double a);

// The trigonometric (T = infinity) change of variable attached to a critical
// point: x(v) = lam - del (cos pi v - 1)/(cos pi v - cos pi w1).
Cplx critical_x(const CriticalPoint& cp, Cplx v);

// Spectral densities at the critical point, on the cylinder v = -i tau,
// tau >= 0: color 1 lives on x(v + 1), color 2 on s1(x(v)). Built from the
// stored Laurent data; decays like e^{-pi(1-b) tau} in the dense regime.
double critical_density(const CriticalPoint& cp, int color, double tau);

}  // namespace twofold
