#pragma once
// Finite-T analytic solution: particular parts of the resolvents, the
// zeta_b building blocks Z and Delta, assembly of omega^(i), the four edge
// conditions fixing the cuts, and spectral densities.

#include <twofold/elliptic.hpp>
#include <twofold/model.hpp>

#include <array>

namespace twofold {

// Everything needed to evaluate omega^(i), the resolvents and densities for
// one parameter point and cut layout. For a != 1 the two pole locations are
// w1, w2 with coefficient vectors A1, A2; for a = 1 both sit at w1 = w2 with
// vectors B1, B2. lc[j][l] is the weight of the l-th w-derivative (divided
// by l!) applied to the block anchored at w_j.
struct OmegaSolution {
  ModelParams p;
  EllipticFrame fr;
  bool a_is_one = false;
  std::array<std::array<Cplx, 3>, 2> lc;  // lc[j][l], j = 0,1; l = 0,1,2
  std::array<std::array<Cplx, 4>, 2> vec; // coefficient 4-vectors
  std::array<Cplx, 2> w;                  // anchor points (w1, w2) or (w1, w1)
};

// Building blocks. A is the coefficient 4-vector ordered as
// (A-, A+, Atilde-, Atilde+); dw is the order of the d/dw derivative.
Cplx zblock_Z(int color, Cplx v, Cplx w, const std::array<Cplx, 4>& A,
              double b, double T, int dw = 0);
Cplx zblock_Delta(int color, Cplx v, Cplx w, const std::array<Cplx, 4>& A,
                  double b, double T, int dw = 0);
// Same as zblock_Delta but keeping only the zeta_b part (tilde = 0) or only
// the zeta_{1-b} part (tilde = 1); the edge conditions decouple this way.
Cplx zblock_Delta_part(int color, Cplx v, Cplx w, const std::array<Cplx, 4>& A,
                       double b, double T, int tilde, int dw = 0);

// Particular solutions of the linear functional equations (fully packed
// potentials V^(i)'(x) = x).
double W_part(const ModelParams& p, const EllipticFrame& fr, int color,
              double x);

// Laurent data of omega at the anchor points computed from the local
// expansion of x(v), plus the coefficient vectors; no equations solved here.
OmegaSolution assemble_omega(const ModelParams& p, const EllipticFrame& fr);

Cplx omega(const OmegaSolution& sol, int color, Cplx v);

// The four decoupled edge conditions (values at v = 0 and v = -iT of the
// zeta_b and zeta_{1-b} parts of the density numerator). All vanish at a
// true solution.
std::array<Cplx, 4> edge_residuals(const OmegaSolution& sol);

// Density on cut i, parametrized by v = -i tau, tau in [0, T]:
// rho^(1) lives on x(v+1) in [g1m, g1p], rho^(2) on s1(x(v)) in [g2m, g2p].
double spectral_density(const OmegaSolution& sol, int color, double tau);
// The x location the same parameter maps to.
double density_location(const OmegaSolution& sol, int color, double tau);

// Full resolvent W^(i)(x) for real x off the cuts.
double resolvent_W(const OmegaSolution& sol, int color, double x);

// Boundary generating functions F_ell^(i) as moments of the density.
std::vector<double> resolvent_moments(const OmegaSolution& sol, int color,
                                      int ell_max);

struct SolveReport {
  OmegaSolution sol;
  bool converged = false;
  double residual = 0;       // final max edge-condition residual
  int iterations = 0;
  bool density_positive = false;
  double density_min = 0;    // most negative sampled density value
};

// Newton (damped Gauss-Newton) on the four cut endpoints from the decoupled
// seed +-2 sqrt(u_i). Tolerance 1e-12 on residuals, at most 100 iterations.
SolveReport solve_cuts(const ModelParams& p);

struct VerifyReport {
  double ext_residual = 0;      // shift/parity relations of omega, sampled
  double fe_residual = 0;       // functional equations on the cuts, sampled
  // Tail of the resolvents: max of |F_0 - u_i| (the x -> infinity limit of
  // x W^(i), via the spectral representation) and the pointwise gap between
  // x W^(i)(x) and its moment series at a few x far outside the cuts.
  double large_x_err1 = 0;
  double large_x_err2 = 0;
  double moment_err = 0;        // vs series module (filled by the caller)
};

VerifyReport verify_solution(const OmegaSolution& sol);

}  // namespace twofold
