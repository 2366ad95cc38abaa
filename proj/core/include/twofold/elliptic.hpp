#pragma once
// Jacobi theta_1, the quasi-periodic building block zeta_b, and the two-cut
// elliptic change of variable v <-> x.

#include <complex>

namespace twofold {

using Cplx = std::complex<double>;

// theta_1(v | iT) and its first three v-derivatives, from the q-series with
// q = exp(-pi T), truncated when terms drop below 1e-16.
Cplx theta1(Cplx v, double T, int deriv = 0);

// Half-periods beyond this are handled with the trigonometric (T = infinity)
// forms; q < 1e-16 there, below double precision.
inline constexpr double kTrigThreshold = 12.0;

// The finite-T theta form of zeta_b approaches its trigonometric limit like
// exp(-2 pi b T), so the switch must look at the product b T.
inline constexpr double kZetaTrigThreshold = 6.1;

// zeta_b: 2iT-periodic, zeta_b(v+1) = e^{i pi b} zeta_b(v), simple pole of
// residue 1 at v = 0 and no other pole in the 1 x 2iT cell. Finite bT uses
// the theta ratio on the 2iT lattice, bT >= kZetaTrigThreshold the closed
// trigonometric form pi e^{i pi (b-1) v} / sin(pi v).
struct ZetaB {
  double b;
  double T;

  bool trig() const { return !(b * T < kZetaTrigThreshold); }
  Cplx operator()(Cplx v) const { return eval(v, 0); }
  Cplx d1(Cplx v) const { return eval(v, 1); }
  Cplx d2(Cplx v) const { return eval(v, 2); }
  Cplx eval(Cplx v, int deriv) const;
};

// The involutive rational maps attached to the ring closed form,
// s1(x) = (1 - a h1 x) / (a h2 + (1 - a^2) h1 h2 x) and s2 = s1 with
// h1 <-> h2; s1 and s2 are mutually inverse.
struct SMaps {
  double a, h1, h2;
  double s1(double x) const;
  double s2(double x) const;
  double s1p(double x) const;   // derivative
  double s2p(double x) const;
  double s1_inf() const;        // limit of s1 at infinity (infinite when a=1)
  double s2_inf() const;
  bool a_is_one() const;
};

// Two-cut frame. Branch points e1 < e2 < e3 < e4 are gamma1-, gamma1+,
// s2(gamma2+), s2(gamma2-); the domains are C1 = [e1,e2], D1 = [e2,e3],
// C2 = [e3,e4], D2 = [e4,+inf] u [-inf,e1] (through infinity). v runs over
// [0,1] on D2, i[0,T] on C2+i0, with x(v) even of periods 2 and 2iT.
struct EllipticFrame {
  double g1m, g1p, g2m, g2p;  // cut endpoints in the x variable
  double e1, e2, e3, e4;      // quartic branch points
  double a, h1, h2;
  double c = 0;   // normalization of the defining integral
  double T = 0;   // half-period
  Cplx w1, w2;    // images of +infinity and s2(+infinity)
  int sign_choice = 1;  // sign making the integrand positive on D2

  SMaps smaps() const { return SMaps{a, h1, h2}; }
  double quartic(double x) const {  // P(x) = prod (x - e_i)
    return (x - e1) * (x - e2) * (x - e3) * (x - e4);
  }
  bool trig() const { return !(T < kTrigThreshold); }
};

// Computes c, T, w1, w2 by adaptive quadrature. Throws if the cuts overlap
// or the ordering e1 < e2 < e3 < e4 fails.
EllipticFrame build_frame(double g1m, double g1p, double g2m, double g2p,
                          double a, double h1, double h2);

// v(x) for real x off the open cuts (on a cut, the +i0 side value).
Cplx v_of_x(const EllipticFrame& fr, double x);

// x(v) on the physical sheet: adaptive Runge-Kutta continuation of
// dx/dv = sqrt(P(x)) / c from an anchor on D2, projective near x = infinity.
Cplx x_of_v(const EllipticFrame& fr, Cplx v);

// dx/dv at v, from the quartic (branch fixed by the region of v).
Cplx dx_dv(const EllipticFrame& fr, Cplx v);

}  // namespace twofold
