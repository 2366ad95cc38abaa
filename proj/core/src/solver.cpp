#include <twofold/solver.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace twofold {

namespace {

constexpr double kPi = std::numbers::pi;
const Cplx kI{0, 1};

// derivative of zeta_b(s v + t w) with respect to w, order dw
Cplx zeta_term(const ZetaB& z, Cplx v, Cplx w, int sv, int sw, int dw) {
  Cplx arg = static_cast<double>(sv) * v + static_cast<double>(sw) * w;
  Cplx val = z.eval(arg, dw);
  return (sw < 0 && dw % 2 == 1) ? -val : val;
}

struct Phases {
  Cplx b_fwd = 1, b_rev = 1, t_fwd = 1, t_rev = 1;
};

Phases z_phases(int color, double b) {
  Phases ph;
  if (color == 2) {
    Cplx e = std::exp(kI * kPi * b);
    ph.b_fwd = 1.0 / e;  // on zeta_b(v -+ w)
    ph.b_rev = e;        // on zeta_b(-v -+ w)
    ph.t_fwd = e;        // on zeta_{1-b}(v -+ w)
    ph.t_rev = 1.0 / e;
  } else if (color != 1) {
    throw std::domain_error("zblock: color must be 1 or 2");
  }
  return ph;
}

}  // namespace

Cplx zblock_Z(int color, Cplx v, Cplx w, const std::array<Cplx, 4>& A,
              double b, double T, int dw) {
  Phases ph = z_phases(color, b);
  ZetaB zb{b, T}, zt{1 - b, T};
  Cplx r = 0;
  r += A[0] * (ph.b_fwd * zeta_term(zb, v, w, 1, -1, dw) -
               ph.b_rev * zeta_term(zb, v, w, -1, -1, dw));
  r += A[1] * (ph.b_fwd * zeta_term(zb, v, w, 1, 1, dw) -
               ph.b_rev * zeta_term(zb, v, w, -1, 1, dw));
  r += A[2] * (ph.t_fwd * zeta_term(zt, v, w, 1, -1, dw) -
               ph.t_rev * zeta_term(zt, v, w, -1, -1, dw));
  r += A[3] * (ph.t_fwd * zeta_term(zt, v, w, 1, 1, dw) -
               ph.t_rev * zeta_term(zt, v, w, -1, 1, dw));
  return r;
}

Cplx zblock_Delta_part(int color, Cplx v, Cplx w, const std::array<Cplx, 4>& A,
                       double b, double T, int tilde, int dw) {
  if (color != 1 && color != 2)
    throw std::domain_error("zblock: color must be 1 or 2");
  double pref = -std::sin(kPi * b) / kPi;
  if (tilde && color == 2) pref = -pref;
  ZetaB z{tilde ? 1 - b : b, T};
  int i0 = tilde ? 2 : 0;
  Cplx r = A[i0] * (zeta_term(z, v, w, 1, -1, dw) +
                    zeta_term(z, v, w, -1, -1, dw)) +
           A[i0 + 1] * (zeta_term(z, v, w, 1, 1, dw) +
                        zeta_term(z, v, w, -1, 1, dw));
  return pref * r;
}

Cplx zblock_Delta(int color, Cplx v, Cplx w, const std::array<Cplx, 4>& A,
                  double b, double T, int dw) {
  return zblock_Delta_part(color, v, w, A, b, T, 0, dw) +
         zblock_Delta_part(color, v, w, A, b, T, 1, dw);
}

namespace {

void require_fully_packed(const ModelParams& p) {
  for (double g : p.g1_seq)
    if (g != 0) throw std::domain_error("solver: fully packed only (g == 0)");
  for (double g : p.g2_seq)
    if (g != 0) throw std::domain_error("solver: fully packed only (g == 0)");
}

}  // namespace

double W_part(const ModelParams& p, const EllipticFrame& fr, int color,
              double x) {
  require_fully_packed(p);
  SMaps s = fr.smaps();
  double n = p.n, den = 4 - n * n;
  double v2s = s.s1p(x) * s.s1(x);  // (V^(2s))'(x)
  double srat = s.a_is_one() ? 0.0 : -1.0 / (x - s.s2_inf());
  if (color == 1)
    return (2 * x + n * v2s) / den + n * (n * p.u1 - 2 * p.u2) / den * srat;
  if (color == 2)  // the s-transformed branch W^(2s)_part
    return (n * x + 2 * v2s) / den + n * (2 * p.u1 - n * p.u2) / den * srat;
  throw std::domain_error("W_part: color must be 1 or 2");
}

OmegaSolution assemble_omega(const ModelParams& p, const EllipticFrame& fr) {
  require_fully_packed(p);
  OmegaSolution sol;
  sol.p = p;
  sol.fr = fr;
  SMaps s = fr.smaps();
  sol.a_is_one = s.a_is_one();
  double n = p.n, den = 4 - n * n, b = p.b();
  double c = fr.c;
  double esum = fr.e1 + fr.e2 + fr.e3 + fr.e4;
  double X0 = esum / 4;  // x(v) = -c/(v-w1) + X0 + ...
  if (!sol.a_is_one) {
    sol.w = {fr.w1, fr.w2};
    Cplx e = std::exp(kI * kPi * b);
    sol.vec[0] = {0.25, 0.25, 0.25, 0.25};
    sol.vec[1] = {0.25 * e, 0.25 / e, 0.25 / e, 0.25 * e};
    sol.lc[0] = {-2 * (2 * p.u1 - n * p.u2) / den, 2 * (-c) * X0 / den,
                 2 * c * c / den};
    // Laurent data of s1(x(v)) at w2 from the residue of s1 at its pole
    double a = p.a;
    double R = 1.0 / ((1 - a * a) * (1 - a * a) * p.h1 * p.h2);
    double xw2 = s.s2_inf();
    double P = fr.quartic(xw2);
    double xp = std::sqrt(P) / c;  // |x'(w2)|
    if (xw2 > fr.e2 && xw2 < fr.e3) xp = -xp;  // on D1 x decreases with v
    double xpp = ((xw2 - fr.e2) * (xw2 - fr.e3) * (xw2 - fr.e4) +
                  (xw2 - fr.e1) * (xw2 - fr.e3) * (xw2 - fr.e4) +
                  (xw2 - fr.e1) * (xw2 - fr.e2) * (xw2 - fr.e4) +
                  (xw2 - fr.e1) * (xw2 - fr.e2) * (xw2 - fr.e3)) /
                 (2 * c * c);
    double Sm1 = R / xp;
    double S0 = s.s1_inf() - R * xpp / (2 * xp * xp);
    sol.lc[1] = {2 * (n * p.u1 - 2 * p.u2) / den, 2 * Sm1 * S0 / den,
                 2 * Sm1 * Sm1 / den};
  } else {
    sol.w = {fr.w1, fr.w1};
    Cplx e = std::exp(kI * kPi * b);
    Cplx pref = 1.0 / (4.0 * kI * std::sin(kPi * b));
    sol.vec[0] = {pref * e, -pref / e, -pref / e, pref * e};
    sol.vec[1] = {-pref, pref, pref, -pref};
    double hr = p.h1 * p.h1 / (p.h2 * p.h2);
    double K1 = -(2 + n * hr) / den, K0 = n * p.h1 / (p.h2 * p.h2) / den;
    double K1p = -(n + 2 * hr) / den, K0p = 2 * p.h1 / (p.h2 * p.h2) / den;
    sol.lc[0] = {-p.u1, c * (K1 * X0 + K0), -K1 * c * c};
    sol.lc[1] = {-p.u2, c * (K1p * X0 + K0p), -K1p * c * c};
  }
  return sol;
}

Cplx omega(const OmegaSolution& sol, int color, Cplx v) {
  double b = sol.p.b(), T = sol.fr.T;
  Cplx r = 0;
  double fact = 1;
  for (int l = 0; l <= 2; ++l) {
    if (l > 0) fact *= l;
    for (int j = 0; j < 2; ++j)
      if (sol.lc[j][l] != 0.0)
        r += sol.lc[j][l] / fact *
             zblock_Z(color, v, sol.w[j], sol.vec[j], b, T, l);
  }
  return r;
}

namespace {

// D_1 Delta_1 + D_2 Delta_2 for one zeta flavor, at a point
Cplx delta_sum(const OmegaSolution& sol, int color, Cplx v, int tilde) {
  double b = sol.p.b(), T = sol.fr.T;
  Cplx r = 0;
  double fact = 1;
  for (int l = 0; l <= 2; ++l) {
    if (l > 0) fact *= l;
    for (int j = 0; j < 2; ++j)
      if (sol.lc[j][l] != 0.0)
        r += sol.lc[j][l] / fact *
             zblock_Delta_part(color, v, sol.w[j], sol.vec[j], b, T, tilde, l);
  }
  return r;
}

}  // namespace

std::array<Cplx, 4> edge_residuals(const OmegaSolution& sol) {
  Cplx bottom = -kI * sol.fr.T;
  // the tilde parts enter the two densities with opposite signs, so the
  // conditions split per flavor; color 1 is used as the reference sign
  return {delta_sum(sol, 1, Cplx(0), 0), delta_sum(sol, 1, bottom, 0),
          delta_sum(sol, 1, Cplx(0), 1), delta_sum(sol, 1, bottom, 1)};
}

double density_location(const OmegaSolution& sol, int color, double tau) {
  if (tau < 0 || tau > sol.fr.T)
    throw std::domain_error("density: tau outside [0, T]");
  if (color == 1) return x_of_v(sol.fr, Cplx(1, -tau)).real();
  if (color == 2)
    return sol.fr.smaps().s1(x_of_v(sol.fr, Cplx(0, -tau)).real());
  throw std::domain_error("density: color must be 1 or 2");
}

double spectral_density(const OmegaSolution& sol, int color, double tau) {
  // With the orientation conventions of this frame (x + i0 on C1 is the
  // Re v = 1 edge of the upper rectangle), the Delta numerator carries an
  // overall minus sign relative to the standard discontinuity density.
  Cplx v(0, -tau);
  Cplx num = delta_sum(sol, color, v, 0) + delta_sum(sol, color, v, 1);
  const EllipticFrame& fr = sol.fr;
  if (color == 1) {
    double x = x_of_v(fr, Cplx(1, -tau)).real();
    Cplx xp = kI * std::sqrt(std::max(0.0, -fr.quartic(x))) / fr.c;
    return -(num / xp).real();
  }
  double x = x_of_v(fr, Cplx(0, -tau)).real();
  Cplx xp = -kI * std::sqrt(std::max(0.0, -fr.quartic(x))) / fr.c;
  return -(num / (fr.smaps().s1p(x) * xp)).real();
}

double resolvent_W(const OmegaSolution& sol, int color, double x) {
  const EllipticFrame& fr = sol.fr;
  SMaps s = fr.smaps();
  if (color == 1) {
    Cplx v = v_of_x(fr, x);
    Cplx xp = dx_dv(fr, v);
    return W_part(sol.p, fr, 1, x) + (omega(sol, 1, v) / xp).real();
  }
  if (color != 2) throw std::domain_error("resolvent: color must be 1 or 2");
  double xs = s.s2(x);
  Cplx v = v_of_x(fr, xs);
  Cplx xp = dx_dv(fr, v);
  double w2s = W_part(sol.p, fr, 2, xs) + (omega(sol, 2, v) / xp).real();
  return s.s2p(x) * w2s;
}

std::vector<double> resolvent_moments(const OmegaSolution& sol, int color,
                                      int ell_max) {
  // F_ell = int x^ell rho dx written along the cut parameter: the x' factors
  // cancel and the integrand is (i) times the Delta sum, analytic in tau
  const int nq = 96;
  std::vector<double> F(ell_max + 1, 0.0);
  static thread_local std::vector<double> gx, gw;
  if (gx.empty()) {
    // Gauss-Legendre nodes on [0,1] via Newton on the Legendre polynomial
    gx.resize(nq);
    gw.resize(nq);
    for (int i = 0; i < nq; ++i) {
      double t = std::cos(kPi * (i + 0.75) / (nq + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1, p1 = t;
        for (int k = 2; k <= nq; ++k) {
          double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        double dp = nq * (t * p1 - p0) / (t * t - 1);
        double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-16) break;
      }
      double p0 = 1, p1 = t;
      for (int k = 2; k <= nq; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = nq * (t * p1 - p0) / (t * t - 1);
      gx[i] = 0.5 * (1 + t);
      gw[i] = 1.0 / ((1 - t * t) * dp * dp);
    }
  }
  for (int i = 0; i < nq; ++i) {
    double tau = gx[i] * sol.fr.T;
    double x = density_location(sol, color, tau);
    Cplx v(0, -tau);
    Cplx num = delta_sum(sol, color, v, 0) + delta_sum(sol, color, v, 1);
    double base = (kI * num).real() * gw[i] * sol.fr.T;
    double xp = 1;
    for (int l = 0; l <= ell_max; ++l) {
      F[l] += base * xp;
      xp *= x;
    }
  }
  return F;
}

namespace {

EllipticFrame frame_of(const ModelParams& p, const double g[4]) {
  return build_frame(g[0], g[1], g[2], g[3], p.a, p.h1, p.h2);
}

double max_residual(const std::array<Cplx, 4>& r) {
  double m = 0;
  for (auto& c : r) m = std::max({m, std::abs(c.real()), std::abs(c.imag())});
  return m;
}

// Damped Newton on the four edge conditions, starting from g. Returns the
// final sup-residual; g holds the best point found.
double newton_cuts(const ModelParams& p, double g[4], int& iters) {
  auto residuals = [&](const double gg[4], std::array<Cplx, 4>& out) -> bool {
    try {
      EllipticFrame fr = frame_of(p, gg);
      out = edge_residuals(assemble_omega(p, fr));
      return true;
    } catch (const std::domain_error&) {
      return false;
    }
  };
  std::array<Cplx, 4> res;
  if (!residuals(g, res)) return std::numeric_limits<double>::infinity();
  double cur = max_residual(res);
  int it = 0;
  for (; it < 100 && cur > 1e-12; ++it) {
    Eigen::MatrixXd J(8, 4);
    Eigen::VectorXd r0(8);
    for (int k = 0; k < 4; ++k) {
      r0(2 * k) = res[k].real();
      r0(2 * k + 1) = res[k].imag();
    }
    bool ok = true;
    for (int j = 0; j < 4; ++j) {
      double gp[4] = {g[0], g[1], g[2], g[3]};
      double h = 1e-7 * (1 + std::abs(g[j]));
      gp[j] += h;
      std::array<Cplx, 4> rp;
      if (!residuals(gp, rp)) {
        gp[j] -= 2 * h;
        if (!residuals(gp, rp)) {
          ok = false;
          break;
        }
        h = -h;
      }
      for (int k = 0; k < 4; ++k) {
        J(2 * k, j) = (rp[k].real() - res[k].real()) / h;
        J(2 * k + 1, j) = (rp[k].imag() - res[k].imag()) / h;
      }
    }
    if (!ok) break;
    Eigen::VectorXd step =
        J.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-r0);
    // cap the step so one iteration cannot fling the cuts into a collision
    double span = 1 + std::max({std::abs(g[0]), g[1], std::abs(g[2]), g[3]});
    double smax = step.lpNorm<Eigen::Infinity>();
    double lam = std::min(1.0, 0.3 * span / smax);
    bool moved = false;
    for (int half = 0; half < 12; ++half, lam *= 0.5) {
      double gn[4];
      for (int j = 0; j < 4; ++j) gn[j] = g[j] + lam * step(j);
      std::array<Cplx, 4> rn;
      if (!residuals(gn, rn)) continue;
      double nn = max_residual(rn);
      if (nn < cur) {
        for (int j = 0; j < 4; ++j) g[j] = gn[j];
        res = rn;
        cur = nn;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  iters += it;
  return cur;
}

}  // namespace

SolveReport solve_cuts(const ModelParams& p) {
  require_fully_packed(p);
  if (!(p.n > 0 && p.n < 2))
    throw std::domain_error("solve_cuts: need 0 < n < 2");
  SolveReport rep;
  double g[4] = {-2 * std::sqrt(p.u1), 2 * std::sqrt(p.u1),
                 -2 * std::sqrt(p.u2), 2 * std::sqrt(p.u2)};
  int it = 0;
  double cur = newton_cuts(p, g, it);
  if (std::isinf(cur))
    throw std::domain_error("solve_cuts: seed cuts are infeasible");
  if (!(cur < 1e-10)) {
    // direct attempt stalled: continuation in the ring amplitude. As the h's
    // shrink the colors decouple and the seed cuts become exact, so walk the
    // amplitude back up reusing the previous cuts as the next seed.
    double gc[4] = {-2 * std::sqrt(p.u1), 2 * std::sqrt(p.u1),
                    -2 * std::sqrt(p.u2), 2 * std::sqrt(p.u2)};
    double s = 0, ds = 0.25;
    while (s < 1) {
      double sn = std::min(1.0, s + ds);
      ModelParams ps = p;
      ps.h1 *= sn;
      ps.h2 *= sn;
      double gt[4] = {gc[0], gc[1], gc[2], gc[3]};
      double r = newton_cuts(ps, gt, it);
      if (r < 1e-10) {
        for (int j = 0; j < 4; ++j) gc[j] = gt[j];
        s = sn;
        ds = std::min(2 * ds, 0.25);
        cur = r;
      } else {
        ds /= 2;
        if (ds < 1.0 / 128) break;
      }
    }
    if (s >= 1)
      for (int j = 0; j < 4; ++j) g[j] = gc[j];
  }
  EllipticFrame fr = frame_of(p, g);
  rep.sol = assemble_omega(p, fr);
  rep.residual = cur;
  rep.iterations = it;
  rep.converged = cur < 1e-10;
  // positivity scan
  rep.density_min = 0;
  const int ns = 200;
  for (int color = 1; color <= 2; ++color)
    for (int i = 1; i < ns; ++i) {
      double rho = spectral_density(rep.sol, color, fr.T * i / ns);
      rep.density_min = std::min(rep.density_min, rho);
    }
  rep.density_positive = rep.density_min > -1e-9;
  return rep;
}

VerifyReport verify_solution(const OmegaSolution& sol) {
  VerifyReport vr;
  const EllipticFrame& fr = sol.fr;
  double n = sol.p.n, T = fr.T;
  // shift and parity relations of omega, away from the poles
  for (Cplx v : {Cplx(0.23, -0.31 * T), Cplx(0.71, 0.12 * T),
                 Cplx(0.39, -0.77 * T)}) {
    Cplx o1 = omega(sol, 1, v), o2 = omega(sol, 2, v);
    double scale = std::max({1.0, std::abs(o1), std::abs(o2)});
    vr.ext_residual = std::max(
        {vr.ext_residual, std::abs(omega(sol, 1, -v) + o1) / scale,
         std::abs(omega(sol, 2, 2.0 - v) + o2) / scale,
         std::abs(o1 + omega(sol, 1, v - 2.0) - n * o2) / scale,
         std::abs(o2 + omega(sol, 2, v + 2.0) - n * o1) / scale,
         std::abs(omega(sol, 1, v + 2.0 * kI * T) - o1) / scale});
  }
  // functional equations on both cuts through the full W assembly
  SMaps s = fr.smaps();
  for (int i = 1; i <= 9; ++i) {
    double tau = T * i / 10;
    {
      double x = x_of_v(fr, Cplx(1, -tau)).real();
      Cplx xp_dn = kI * std::sqrt(-fr.quartic(x)) / fr.c;  // x'(1 - i tau)
      Cplx w_up = W_part(sol.p, fr, 1, x) +
                  omega(sol, 1, Cplx(1, tau)) / std::conj(xp_dn);
      Cplx w_dn = W_part(sol.p, fr, 1, x) + omega(sol, 1, Cplx(1, -tau)) / xp_dn;
      Cplx w2s = W_part(sol.p, fr, 2, x) + omega(sol, 2, Cplx(1, -tau)) / xp_dn;
      double srat = s.a_is_one() ? 0.0 : -1.0 / (x - s.s2_inf());
      Cplx lhs = w_up + w_dn - n * w2s;
      Cplx rhs = x - n * sol.p.u2 * srat;
      vr.fe_residual = std::max(vr.fe_residual,
                                std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    {
      double x = x_of_v(fr, Cplx(0, -tau)).real();  // on C2 = s_2(cut 2)
      Cplx xp_dn = -kI * std::sqrt(-fr.quartic(x)) / fr.c;  // x'(-i tau)
      Cplx w_up = W_part(sol.p, fr, 2, x) +
                  omega(sol, 2, Cplx(0, tau)) / std::conj(xp_dn);
      Cplx w_dn = W_part(sol.p, fr, 2, x) + omega(sol, 2, Cplx(0, -tau)) / xp_dn;
      Cplx w1v = W_part(sol.p, fr, 1, x) + omega(sol, 1, Cplx(0, -tau)) / xp_dn;
      double srat = s.a_is_one() ? 0.0 : -1.0 / (x - s.s2_inf());
      double v2s = s.s1p(x) * s.s1(x);
      Cplx lhs = w_up + w_dn - n * w1v;
      Cplx rhs = v2s + n * sol.p.u1 * srat;
      vr.fe_residual = std::max(vr.fe_residual,
                                std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
  }
  // Large-x decay x W^(i) -> u_i. Measured as the moment F_0 (which is the
  // limit value, by the spectral representation) plus pointwise agreement of
  // x W with the moment series at a few x far outside the cuts. Extrapolating
  // x W directly at very large x is hopeless: W_part and omega/x' there cancel
  // through a triple pole, amplifying parametrization error like x^3.
  // Evaluation points a few cut radii out: close enough that the pole of
  // omega at v(infinity) is still far (its cancellation against W_part
  // amplifies rounding like x^3), far enough that 14 moments suffice.
  double R = std::max({std::abs(fr.g1m), fr.g1p, std::abs(fr.g2m), fr.g2p, 1.0});
  double side = (!s.a_is_one() && s.s2_inf() > 0) ? -1.0 : 1.0;
  auto tail = [&](int color, double u) {
    auto F = resolvent_moments(sol, color, 14);
    double err = std::abs(F[0] - u);
    for (double fac : {3.0, 4.5, 6.0}) {
      double x = side * R * fac;
      double series = 0, xp = 1;
      for (int l = 0; l <= 14; ++l) {
        series += F[l] / xp;
        xp *= x;
      }
      err = std::max(err, std::abs(x * resolvent_W(sol, color, x) - series));
    }
    return err;
  };
  vr.large_x_err1 = tail(1, sol.p.u1);
  vr.large_x_err2 = tail(2, sol.p.u2);
  return vr;
}

}  // namespace twofold
