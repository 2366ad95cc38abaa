#include <twofold/critical.hpp>
#include <twofold/solver.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace twofold {

namespace {

constexpr double kPi = std::numbers::pi;
const Cplx kI{0, 1};

}  // namespace

double kappa_b(double b, double w) {
  return b * std::cos(kPi * b * w) * std::sin(kPi * w) -
         std::sin(kPi * b * w) * std::cos(kPi * w);
}

double solve_w1_a1(double r, double b) {
  if (!(r > 0) || !(b > 0 && b < 0.5))
    throw std::domain_error("solve_w1_a1: need r > 0 and b in (0,1/2)");
  // kappa_b(w)/kappa_b(1-w) increases from 0 to infinity on (0,1)
  auto f = [&](double w) {
    return std::log(kappa_b(b, w) / kappa_b(b, 1 - w)) - std::log(r);
  };
  double lo = 1e-12, hi = 1 - 1e-12;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

namespace {

// amplitude of the trigonometric parametrization at a = 1:
// Phi = (4 u sin(pi b) / (b g_b(w1)))^{1/2}
double a1_phi(double u, double b, double w1) {
  double gb = std::sqrt(kappa_b(b, w1) * kappa_b(b, 1 - w1));
  return std::sqrt(4 * u * std::sin(kPi * b) / (b * gb));
}

void fill_betas(CriticalPoint& cp);  // defined with the F3 helpers below

void fill_lam_del(CriticalPoint& cp) {
  Cplx c1 = std::cos(kPi * cp.w1);
  Cplx del = (cp.g1p - cp.g1m) * (1.0 + c1) / (1.0 - c1);
  cp.del = del.real();
  cp.lam = cp.g1p + cp.del;
}

}  // namespace

CriticalPoint critical_point_a1(double u, double r, double b) {
  CriticalPoint cp;
  cp.b = b;
  cp.a = 1;
  cp.u = u;
  cp.r = r;
  double w1 = solve_w1_a1(r, b);
  cp.w1 = cp.w2 = w1;
  double phi = a1_phi(u, b, w1);
  double sb1 = std::sin(kPi * b * (1 - w1)), sbw = std::sin(kPi * b * w1);
  double cb1 = std::cos(kPi * b * (1 - w1)), cbw = std::cos(kPi * b * w1);
  double sw = std::sin(kPi * w1), cw = std::cos(kPi * w1);
  double pref = 1.0 / (b * std::sin(kPi * b));
  cp.h1 = (1 / phi) * pref * std::sqrt(sb1) * sbw / std::sqrt(sw);
  cp.h2 = (1 / phi) * pref * std::sqrt(sbw) * sb1 / std::sqrt(sw);
  cp.g1p = phi * b * cb1 * std::sqrt(sw) / std::sqrt(sb1);
  cp.g1m = phi * (b * sw * cb1 - (1 - cw) * sb1) / std::sqrt(sw * sb1);
  cp.g2p = phi * b * cbw * std::sqrt(sw) / std::sqrt(sbw);
  cp.g2m = phi * (b * cbw * sw - (1 + cw) * sbw) / std::sqrt(sw * sbw);
  cp.residual = std::abs(kappa_b(b, w1) / kappa_b(b, 1 - w1) - r);
  fill_lam_del(cp);
  fill_betas(cp);
  return cp;
}

PottsCritical potts_critical(double Q) {
  if (!(Q > 0 && Q < 4))
    throw std::domain_error("potts_critical: need 0 < Q < 4");
  double n = std::sqrt(Q);
  double b = std::acos(n / 2) / kPi;
  PottsCritical pc;
  pc.Q = Q;
  auto cp = critical_point_a1(std::sqrt(n), n, b);
  pc.t_c = cp.h2 * cp.h2;
  pc.J_c = n * (cp.h1 / cp.h2) * (cp.h1 / cp.h2);
  pc.K_c = std::log1p(pc.J_c);
  // symmetric model with u1 = u2 = 1: h1 = h2, hence J* = sqrt(Q)
  double hs = 1.0 / (2 * std::sqrt(2.0) * std::sqrt(2 + n));
  pc.t_selfdual = hs * hs;
  pc.J_selfdual = n;
  return pc;
}

namespace {

// value and first two derivatives in w
struct F3 {
  Cplx f, d1, d2;
};

F3 cos_lin(double c, Cplx w) {
  return {std::cos(c * w), -c * std::sin(c * w), -c * c * std::cos(c * w)};
}

// sin(c w) / sin(pi w)
F3 sin_ratio(double c, Cplx w) {
  Cplx N = std::sin(c * w), Np = c * std::cos(c * w), Npp = -c * c * N;
  Cplx D = std::sin(kPi * w), Dp = kPi * std::cos(kPi * w), Dpp = -kPi * kPi * D;
  Cplx f = N / D;
  Cplx d1 = (Np * D - N * Dp) / (D * D);
  Cplx d2 = (Npp * D - N * Dpp) / (D * D) - 2.0 * Dp * (Np * D - N * Dp) / (D * D * D);
  return {f, d1, d2};
}

F3 sin_lin(double c, Cplx w) {
  return {std::sin(c * w), c * std::cos(c * w), -c * c * std::sin(c * w)};
}

// cos(c w) / sin(pi w)
F3 cos_ratio(double c, Cplx w) {
  Cplx N = std::cos(c * w), Np = -c * std::sin(c * w), Npp = -c * c * N;
  Cplx D = std::sin(kPi * w), Dp = kPi * std::cos(kPi * w), Dpp = -kPi * kPi * D;
  Cplx f = N / D;
  Cplx d1 = (Np * D - N * Dp) / (D * D);
  Cplx d2 = (Npp * D - N * Dpp) / (D * D) - 2.0 * Dp * (Np * D - N * Dp) / (D * D * D);
  return {f, d1, d2};
}

// composition g(w) = f(1 - w)
F3 reflect(const F3& f) { return {f.f, -f.d1, f.d2}; }

// Laurent data in the symmetric (a = 1) basis: the four edge conditions
// become a linear system in the four unknown coefficients, the residues
// being -u1, -u2. Both operators differentiate in the single marked point.
void fill_betas(CriticalPoint& cp) {
  double b = cp.b;
  double u1 = cp.u * std::sqrt(cp.r), u2 = cp.u / std::sqrt(cp.r);
  Cplx w = cp.w1;
  Cplx b10 = -u1, b20 = -u2;
  struct Row {
    F3 f1, f2;
    double sign;
  };
  Row rows[4] = {
      {reflect(sin_lin(kPi * b, 1.0 - w)), sin_lin(kPi * b, w), +1},
      {reflect(sin_lin(kPi * (1 - b), 1.0 - w)), sin_lin(kPi * (1 - b), w), -1},
      {reflect(cos_ratio(kPi * (1 - b), 1.0 - w)), cos_ratio(kPi * (1 - b), w), +1},
      {reflect(cos_ratio(kPi * b, 1.0 - w)), cos_ratio(kPi * b, w), -1},
  };
  Eigen::Matrix4cd M;
  Eigen::Vector4cd rhs;
  for (int k = 0; k < 4; ++k) {
    const Row& R = rows[k];
    M(k, 0) = R.f1.d1;
    M(k, 1) = R.f1.d2 / 2.0;
    M(k, 2) = R.sign * R.f2.d1;
    M(k, 3) = R.sign * R.f2.d2 / 2.0;
    rhs(k) = -(b10 * R.f1.f + R.sign * b20 * R.f2.f);
  }
  Eigen::Vector4cd sol = M.fullPivLu().solve(rhs);
  cp.lc[0][0] = b10;
  cp.lc[0][1] = sol(0);
  cp.lc[0][2] = sol(1);
  cp.lc[1][0] = b20;
  cp.lc[1][1] = sol(2);
  cp.lc[1][2] = sol(3);
  cp.lc_beta = true;
}

// Laurent data of omega at (w1, w2) for the general (a != 1) blocks: the four
// edge-vanishing conditions as a linear system in alpha_{1|1}, alpha_{1|2},
// alpha_{2|1}, alpha_{2|2}, the residues alpha_{j|0} being fixed by u1, u2.
struct GeneralAlphas {
  Cplx a10, a11, a12;  // block at w1
  Cplx a20, a21, a22;  // block at w2
  Cplx extra;          // residual of the fifth (extra) condition
  Cplx hmatch;         // residual of the matching of the two h1 inversions
};

GeneralAlphas general_alphas(double b, Cplx w1, Cplx w2, double u1, double u2,
                             double a) {
  double n = 2 * std::cos(kPi * b);
  GeneralAlphas G;
  G.a10 = -2 * (2 * u1 - n * u2) / (4 - n * n);
  G.a20 = 2 * (n * u1 - 2 * u2) / (4 - n * n);

  // rows: pairs of functions applied by D1 (in w1) and D2 (in 1 - w2)
  struct Row {
    F3 f1, f2;
    double sign;
  };
  Row rows[4] = {
      {cos_lin(kPi * b, w1), reflect(cos_lin(kPi * b, 1.0 - w2)), +1},
      {cos_lin(kPi * (1 - b), w1), reflect(cos_lin(kPi * (1 - b), 1.0 - w2)), -1},
      {sin_ratio(kPi * b, w1), reflect(sin_ratio(kPi * b, 1.0 - w2)), -1},
      {sin_ratio(kPi * (1 - b), w1), reflect(sin_ratio(kPi * (1 - b), 1.0 - w2)),
       +1},
  };
  Eigen::Matrix4cd M;
  Eigen::Vector4cd rhs;
  for (int k = 0; k < 4; ++k) {
    const Row& R = rows[k];
    M(k, 0) = R.f1.d1;
    M(k, 1) = R.f1.d2 / 2.0;
    M(k, 2) = R.sign * R.f2.d1;
    M(k, 3) = R.sign * R.f2.d2 / 2.0;
    rhs(k) = -(G.a10 * R.f1.f + R.sign * G.a20 * R.f2.f);
  }
  Eigen::Vector4cd sol = M.fullPivLu().solve(rhs);
  G.a11 = sol(0);
  G.a12 = sol(1);
  G.a21 = sol(2);
  G.a22 = sol(3);

  // the extra relation
  F3 e1 = cos_lin(kPi * (1 + b), w1);
  F3 e2 = reflect(cos_lin(kPi * (1 + b), 1.0 - w2));
  G.extra = (G.a10 * e1.f + G.a11 * e1.d1 + G.a12 * e1.d2 / 2.0) -
            (G.a20 * e2.f + G.a21 * e2.d1 + G.a22 * e2.d2 / 2.0);

  // matching of the two closed-form inversions of h1 (equivalently, the
  // requirement x(w2) = s2(infinity)); cross-multiplied to avoid square roots
  Cplx c1 = std::cos(kPi * w1), c2 = std::cos(kPi * w2);
  Cplx s1 = std::sin(kPi * w1), s2 = std::sin(kPi * w2);
  Cplx P12 = kPi * kPi * G.a12 / 2.0, P22 = kPi * kPi * G.a22 / 2.0;
  Cplx numA = P22 * (c2 * c2 + c2 * c1 - 2.0) + kPi * G.a21 * s2 * (c1 - c2);
  Cplx denB = -P12 * (c1 * c1 + c1 * c2 - 2.0) + kPi * G.a11 * s1 * (c1 - c2);
  G.hmatch = numA * denB + 4.0 * a * a * s1 * s1 * s2 * s2 * P12 * P22;
  return G;
}

// Inversion of the Laurent data: h's and cut endpoints. Products of the two
// determinations are square-root free, so h1, h2 come out as plain square
// roots; the endpoint formulas share one sqrt per block whose sign is fixed
// by the cut orientation.
void fill_from_alphas(CriticalPoint& cp, const GeneralAlphas& G) {
  double n = 2 * std::cos(kPi * cp.b), a = cp.a;
  Cplx c1 = std::cos(kPi * cp.w1), c2 = std::cos(kPi * cp.w2);
  Cplx s1 = std::sin(kPi * cp.w1), s2 = std::sin(kPi * cp.w2);
  Cplx P12 = kPi * kPi * G.a12 / 2.0, P22 = kPi * kPi * G.a22 / 2.0;
  Cplx numA = P22 * (c2 * c2 + c2 * c1 - 2.0) + kPi * G.a21 * s2 * (c1 - c2);
  Cplx denB = -P12 * (c1 * c1 + c1 * c2 - 2.0) + kPi * G.a11 * s1 * (c1 - c2);
  double pref = 1.0 / ((4 - n * n) * (1 - a * a) * (1 - a * a));
  Cplx dc = c1 - c2;
  Cplx h1sq = -pref * dc * dc / (s2 * s2) * numA / (P22 * denB);
  Cplx h2sq = -pref * dc * dc / (s1 * s1) * denB / (P12 * numA);
  cp.h1 = std::sqrt(std::abs(h1sq.real()));
  cp.h2 = std::sqrt(std::abs(h2sq.real()));

  double q = std::sqrt(4 - n * n) / 2;
  Cplx r12 = std::sqrt(P12), r22 = std::sqrt(P22);
  Cplx g1p = q * (-P12 * c1 / s1 - kPi * G.a11) / r12;
  Cplx g1m = -q * (P12 * (2.0 - c1) + kPi * G.a11 * s1) / (s1 * r12);
  if (g1p.real() < g1m.real()) {
    g1p = -g1p;
    g1m = -g1m;
  }
  Cplx g2p = q * (P22 * c2 / s2 + kPi * G.a21) / r22;
  Cplx g2m = -q * (P22 * (2.0 + c2) - kPi * G.a21 * s2) / (s2 * r22);
  if (g2p.real() < g2m.real()) {
    g2p = -g2p;
    g2m = -g2m;
  }
  cp.g1p = g1p.real();
  cp.g1m = g1m.real();
  cp.g2p = g2p.real();
  cp.g2m = g2m.real();
  cp.lc[0][0] = G.a10;
  cp.lc[0][1] = G.a11;
  cp.lc[0][2] = G.a12;
  cp.lc[1][0] = G.a20;
  cp.lc[1][1] = G.a21;
  cp.lc[1][2] = G.a22;
  fill_lam_del(cp);
}

// leading coefficient of the spectral density far down the cylinder (the
// e^{-i pi (2-b) v} order); its sign flips at a = a_max
Cplx dense_edge_coeff(double b, Cplx w1, Cplx w2, const GeneralAlphas& G) {
  // contribution of the two blocks, with the block-2 phases e^{+-i pi b}
  auto term = [&](Cplx w, Cplx ph_m, Cplx ph_p, Cplx a0, Cplx a1, Cplx a2) {
    double c = kPi * (2 - b);
    // f(w) = ph_m e^{i c w} + ph_p e^{-i c w}, apply a0 + a1 d/dw + a2/2 d2/dw2
    Cplx em = std::exp(kI * c * w), ep = std::exp(-kI * c * w);
    Cplx f = ph_m * em + ph_p * ep;
    Cplx d1 = kI * c * (ph_m * em - ph_p * ep);
    Cplx d2 = -c * c * f;
    return a0 * f + a1 * d1 + a2 * d2 / 2.0;
  };
  Cplx eb = std::exp(kI * kPi * b), ebc = std::exp(-kI * kPi * b);
  Cplx t1 = term(w1, 0.25, 0.25, G.a10, G.a11, G.a12);
  Cplx t2 = term(w2, 0.25 * eb, 0.25 * ebc, G.a20, G.a21, G.a22);
  return t1 + t2;
}

}  // namespace

std::pair<Cplx, Cplx> solve_w1w2_general(double r, double a, double b) {
  if (!(r > 0) || !(a > 0) || !(b > 0 && b < 0.5))
    throw std::domain_error("solve_w1w2_general: parameters out of range");
  double u1 = std::sqrt(r), u2 = 1 / std::sqrt(r);
  double wstar = solve_w1_a1(r, b);
  if (std::abs(a - 1) < 1e-12) return {wstar, wstar};

  auto resid = [&](Cplx w1, Cplx w2, double aa, Cplx out[2]) {
    GeneralAlphas G = general_alphas(b, w1, w2, u1, u2, aa);
    double s1 = std::max(1.0, std::abs(G.a10) + std::abs(G.a11) + std::abs(G.a12));
    double s2 = std::max(
        1.0, std::abs(G.a12) * std::abs(G.a22) * std::pow(kPi, 4) / 4);
    out[0] = G.extra / s1;
    out[1] = G.hmatch / s2;
  };
  auto newton = [&](Cplx& w1, Cplx& w2, double aa) -> double {
    Cplx res[2];
    resid(w1, w2, aa, res);
    double cur = std::max(std::abs(res[0]), std::abs(res[1]));
    for (int it = 0; it < 60 && cur > 1e-13; ++it) {
      const double h = 1e-7;
      Cplx r1[2], r2[2];
      resid(w1 + h, w2, aa, r1);
      resid(w1, w2 + h, aa, r2);
      Eigen::Matrix2cd J;
      Eigen::Vector2cd rv;
      for (int k = 0; k < 2; ++k) {
        J(k, 0) = (r1[k] - res[k]) / h;
        J(k, 1) = (r2[k] - res[k]) / h;
        rv(k) = res[k];
      }
      Eigen::Vector2cd step = J.fullPivLu().solve(-rv);
      double lam = 1;
      bool moved = false;
      for (int half = 0; half < 10; ++half, lam *= 0.5) {
        Cplx n1 = w1 + lam * step(0), n2 = w2 + lam * step(1);
        Cplx rn[2];
        resid(n1, n2, aa, rn);
        double nn = std::max(std::abs(rn[0]), std::abs(rn[1]));
        if (nn < cur) {
          w1 = n1;
          w2 = n2;
          res[0] = rn[0];
          res[1] = rn[1];
          cur = nn;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    return cur;
  };

  // continuation in the bending weight from a = 1, where w1 = w2 = w*(r).
  // A tiny imaginary seed offset lets the iterates leave the real axis when
  // the branch does (w1 through 0 into iR+, w2 through 1 into 1 - iR+).
  Cplx w1 = wstar, w2 = wstar;
  double acur = 1, target = a;
  double da = (target - 1) / 4;
  if (da == 0) return {w1, w2};
  int guard = 0;
  while (std::abs(target - acur) > 0 && guard++ < 200) {
    double anext = acur + da;
    if ((da > 0 && anext > target) || (da < 0 && anext < target)) anext = target;
    Cplx t1 = w1 + Cplx(0, 1e-9), t2 = w2 - Cplx(0, 1e-9);
    double r0 = newton(t1, t2, anext);
    if (r0 < 1e-11) {
      w1 = t1;
      w2 = t2;
      acur = anext;
      da *= 2;
    } else {
      da *= 0.5;
      if (std::abs(da) < 1e-9 * std::max(1.0, std::abs(target - 1)))
        throw std::domain_error(
            "solve_w1w2_general: continuation stalled; no admissible branch");
    }
  }
  if (std::abs(w1.imag()) < 1e-8) w1 = Cplx(w1.real(), 0);
  if (std::abs(w2.imag()) < 1e-8) w2 = Cplx(w2.real(), 0);
  return {w1, w2};
}

CriticalPoint critical_point_general(double u, double r, double a, double b) {
  if (std::abs(a - 1) < 1e-12) return critical_point_a1(u, r, b);
  CriticalPoint cp;
  cp.b = b;
  cp.a = a;
  cp.u = u;
  cp.r = r;
  auto [w1, w2] = solve_w1w2_general(r, a, b);
  cp.w1 = w1;
  cp.w2 = w2;
  double u1 = u * std::sqrt(r), u2 = u / std::sqrt(r);
  GeneralAlphas G = general_alphas(b, w1, w2, u1, u2, a);
  cp.residual = std::max(std::abs(G.extra), std::abs(G.hmatch));
  fill_from_alphas(cp, G);

  // positivity of the leading edge behavior, calibrated against a point just
  // off a = 1 on the same (r, b) slice, which the closed forms show is dense
  auto [v1, v2] = solve_w1w2_general(r, 1 + 0.01 * ((a >= 1) ? 1 : -1), b);
  GeneralAlphas Gref =
      general_alphas(b, v1, v2, u1, u2, 1 + 0.01 * ((a >= 1) ? 1 : -1));
  Cplx cref = dense_edge_coeff(b, v1, v2, Gref);
  Cplx cthis = dense_edge_coeff(b, w1, w2, G);
  double proj = (cthis * std::conj(cref)).real() / std::norm(cref);
  if (proj < -1e-8)
    cp.regime = Regime::invalid_positivity;
  else if (std::abs(proj) < 1e-8)
    cp.regime = Regime::dilute_boundary;
  return cp;
}

CriticalPoint critical_point_nzero(double u, double r, double a) {
  CriticalPoint cp;
  cp.b = 0.5;
  cp.a = a;
  cp.u = u;
  cp.r = r;
  double r23 = std::pow(r, 2.0 / 3.0);
  double eta = std::sqrt(4 * a * a * r23 + (1 - r23) * (1 - r23));
  cp.w1 = std::acos(2 / eta - 1) / kPi;
  cp.w2 = std::acos(1 - 2 * r23 / eta) / kPi;
  double su = std::sqrt(u);
  cp.h1 = (1 / su) * std::pow(r, -7.0 / 12.0) / (4 * (a * a - 1)) *
          (eta - 1 - r23) * std::sqrt((eta - 1 + r23) / (eta + 1 - r23));
  cp.h2 = (1 / su) * std::pow(r, -1.0 / 12.0) / (4 * (a * a - 1)) *
          (eta - 1 - r23) * std::sqrt((eta + 1 - r23) / (eta - 1 + r23));
  cp.g1p = 2 * su * std::pow(r, 0.25);
  cp.g1m = -cp.g1p;
  cp.g2p = 2 * su * std::pow(r, -0.25);
  cp.g2m = -cp.g2p;
  fill_lam_del(cp);
  return cp;
}

double atow(double b, Cplx w1) {
  Cplx s2w = std::sin(2 * kPi * w1), s2bw = std::sin(2 * kPi * b * w1);
  Cplx c2w = std::cos(2 * kPi * w1), c2bw = std::cos(2 * kPi * b * w1);
  Cplx sw = std::sin(kPi * w1);
  Cplx v = (b * s2w * (2.0 + c2bw) - s2bw * (2.0 + c2w)) /
           (sw * sw * (b * s2w - s2bw));
  return v.real();
}

double symmetric_H(double b, Cplx w1) {
  Cplx sw = std::sin(kPi * w1), cw = std::cos(kPi * w1);
  Cplx sbw = std::sin(kPi * b * w1), s2bw = std::sin(2 * kPi * b * w1);
  Cplx s2w = std::sin(2 * kPi * w1);
  Cplx num = 4 * b * cw * cw *
             (-b * b * sw * sw * cw - 0.5 * b * sw * s2bw + 2.0 * cw * sbw * sbw);
  Cplx den = sw * sw * sw * (b * s2w - s2bw);
  return (num / den).real();
}

std::pair<double, double> a_max(double b) {
  if (!(b > 0 && b < 0.5)) throw std::domain_error("a_max: need b in (0,1/2)");
  // along the symmetric line w2 = 1 - w1 with a = a(w1), the coefficient of
  // the leading edge mode of the density vanishes at the dilute boundary
  auto f = [&](double w) {
    double a = atow(b, w);
    GeneralAlphas G = general_alphas(b, w, 1.0 - w, 1, 1, a);
    return dense_edge_coeff(b, w, 1.0 - w, G).real();
  };
  double lo = 0.5 + 1e-6, hi = 1 - 1e-3;
  double flo = f(lo);
  const int ns = 2000;
  bool found = false;
  for (int i = 1; i <= ns; ++i) {
    double x = lo + (hi - lo) * i / double(ns);
    double fx = f(x);
    if ((fx < 0) != (flo < 0)) {
      hi = x;
      found = true;
      break;
    }
    lo = x;
    flo = fx;
  }
  if (!found) throw std::domain_error("a_max: no sign change in (1/2, 1)");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    ((f(mid) < 0) == (flo < 0) ? lo : hi) = mid;
    if (hi - lo < 1e-15) break;
  }
  double w = 0.5 * (lo + hi);
  return {w, atow(b, w)};
}

CriticalPoint symmetric_bending(double a, double b, double u) {
  if (!(a > 0)) throw std::domain_error("symmetric_bending: need a > 0");
  double n = 2 * std::cos(kPi * b);
  if (std::abs(a - 1) < 1e-12) return critical_point_a1(u, 1, b);
  auto [wmax, amax] = a_max(b);

  // locate w1: real branch for a >= (2/5)(1+b^2), imaginary otherwise
  Cplx w1;
  double athr = 0.4 * (1 + b * b);
  if (a >= athr) {
    // a(w1) increases through 1 at w1 = 1/2; scan the half-interval that can
    // contain the root (near w1 = 0 the expression is a 0/0 ratio and noisy)
    double lo = (a >= 1) ? 0.5 : 1e-3, hi = (a >= 1) ? 1 - 1e-6 : 0.5;
    double flo = atow(b, lo) - a;
    const int ns = 4000;
    bool found = false;
    double plo = lo;
    for (int i = 1; i <= ns; ++i) {
      double x = lo + (hi - lo) * i / (ns + 1.0);
      double fx = atow(b, x) - a;
      if ((fx < 0) != (flo < 0)) {
        // refine in [plo, x]
        double L = plo, H = x;
        for (int it = 0; it < 200; ++it) {
          double mid = 0.5 * (L + H);
          ((atow(b, mid) - a < 0) == (flo < 0) ? L : H) = mid;
          if (H - L < 1e-15) break;
        }
        w1 = 0.5 * (L + H);
        found = true;
        break;
      }
      plo = x;
      flo = fx;
    }
    if (!found)
      throw std::domain_error("symmetric_bending: no w1 on the real branch");
  } else {
    // pure imaginary branch w1 = i y; below y ~ 1e-2 the expression is the
    // same 0/0 ratio as at w1 -> 0 and too noisy to bracket in
    double lo = 1e-2, hi = 50;
    auto g = [&](double y) { return atow(b, Cplx(0, y)) - a; };
    double flo = g(lo);
    const int ns = 4000;
    bool found = false;
    double plo = lo;
    for (int i = 1; i <= ns; ++i) {
      double y = lo * std::pow(hi / lo, i / (ns + 1.0));
      double fy = g(y);
      if ((fy < 0) != (flo < 0)) {
        double L = plo, H = y;
        for (int it = 0; it < 200; ++it) {
          double mid = 0.5 * (L + H);
          ((g(mid) < 0) == (flo < 0) ? L : H) = mid;
          if (H - L < 1e-15 * H) break;
        }
        w1 = Cplx(0, 0.5 * (L + H));
        found = true;
        break;
      }
      plo = y;
      flo = fy;
    }
    if (!found)
      throw std::domain_error("symmetric_bending: no w1 on the imaginary branch");
  }

  CriticalPoint cp;
  cp.b = b;
  cp.a = a;
  cp.u = u;
  cp.r = 1;
  cp.w1 = w1;
  cp.w2 = 1.0 - w1;
  double H = symmetric_H(b, w1);
  cp.h1 = cp.h2 =
      std::sqrt(std::max(0.0, H)) /
      (std::sqrt(2 - n) * std::abs(a * a - 1) * std::sqrt(u));
  // cuts and Laurent data via the general inversion at w2 = 1 - w1
  GeneralAlphas G = general_alphas(b, cp.w1, cp.w2, u, u, a);
  cp.residual = std::max(std::abs(G.extra), std::abs(G.hmatch));
  fill_from_alphas(cp, G);
  // keep the closed-form h (identical up to rounding, and defined even where
  // the inversion loses digits)
  cp.h1 = cp.h2 =
      std::sqrt(std::max(0.0, H)) /
      (std::sqrt(2 - n) * std::abs(a * a - 1) * std::sqrt(u));
  if (w1.imag() == 0 && w1.real() > wmax + 1e-12)
    cp.regime = Regime::invalid_positivity;
  else if (w1.imag() == 0 && std::abs(w1.real() - wmax) <= 1e-12)
    cp.regime = Regime::dilute_boundary;
  if (a > amax + 1e-10) cp.regime = Regime::invalid_positivity;
  return cp;
}

IsingCritical ising_critical(double a) {
  if (!(a > 0)) throw std::domain_error("ising_critical: need a > 0");
  IsingCritical ic;
  ic.H_nongeneric = (2.0 / 9.0) * (1 - 3 * a + 2 * std::pow(a, 1.5));
  ic.H_generic = (3 * a * a - 8) / 36;
  // companion roots: non-generic branch has a = (1 - 3 H P)^2, generic has
  // 1 + 3 H P = 0
  if (ic.H_nongeneric != 0) {
    double p1 = (1 - std::sqrt(a)) / (3 * ic.H_nongeneric);
    double p2 = (1 + std::sqrt(a)) / (3 * ic.H_nongeneric);
    auto defect = [&](double P) {
      double H = ic.H_nongeneric;
      return std::abs(P - 1 - 3 * H * H * P * P * P -
                      a * a * P / ((1 - 3 * H * P) * (1 - 3 * H * P)));
    };
    ic.P_nongeneric = defect(p1) < defect(p2) ? p1 : p2;
  }
  if (ic.H_generic != 0) ic.P_generic = -1 / (3 * ic.H_generic);
  return ic;
}

Cplx critical_x(const CriticalPoint& cp, Cplx v) {
  Cplx cv = std::cos(kPi * v), c1 = std::cos(kPi * cp.w1);
  return cp.lam - cp.del * (cv - 1.0) / (cv - c1);
}

namespace {

Cplx critical_xprime(const CriticalPoint& cp, Cplx v) {
  Cplx cv = std::cos(kPi * v), c1 = std::cos(kPi * cp.w1);
  return cp.del * kPi * std::sin(kPi * v) * (1.0 - c1) / ((cv - c1) * (cv - c1));
}

}  // namespace

double critical_density(const CriticalPoint& cp, int color, double tau) {
  if (tau < 0) throw std::domain_error("critical_density: tau must be >= 0");
  double b = cp.b;
  // large enough that both zeta flavors take their trigonometric form
  double T = kZetaTrigThreshold / std::min(b, 1 - b) + 8;
  std::array<Cplx, 4> V1, V2;
  Cplx anchor1 = cp.w1, anchor2 = cp.w2;
  if (cp.lc_beta) {
    Cplx eb = std::exp(kI * kPi * b), ec = std::exp(-kI * kPi * b);
    Cplx pref = 1.0 / (4.0 * kI * std::sin(kPi * b));
    V1 = {pref * eb, -pref * ec, -pref * ec, pref * eb};
    V2 = {-pref, pref, pref, -pref};
    anchor2 = cp.w1;
  } else {
    Cplx eb = std::exp(kI * kPi * b), ec = std::exp(-kI * kPi * b);
    V1 = {0.25, 0.25, 0.25, 0.25};
    V2 = {0.25 * eb, 0.25 * ec, 0.25 * ec, 0.25 * eb};
  }
  Cplx v(0, -tau);
  Cplx num = 0;
  double fact = 1;
  for (int l = 0; l <= 2; ++l) {
    if (l > 0) fact *= l;
    if (cp.lc[0][l] != 0.0)
      num += cp.lc[0][l] / fact * zblock_Delta(color, v, anchor1, V1, b, T, l);
    if (cp.lc[1][l] != 0.0)
      num += cp.lc[1][l] / fact * zblock_Delta(color, v, anchor2, V2, b, T, l);
  }
  if (color == 1) return -(num / critical_xprime(cp, v + 1.0)).real();
  if (color != 2) throw std::domain_error("critical_density: color must be 1 or 2");
  double x = critical_x(cp, v).real();
  SMaps s{cp.a, cp.h1, cp.h2};
  return -(num / (s.s1p(x) * critical_xprime(cp, v))).real();
}

}  // namespace twofold
