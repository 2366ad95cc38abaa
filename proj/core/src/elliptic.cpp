#include <twofold/elliptic.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace twofold {

namespace {

constexpr double kPi = std::numbers::pi;
const Cplx kI{0.0, 1.0};

// Gauss-Legendre nodes/weights on [-1,1], cached per order.
struct GaussRule {
  std::vector<double> x, w;
};

const GaussRule& gauss_rule(int n) {
  static std::vector<GaussRule> cache(257);
  GaussRule& r = cache.at(n);
  if (!r.x.empty()) return r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    r.x[i] = t;
    double p0 = 1, p1 = t;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (t * p1 - p0) / (t * t - 1);
    r.w[i] = 2.0 / ((1 - t * t) * dp * dp);
  }
  return r;
}

template <class F>
double gauss(F f, double a, double b, int n = 96) {
  const GaussRule& r = gauss_rule(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a), s = 0;
  for (int i = 0; i < n; ++i) s += r.w[i] * f(mid + half * r.x[i]);
  return s * half;
}

}  // namespace

Cplx theta1(Cplx v, double T, int deriv) {
  if (!(T > 0)) throw std::domain_error("theta1: T must be positive");
  if (deriv < 0 || deriv > 3) throw std::domain_error("theta1: deriv 0..3");
  double lq = -kPi * T;  // log q
  Cplx sum = 0;
  double scale = 0;
  for (int j = 0;; ++j) {
    double m = 2 * j + 1;
    double mag = std::exp(lq * (j + 0.5) * (j + 0.5) +
                          m * kPi * std::abs(v.imag()));
    Cplx trig;
    double phase = deriv % 4 == 0 || deriv % 4 == 1 ? 1.0 : -1.0;
    if (deriv % 2 == 0)
      trig = std::sin(m * kPi * v);
    else
      trig = std::cos(m * kPi * v);
    Cplx term = 2.0 * (j % 2 ? -1.0 : 1.0) * phase *
                std::pow(m * kPi, deriv) *
                std::exp(Cplx(lq * (j + 0.5) * (j + 0.5), 0.0)) * trig;
    sum += term;
    scale = std::max(scale, std::abs(sum));
    if (j > 1 && mag * std::pow(m * kPi, deriv) <
                     1e-18 * std::max(scale, 1e-300))
      break;
    if (j > 400) break;
  }
  return sum;
}

Cplx ZetaB::eval(Cplx v, int deriv) const {
  if (!(b > 0 && b < 1)) throw std::domain_error("zeta_b: b must be in (0,1)");
  if (deriv < 0 || deriv > 2) throw std::domain_error("zeta_b: deriv 0..2");
  if (trig()) {
    Cplx s = std::sin(kPi * v);
    if (std::abs(s) < 1e-14 && std::abs(std::imag(v)) < 1.0)
      return Cplx(std::numeric_limits<double>::quiet_NaN(), 0);  // pole
    Cplx z = kPi * std::exp(kI * kPi * (b - 1) * v) / s;
    if (deriv == 0) return z;
    Cplx cot = std::cos(kPi * v) / s;
    Cplx g = kI * kPi * (b - 1) - kPi * cot;
    if (deriv == 1) return z * g;
    Cplx gp = kPi * kPi * (1.0 + cot * cot);  // d/dv (-pi cot(pi v))
    return z * (g * g + gp);
  }
  // Theta quotient on the 1 x 2iT lattice. The shift ibT and modulus 2iT
  // give exactly one simple pole per period cell (at the lattice points),
  // the e^{i pi b} multiplier under v -> v+1, and 2iT periodicity; a shift
  // of ibT/2 at modulus iT would instead be iT-periodic, with extra poles
  // at Z + iT that the block construction cannot tolerate.
  double Tm = 2 * T;
  Cplx va = v + kI * (b * T);
  Cplx t0 = theta1(v, Tm), ta = theta1(va, Tm);
  if (std::abs(t0) < 1e-280)
    return Cplx(std::numeric_limits<double>::quiet_NaN(), 0);  // pole lattice
  Cplx norm = theta1(Cplx(0), Tm, 1) / theta1(kI * (b * T), Tm);
  Cplx z = norm * std::exp(kI * kPi * b * v) * ta / t0;
  if (deriv == 0) return z;
  Cplx A = theta1(va, Tm, 1) / ta, B = theta1(v, Tm, 1) / t0;
  Cplx g = kI * kPi * b + A - B;
  if (deriv == 1) return z * g;
  Cplx Ap = theta1(va, Tm, 2) / ta - A * A;
  Cplx Bp = theta1(v, Tm, 2) / t0 - B * B;
  return z * (g * g + Ap - Bp);
}

bool SMaps::a_is_one() const { return std::abs(a - 1.0) < 1e-13; }

double SMaps::s1(double x) const {
  return (1 - a * h1 * x) / (a * h2 + (1 - a * a) * h1 * h2 * x);
}
double SMaps::s2(double x) const {
  return (1 - a * h2 * x) / (a * h1 + (1 - a * a) * h1 * h2 * x);
}
double SMaps::s1p(double x) const {
  double d = a * h2 + (1 - a * a) * h1 * h2 * x;
  return (-a * h1 * d - (1 - a * h1 * x) * (1 - a * a) * h1 * h2) / (d * d);
}
double SMaps::s2p(double x) const {
  double d = a * h1 + (1 - a * a) * h1 * h2 * x;
  return (-a * h2 * d - (1 - a * h2 * x) * (1 - a * a) * h1 * h2) / (d * d);
}
double SMaps::s1_inf() const {
  if (a_is_one()) return -std::numeric_limits<double>::infinity();
  return -a / ((1 - a * a) * h2);
}
double SMaps::s2_inf() const {
  if (a_is_one()) return -std::numeric_limits<double>::infinity();
  return -a / ((1 - a * a) * h1);
}

namespace {

// Integrals of dx / sqrt(|P|) between points of one inter-branch interval
// [eL, eR]; the substitution x = e +- s^2 at the nearer branch point removes
// the endpoint singularity.
struct Quartic {
  double e1, e2, e3, e4;
  double absP(double x) const {
    return std::abs((x - e1) * (x - e2) * (x - e3) * (x - e4));
  }
  // product of the three factors other than (x - skip), absolute value
  double rest(double x, double skip) const {
    double p = 1;
    for (double e : {e1, e2, e3, e4})
      if (e != skip) p *= (x - e);
    return std::abs(p);
  }
};

double seg_integral(const Quartic& q, double eL, double eR, double alpha,
                    double beta, int n = 96) {
  if (beta <= alpha) return 0.0;
  double mid = 0.5 * (eL + eR);
  double total = 0;
  if (alpha < mid) {
    double b2 = std::min(beta, mid);
    total += gauss(
        [&](double s) { return 2.0 / std::sqrt(q.rest(eL + s * s, eL)); },
        std::sqrt(alpha - eL), std::sqrt(b2 - eL), n);
  }
  if (beta > mid) {
    double a2 = std::max(alpha, mid);
    total += gauss(
        [&](double s) { return 2.0 / std::sqrt(q.rest(eR - s * s, eR)); },
        std::sqrt(eR - beta), std::sqrt(eR - a2), n);
  }
  return total;
}

// Integral over the outer domain through infinity, from x = p (>= e4) out to
// +infinity, or from -infinity in to x = p (<= e1) when right = false.
double outer_tail(const Quartic& q, double p, bool right, int n = 96) {
  double M = 2 * std::max({std::abs(q.e1), std::abs(q.e4), 1.0}) + 1;
  auto tail = [&](double xi) {
    double r = (1 - q.e1 * xi) * (1 - q.e2 * xi) * (1 - q.e3 * xi) *
               (1 - q.e4 * xi);
    return 1.0 / std::sqrt(r);
  };
  double total = 0;
  if (right) {
    if (p < M)
      total += gauss(
          [&](double s) { return 2.0 / std::sqrt(q.rest(q.e4 + s * s, q.e4)); },
          std::sqrt(p - q.e4), std::sqrt(M - q.e4), n);
    total += gauss(tail, 0.0, 1.0 / std::max(p, M), n);
  } else {
    if (p > -M)
      total += gauss(
          [&](double s) { return 2.0 / std::sqrt(q.rest(q.e1 - s * s, q.e1)); },
          std::sqrt(q.e1 - p), std::sqrt(q.e1 + M), n);
    total += gauss(tail, 1.0 / std::min(p, -M), 0.0, n);
  }
  return total;
}

}  // namespace

EllipticFrame build_frame(double g1m, double g1p, double g2m, double g2p,
                          double a, double h1, double h2) {
  EllipticFrame fr;
  fr.g1m = g1m;
  fr.g1p = g1p;
  fr.g2m = g2m;
  fr.g2p = g2p;
  fr.a = a;
  fr.h1 = h1;
  fr.h2 = h2;
  SMaps s = fr.smaps();
  fr.e1 = g1m;
  fr.e2 = g1p;
  fr.e3 = s.s2(g2p);
  fr.e4 = s.s2(g2m);
  if (!(fr.e1 < fr.e2 && fr.e2 < fr.e3 && fr.e3 < fr.e4))
    throw std::domain_error("build_frame: branch points not ordered; cuts overlap");
  Quartic q{fr.e1, fr.e2, fr.e3, fr.e4};
  fr.sign_choice = q.absP(fr.e4 + 1) > 0 ? 1 : -1;

  double i_right = outer_tail(q, fr.e4, true);
  double i_left = outer_tail(q, fr.e1, false);
  fr.c = 1.0 / (i_right + i_left);
  fr.T = fr.c * seg_integral(q, fr.e3, fr.e4, fr.e3, fr.e4);
  fr.w1 = fr.c * i_right;

  if (s.a_is_one()) {
    fr.w2 = fr.w1;
    return fr;
  }
  double p = s.s2_inf();
  if (p > fr.e4) {
    fr.w2 = fr.c * (i_right - outer_tail(q, p, true));
  } else if (p < fr.e1) {
    fr.w2 = fr.c * (i_right + outer_tail(q, p, false));
  } else if (p > fr.e2 && p < fr.e3) {
    fr.w2 = Cplx(0, fr.T) + fr.c * seg_integral(q, fr.e2, fr.e3, p, fr.e3);
  } else {
    throw std::domain_error("build_frame: s2(inf) lies on a cut");
  }
  return fr;
}

Cplx v_of_x(const EllipticFrame& fr, double x) {
  Quartic q{fr.e1, fr.e2, fr.e3, fr.e4};
  if (x >= fr.e4)
    return Cplx(
        fr.c * (outer_tail(q, fr.e4, true) - outer_tail(q, x, true)), 0);
  if (x <= fr.e1)
    return Cplx(1.0 - fr.c * (outer_tail(q, fr.e1, false) -
                              outer_tail(q, x, false)),
                0);
  if (x >= fr.e3)  // C2 cut, +i0 side
    return Cplx(0, fr.c * seg_integral(q, fr.e3, fr.e4, x, fr.e4));
  if (x >= fr.e2)  // D1
    return Cplx(fr.c * seg_integral(q, fr.e2, fr.e3, x, fr.e3), fr.T);
  // C1 cut, +i0 side
  return Cplx(1.0, fr.c * seg_integral(q, fr.e1, fr.e2, fr.e1, x));
}

namespace {

// State for the Runge-Kutta continuation of dx/dv = sqrt(P(x))/c. When
// |x| exceeds the switch radius we integrate y = 1/x instead.
struct XState {
  Cplx x;
  bool proj;  // true: value is y = 1/x
  Cplx dref;  // last derivative, fixes the square-root branch
};

Cplx sqrtP(const EllipticFrame& fr, Cplx x) {
  return std::sqrt((x - fr.e1) * (x - fr.e2) * (x - fr.e3) * (x - fr.e4));
}

Cplx pick_branch(Cplx d, Cplx ref) {
  return std::abs(d - ref) <= std::abs(-d - ref) ? d : -d;
}

// derivative of the active coordinate
Cplx deriv(const EllipticFrame& fr, const XState& st, Cplx val, Cplx ref) {
  if (!st.proj) return pick_branch(sqrtP(fr, val) / fr.c, ref);
  // y' = -y^2 x' = -sqrt(y^4 P(1/y))/c with the branch carried continuously
  Cplx y = val;
  Cplx r = (1.0 - fr.e1 * y) * (1.0 - fr.e2 * y) * (1.0 - fr.e3 * y) *
           (1.0 - fr.e4 * y);
  return pick_branch(std::sqrt(r) / fr.c, ref);
}

void rk4_leg(const EllipticFrame& fr, XState& st, Cplx v0, Cplx v1) {
  double len = std::abs(v1 - v0);
  if (len < 1e-15) return;
  int nstep = std::max(64, static_cast<int>(len / 5e-4));
  Cplx dv = (v1 - v0) / static_cast<double>(nstep);
  // switch to y = 1/x well before the pole so the smooth projective chart
  // does the work there; the x-chart error grows like |x|^2 per step
  double Rswitch = 2.5 * std::max({std::abs(fr.e1), std::abs(fr.e4), 1.0}) + 10;
  for (int i = 0; i < nstep; ++i) {
    Cplx k1 = deriv(fr, st, st.x, st.dref);
    Cplx k2 = deriv(fr, st, st.x + 0.5 * dv * k1, st.dref);
    Cplx k3 = deriv(fr, st, st.x + 0.5 * dv * k2, st.dref);
    Cplx k4 = deriv(fr, st, st.x + dv * k3, st.dref);
    st.x += dv / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    st.dref = deriv(fr, st, st.x, st.dref);
    if (!st.proj && std::abs(st.x) > Rswitch) {
      // switch to y = 1/x; dy = -y^2 dx
      Cplx y = 1.0 / st.x;
      st.dref = -y * y * st.dref;
      st.x = y;
      st.proj = true;
    } else if (st.proj && std::abs(st.x) > 1e-12 &&
               std::abs(1.0 / st.x) < 0.5 * Rswitch) {
      Cplx x = 1.0 / st.x;
      st.dref = -x * x * st.dref;
      st.x = x;
      st.proj = false;
    }
  }
}

struct XResult {
  Cplx x, dxdv;
  bool at_infinity;
};

XResult x_of_v_impl(const EllipticFrame& fr, Cplx v) {
  // reduce via the periods 2, 2iT and evenness
  double re = std::fmod(v.real(), 2.0);
  if (re > 1.0) re -= 2.0;
  if (re < -1.0) re += 2.0;
  double im = v.imag();
  if (fr.T < kTrigThreshold) {
    im = std::fmod(im, 2.0 * fr.T);
    if (im > fr.T) im -= 2 * fr.T;
    if (im < -fr.T) im += 2 * fr.T;
  }
  Cplx vr{re, im};
  bool flipped = false;
  if (vr.real() < 0 || (vr.real() == 0 && vr.imag() > 0)) {
    vr = -vr;
    flipped = true;
  }
  // anchor on the right lobe of D2
  double xa = fr.e4 + 0.25 * (fr.e4 - fr.e1);
  Quartic q{fr.e1, fr.e2, fr.e3, fr.e4};
  double va = fr.c * (outer_tail(q, fr.e4, true) - outer_tail(q, xa, true));
  XState st{Cplx(xa), false, Cplx(std::sqrt(q.absP(xa)) / fr.c)};
  double dip = std::min(0.05, fr.T > 0 ? fr.T / 4 : 0.05);
  rk4_leg(fr, st, Cplx(va), Cplx(va, -dip));
  if (vr.imag() > 0) {
    // crossing into the upper half: pick the abscissa farthest from the
    // branch points at integer v and from the poles at w1, w2
    double best = 0.5, score = -1;
    for (double rc : {0.15, 0.3, 0.5, 0.7, 0.85}) {
      double d = std::min({rc, 1 - rc, std::abs(rc - fr.w1.real()),
                           std::abs(rc - fr.w2.real())});
      if (d > score) {
        score = d;
        best = rc;
      }
    }
    rk4_leg(fr, st, Cplx(va, -dip), Cplx(best, -dip));
    rk4_leg(fr, st, Cplx(best, -dip), Cplx(best, dip));
    rk4_leg(fr, st, Cplx(best, dip), Cplx(vr.real(), dip));
    rk4_leg(fr, st, Cplx(vr.real(), dip), vr);
  } else {
    rk4_leg(fr, st, Cplx(va, -dip), Cplx(vr.real(), -dip));
    rk4_leg(fr, st, Cplx(vr.real(), -dip), vr);
  }
  XResult res;
  if (st.proj) {
    if (std::abs(st.x) < 1e-12) {
      res.at_infinity = true;
      res.x = Cplx(std::numeric_limits<double>::infinity(), 0);
      res.dxdv = res.x;
      return res;
    }
    res.x = 1.0 / st.x;
    res.dxdv = -res.x * res.x * st.dref;
  } else {
    res.x = st.x;
    res.dxdv = st.dref;
  }
  res.at_infinity = false;
  if (flipped) res.dxdv = -res.dxdv;  // x even, so x'(-v) = -x'(v)
  if (std::abs(res.x.imag()) < 1e-9 * (1 + std::abs(res.x.real())) &&
      std::abs(vr.imag()) < 1e-13 )
    res.x.imag(0.0);
  return res;
}

}  // namespace

Cplx x_of_v(const EllipticFrame& fr, Cplx v) { return x_of_v_impl(fr, v).x; }

Cplx dx_dv(const EllipticFrame& fr, Cplx v) { return x_of_v_impl(fr, v).dxdv; }

}  // namespace twofold
