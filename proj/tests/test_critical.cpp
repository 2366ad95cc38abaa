#include <doctest.h>

#include <twofold/critical.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <tuple>

using namespace twofold;
namespace {
constexpr double kPi = std::numbers::pi;

double s2_of(double a, double h1, double h2, double x) {
  return (1 - a * h2 * x) / (a * h1 + (1 - a * a) * h1 * h2 * x);
}
}  // namespace

TEST_CASE("kappa special values") {
  for (double b : {0.1, 0.25, 0.4}) {
    CHECK(kappa_b(b, 0) == 0.0);
    CHECK(std::abs(kappa_b(b, 1) - std::sin(kPi * b)) < 1e-15);
  }
  CHECK(std::abs(kappa_b(0.5, 0.5) - std::sqrt(2.0) / 4) < 1e-15);
}

TEST_CASE("marked point from the cut-weight ratio") {
  CHECK(std::abs(solve_w1_a1(1.0, 0.3) - 0.5) < 1e-12);

  for (double b : {0.15, 0.3, 0.45})
    for (double r : {2.0, 5.0, 10.0}) {
      double w = solve_w1_a1(r, b);
      CHECK(std::abs(kappa_b(b, w) / kappa_b(b, 1 - w) - r) < 1e-10 * r);
      // reciprocity
      CHECK(std::abs(solve_w1_a1(1 / r, b) - (1 - w)) < 1e-12);
    }

  // monotone in r
  double prev = 0;
  for (double r : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    double w = solve_w1_a1(r, 0.3);
    CHECK(w > prev);
    prev = w;
  }

  // small-n limit: the ratio collapses to tan^3(pi w/2)
  for (double r : {0.5, 2.0, 7.0}) {
    double w = solve_w1_a1(r, 0.4999);
    CHECK(std::abs(std::pow(std::tan(kPi * w / 2), 3) - r) < 1e-3 * r);
  }
}

TEST_CASE("closed forms without bending weight") {
  // symmetric point h = 1/(2 sqrt(2u(2+n)))
  for (double b : {0.2, 1.0 / 3, 0.45})
    for (double u : {1.0, 2.0}) {
      double n = 2 * std::cos(kPi * b);
      auto cp = critical_point_a1(u, 1.0, b);
      double href = 1.0 / (2 * std::sqrt(2 * u * (2 + n)));
      CHECK(std::abs(cp.h1 - href) < 1e-12);
      CHECK(std::abs(cp.h2 - href) < 1e-12);
      CHECK(std::abs(cp.w1.real() - 0.5) < 1e-12);
    }
  CHECK(std::abs(critical_point_a1(1.0, 1.0, 1.0 / 3).h1 -
                 1 / (2 * std::sqrt(6.0))) < 1e-12);

  // asymmetric weights: h-ratio closed form and the cut-gluing relation
  for (double r : {2.0, 0.4}) {
    double b = 0.3;
    auto cp = critical_point_a1(1.0, r, b);
    double w = cp.w1.real();
    double ratio =
        std::sqrt(std::sin(kPi * b * w) / std::sin(kPi * b * (1 - w)));
    CHECK(std::abs(cp.h1 / cp.h2 - ratio) < 1e-12);
    // a = 1: s2(x) = (1 - h2 x)/h1
    CHECK(std::abs((1 - cp.h2 * cp.g2p) / cp.h1 - cp.g1p) < 1e-10);
    CHECK(cp.g1m < cp.g1p);
    CHECK(cp.g2m < cp.g2p);
  }

  // small-n closed forms
  for (double r : {0.5, 3.0}) {
    double u = 1.3;
    auto cp = critical_point_a1(u, r, 0.4999);
    double h1ref = 0.5 / std::sqrt(u) * std::pow(r, -0.25) /
                   (1 + std::pow(r, -2.0 / 3));
    double h2ref = 0.5 / std::sqrt(u) * std::pow(r, 0.25) /
                   (1 + std::pow(r, 2.0 / 3));
    CHECK(std::abs(cp.h1 - h1ref) < 1e-3);
    CHECK(std::abs(cp.h2 - h2ref) < 1e-3);
    CHECK(std::abs(cp.g1p - 2 * std::sqrt(u) * std::pow(r, 0.25)) < 1e-3);
    CHECK(std::abs(cp.g1m + 2 * std::sqrt(u) * std::pow(r, 0.25)) < 1e-3);
    CHECK(std::abs(cp.g2p - 2 * std::sqrt(u) * std::pow(r, -0.25)) < 1e-3);
  }
}

TEST_CASE("Potts critical couplings") {
  auto p1 = potts_critical(1.0);
  CHECK(std::abs(p1.t_c - 1.0 / 24) < 1e-12);
  CHECK(std::abs(p1.J_c - 1.0) < 1e-12);
  CHECK(std::abs(p1.K_c - std::log(2.0)) < 1e-12);
  // self-dual at Q = 1 only
  CHECK(std::abs(p1.t_selfdual - p1.t_c) < 1e-12);
  CHECK(std::abs(1.0 / p1.J_c - p1.J_c) < 1e-12);

  auto p2 = potts_critical(2.0);
  // frozen after first computation
  CHECK(std::abs(p2.t_c - 0.028470065541656) < 1e-12);
  CHECK(std::abs(p2.J_c - 1.618033988749892) < 1e-12);
  CHECK(std::abs(p2.K_c - 0.962423650119206) < 1e-12);
  // not self-dual: J differs from sqrt(Q) by a clear margin
  CHECK(std::abs(p2.J_c - std::sqrt(2.0)) > 0.2);
  // symmetric-model comparison column: t* = 1/(8(2+n))
  double n = std::sqrt(2.0);
  CHECK(std::abs(p2.t_selfdual - 1.0 / (8 * (2 + n))) < 1e-12);
  CHECK(std::abs(p2.J_selfdual - n) < 1e-12);

  CHECK_THROWS(potts_critical(4.0));
  CHECK_THROWS(potts_critical(0.0));
}

TEST_CASE("marked points with bending weight") {
  // delegation at a = 1
  auto [v1, v2] = solve_w1w2_general(2.0, 1.0, 0.3);
  CHECK(std::abs(v1 - solve_w1_a1(2.0, 0.3)) < 1e-12);
  CHECK(v1 == v2);

  // symmetric weights force w2 = 1 - w1
  for (double a : {1.3, 1.5, 0.8}) {
    auto [w1, w2] = solve_w1w2_general(1.0, a, 0.3);
    CHECK(std::abs(w1 + w2 - 1.0) < 1e-10);
    CHECK(std::abs(w1.imag()) < 1e-10);
  }

  // regular limit toward a = 1
  // close enough for the linear drift in a - 1 to be negligible, far enough
  // that the (1 - a^2)^{-2} cancellation in the inversion stays benign
  auto cg = critical_point_general(1.0, 2.0, 1 + 3e-9, 0.3);
  auto c0 = critical_point_a1(1.0, 2.0, 0.3);
  CHECK(std::abs(cg.h1 - c0.h1) < 1e-8);
  CHECK(std::abs(cg.h2 - c0.h2) < 1e-8);
  CHECK(std::abs(cg.w1 - c0.w1) < 1e-6);

  // small-n limit: eta parametrization of the marked points
  for (double a : {1.5, 2.5}) {
    double r = 2.0, r23 = std::pow(r, 2.0 / 3);
    double eta = std::sqrt(4 * a * a * r23 + (1 - r23) * (1 - r23));
    auto [w1, w2] = solve_w1w2_general(r, a, 0.4999);
    CHECK(std::abs(1.0 + std::cos(kPi * w1) - 2 / eta) < 1e-3);
    CHECK(std::abs(1.0 - std::cos(kPi * w2) - 2 * r23 / eta) < 1e-3);
  }
}

TEST_CASE("general critical point") {
  // small-n limit against the closed forms
  auto cg = critical_point_general(1.0, 2.0, 1.5, 0.4999);
  auto cz = critical_point_nzero(1.0, 2.0, 1.5);
  CHECK(std::abs(cg.h1 - cz.h1) < 1e-3);
  CHECK(std::abs(cg.h2 - cz.h2) < 1e-3);
  CHECK(std::abs(cg.w1 - cz.w1) < 1e-3);
  CHECK(std::abs(cg.w2 - cz.w2) < 1e-3);
  CHECK(std::abs(cg.g1m - cz.g1m) < 1e-3);
  CHECK(std::abs(cg.g1p - cz.g1p) < 1e-3);
  CHECK(std::abs(cg.g2m - cz.g2m) < 1e-3);
  CHECK(std::abs(cg.g2p - cz.g2p) < 1e-3);

  // the closed-form point sits on the codimension-1 variety
  {
    double a = 1.5, u1 = std::sqrt(2.0), u2 = 1 / std::sqrt(2.0);
    double crit = 1 - 2 * a * std::sqrt(u1) * cz.h1 -
                  2 * a * std::sqrt(u2) * cz.h2 +
                  4 * (a * a - 1) * std::sqrt(u1 * u2) * cz.h1 * cz.h2;
    CHECK(std::abs(crit) < 1e-12);
  }

  // cut gluing and the rational-map image of the second marked point
  const std::tuple<double, double, double> pts[] = {
      {2.0, 1.4, 0.35}, {0.5, 0.8, 0.42}, {3.0, 1.2, 0.25}};
  for (auto [r, a, b] : pts) {
    auto cp = critical_point_general(1.0, r, a, b);
    CHECK(cp.residual < 1e-9);
    CHECK(std::abs(s2_of(a, cp.h1, cp.h2, cp.g2p) - cp.g1p) < 1e-10);
    Cplx ximg = critical_x(cp, cp.w2);
    CHECK(std::abs(ximg - a / ((a * a - 1) * cp.h1)) < 1e-8);
    CHECK(cp.g1m < cp.g1p);
    CHECK(cp.g2m < cp.g2p);
    CHECK(cp.h1 > 0);
    CHECK(cp.h2 > 0);
  }

  // color swap: r -> 1/r exchanges the two blocks
  auto cA = critical_point_general(1.0, 2.0, 1.4, 0.35);
  auto cB = critical_point_general(1.0, 0.5, 1.4, 0.35);
  CHECK(std::abs(cA.h1 - cB.h2) < 1e-10);
  CHECK(std::abs(cA.h2 - cB.h1) < 1e-10);
  CHECK(std::abs(cA.w1 - (1.0 - cB.w2)) < 1e-10);
  CHECK(std::abs(cA.w2 - (1.0 - cB.w1)) < 1e-10);
  CHECK(std::abs(cA.g1m - cB.g2m) < 1e-10);
  CHECK(std::abs(cA.g1p - cB.g2p) < 1e-10);

  // h-exchange along r at b = 0.4: the sign of (h1 - h2)(r - 1) flips
  // between no bending and strong bending
  {
    double r = 1.5;
    auto n1 = critical_point_a1(1.0, r, 0.4);
    auto n2 = critical_point_general(1.0, r, 2.0, 0.4);
    CHECK((n1.h1 - n1.h2) * (n2.h1 - n2.h2) < 0);
  }
}

TEST_CASE("symmetric bending model") {
  // reductions of the closed-form bending relation
  for (double w : {0.55, 0.6, 0.7, 0.75}) {
    double c = std::cos(2 * kPi * w / 3);
    CHECK(std::abs(atow(1.0 / 3, w) - 4 / std::pow(1 + 2 * c, 2)) < 1e-12);
    double H1 = (2.0 / 9) * std::pow(1 - 2 * c, 2) * (5 + 2 * c) /
                std::pow(1 + 2 * c, 3);
    CHECK(std::abs(symmetric_H(1.0 / 3, w) - H1) < 1e-12);
    double cw = std::cos(kPi * w);
    CHECK(std::abs(atow(0.5, w) - 1 / (1 + cw)) < 1e-12);
    CHECK(std::abs(symmetric_H(0.5, w) - 0.5 * std::pow(cw / (1 + cw), 2)) <
          1e-12);
  }

  // a = 1 falls back to the symmetric closed form
  auto c1 = symmetric_bending(1.0, 0.3, 1.0);
  double n = 2 * std::cos(kPi * 0.3);
  CHECK(std::abs(c1.h1 - 1 / (2 * std::sqrt(2 * (2 + n)))) < 1e-12);

  // n = 1 cross-check against the known two-matrix solution
  for (double a : {1.5, 2.0, 3.0, 3.9}) {
    auto cp = symmetric_bending(a, 1.0 / 3, 1.0);
    auto ic = ising_critical(a);
    double Hcp = std::pow((1 - a * a) * cp.h1, 2);
    CHECK(std::abs(Hcp - ic.H_nongeneric) < 1e-10);
    CHECK(std::abs(s2_of(a, cp.h1, cp.h2, cp.g2p) - cp.g1p) < 1e-8);
    CHECK(cp.regime == Regime::dense_generic);
  }
  CHECK(std::abs(std::pow((1 - 4.0) * symmetric_bending(2.0, 1.0 / 3, 1.0).h1,
                          2) -
                 (2.0 / 9) * (4 * std::sqrt(2.0) - 5)) < 1e-10);

  // scaling in u
  auto cu = symmetric_bending(2.0, 1.0 / 3, 4.0);
  CHECK(std::abs(cu.h1 - symmetric_bending(2.0, 1.0 / 3, 1.0).h1 / 2) < 1e-12);

  // imaginary branch below the threshold bending weight
  auto ci = symmetric_bending(0.3, 0.3, 1.0);
  CHECK(ci.w1.real() == 0.0);
  CHECK(ci.w1.imag() > 0);
  CHECK(std::abs(atow(0.3, ci.w1) - 0.3) < 1e-8);
  CHECK(ci.h1 > 0);

  // boundary and beyond
  CHECK(symmetric_bending(4.0, 1.0 / 3, 1.0).regime == Regime::dilute_boundary);
  CHECK(symmetric_bending(4.1, 1.0 / 3, 1.0).regime ==
        Regime::invalid_positivity);
}

TEST_CASE("largest admissible bending weight") {
  auto [w, a] = a_max(1.0 / 3);
  CHECK(std::abs(w - 0.75) < 1e-10);
  CHECK(std::abs(a - 4.0) < 1e-8);

  // decreasing in the loop weight
  double prev_n = 0, prev_a = 1e300;
  for (double b : {0.4, 0.3, 0.2, 0.1}) {
    auto [wb, ab] = a_max(b);
    double nb = 2 * std::cos(kPi * b);
    CHECK(nb > prev_n);
    CHECK(ab < prev_a);
    CHECK(wb > 0.5);
    CHECK(wb < 1.0);
    prev_n = nb;
    prev_a = ab;
  }
}

TEST_CASE("two-matrix Ising comparison values") {
  auto i4 = ising_critical(4.0);
  CHECK(std::abs(i4.H_nongeneric - 10.0 / 9) < 1e-12);
  CHECK(std::abs(i4.H_generic - 10.0 / 9) < 1e-12);
  CHECK(std::abs(ising_critical(1.0).H_nongeneric) < 1e-15);

  // each branch solves the defining system
  for (double a : {2.0, 3.0, 3.9}) {
    auto ic = ising_critical(a);
    auto check_pair = [&](double H, double P) {
      double d1 = P - (1 + 3 * H * H * P * P * P +
                       a * a * P / std::pow(1 - 3 * H * P, 2));
      double d2 = 1 - (9 * H * H * P * P +
                       a * a * (1 + 3 * H * P) / std::pow(1 - 3 * H * P, 3));
      CHECK(std::abs(d1) < 1e-10);
      CHECK(std::abs(d2) < 1e-10);
    };
    check_pair(ic.H_nongeneric, ic.P_nongeneric);
    check_pair(ic.H_generic, ic.P_generic);
  }
}

TEST_CASE("critical spectral densities") {
  // symmetric no-bending point: closed-form tail of the densities
  double b = 0.35, u = 1;
  auto cp = critical_point_a1(u, 1.0, b);
  double w1 = cp.w1.real();
  double gb = std::sqrt(kappa_b(b, w1) * kappa_b(b, 1 - w1));
  double phi = std::sqrt(4 * u * std::sin(kPi * b) / (b * gb));
  double C1 = 0.5 / kPi * phi *
              std::sqrt(std::sin(kPi * w1) / std::sin(kPi * b * (1 - w1)));
  double C2 = 0.5 / kPi * phi *
              std::sqrt(std::sin(kPi * w1) / std::sin(kPi * b * w1));
  for (double tau : {5.0, 6.0}) {
    double decay = std::exp(-kPi * (1 - b) * tau);
    CHECK(std::abs(critical_density(cp, 1, tau) / (C1 * decay) - 1) < 1e-3);
    CHECK(std::abs(critical_density(cp, 2, tau) / (C2 * decay) - 1) < 1e-3);
  }

  // positivity along the cut
  for (double tau : {0.2, 0.5, 1.0, 2.0, 4.0}) {
    CHECK(critical_density(cp, 1, tau) > 0);
    CHECK(critical_density(cp, 2, tau) > 0);
  }

  // log-slope of the decay matches the dense-phase rate, with and without
  // bending weight (numerator rate pi(2-b), one unit eaten by the frame)
  auto fitrate = [](const CriticalPoint& c, int color) {
    double t1 = 4, t2 = 7;
    return -(std::log(std::abs(critical_density(c, color, t2))) -
             std::log(std::abs(critical_density(c, color, t1)))) /
           (t2 - t1);
  };
  CHECK(std::abs(fitrate(cp, 1) / (kPi * (1 - b)) - 1) < 0.02);
  auto cs = symmetric_bending(2.0, 1.0 / 3, 1.0);
  CHECK(std::abs(fitrate(cs, 1) / (kPi * (1 - 1.0 / 3)) - 1) < 0.02);
  auto cg = critical_point_general(1.0, 2.0, 1.4, 0.35);
  CHECK(std::abs(fitrate(cg, 1) / (kPi * (1 - 0.35)) - 1) < 0.02);
  CHECK(std::abs(fitrate(cg, 2) / (kPi * (1 - 0.35)) - 1) < 0.02);
  for (double tau : {0.3, 1.0, 2.0}) {
    CHECK(critical_density(cg, 1, tau) > 0);
    CHECK(critical_density(cg, 2, tau) > 0);
  }

  // edge prefactors stay positive across the whole no-bending family
  for (double w : {0.05, 0.3, 0.5, 0.7, 0.95}) {
    CHECK(kappa_b(0.3, w) > 0);
    CHECK(kappa_b(0.3, 1 - w) > 0);
  }
}

TEST_CASE("small-n critical family is everywhere admissible") {
  for (double a : {0.6, 1.5, 3.0})
    for (double r : {0.5, 1.0, 2.0}) {
      auto cp = critical_point_nzero(1.0, r, a);
      CHECK(cp.w1.real() > 0);
      CHECK(cp.w1.real() < 1);
      CHECK(cp.w2.real() > 0);
      CHECK(cp.w2.real() < 1);
      if (a > 1) {
        CHECK(cp.h1 > 0);
        CHECK(cp.h2 > 0);
      }
      CHECK(cp.g1m < cp.g1p);
      CHECK(cp.g2m < cp.g2p);
    }
}
