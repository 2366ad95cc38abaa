#include <doctest.h>

#include <twofold/maps.hpp>
#include <twofold/model.hpp>
#include <twofold/series.hpp>

using namespace twofold;

namespace {

Rat catalan(int m) {
  return Rat(binomial(2 * m, m)) / (m + 1);
}

// Brute-force ring oracle: cyclic words over {red-facing, green-facing} of
// length k + k' with the marked (first) triangle red-facing, k red in total;
// weight a per pair of cyclically adjacent equal letters, times h1^k h2^k'.
Rat necklace_oracle(const Rat& h1, const Rat& h2, const Rat& a, int k, int kp) {
  int len = k + kp;
  Rat sum = 0;
  for (unsigned mask = 0; mask < (1u << len); ++mask) {
    if (mask & 1) continue;  // bit 0 must be red (0)
    int reds = 0, same = 0;
    for (int i = 0; i < len; ++i) {
      int bi = (mask >> i) & 1;
      int bj = (mask >> ((i + 1) % len)) & 1;
      if (bi == 0) ++reds;
      if (len > 1 && bi == bj) ++same;
    }
    if (len == 1) same = 1;  // single triangle adjacent to itself
    if (reds != k) continue;
    sum += rat_pow(a, same);
  }
  return sum * rat_pow(h1, k) * rat_pow(h2, kp);
}

// Direct rooted-map cluster sum with the full weight dictionary:
// sum over maps with exactly E edges and subsets S of
// mu_v^V mu_f^F t^E J^|S| Q^c, optionally restricted by root-edge membership.
Rat potts_grand_sum(int E, const Rat& Q, const Rat& t, const Rat& J,
                    const Rat& mu_v, const Rat& mu_f, int root_filter /* -1 all,
                    1 root edge in S, 0 root edge not in S */) {
  Rat total = 0;
  for (auto& m : enumerate_rooted_maps_with(E)) {
    auto eid = m.edge_ids();
    std::vector<char> subset(E, 0);
    for (unsigned mask = 0; mask < (1u << E); ++mask) {
      int S = 0;
      for (int e = 0; e < E; ++e) {
        subset[e] = (mask >> e) & 1;
        S += subset[e];
      }
      if (root_filter >= 0 && subset[eid[m.root]] != root_filter) continue;
      total += rat_pow(mu_v, m.num_vertices()) * rat_pow(mu_f, m.num_faces()) *
               rat_pow(t, E) * rat_pow(J, S) *
               rat_pow(Q, cluster_count(m, subset));
    }
  }
  return total;
}

}  // namespace

TEST_CASE("edge-graded disk series: trees and one-face checks") {
  Rat u(3, 2);
  // pure trees: F_{2m} has a single coefficient Catalan(m) u^{m+1} at grade m
  for (int m = 0; m <= 4; ++m) {
    auto F = disk_series(u, {}, 2 * m, 8);
    for (int g = 0; g <= 8; ++g)
      CHECK(F[g] == (g == m ? catalan(m) * rat_pow(u, m + 1) : Rat(0)));
  }
  // odd boundary without odd faces: identically zero
  CHECK(disk_series(u, {}, 3, 8).is_zero());
  // triangular faces: F_1 = g u^2 + O(g^2); the leading map has 2 edges
  Rat g3(4, 7);
  auto F1 = disk_series(u, {0, 0, g3}, 1, 6);
  CHECK(F1[0] == 0);
  CHECK(F1[1] == 0);
  CHECK(F1[2] == g3 * u * u);
}

TEST_CASE("edge vs face-graded recursion agree on pure quadrangulations") {
  // with only degree-4 faces, edge count is determined by face count:
  // E = 2f + ell/2, so the two gradings must contain the same numbers
  Rat u(1), g4(1, 3);
  auto edge = disk_series(u, {0, 0, 0, g4}, 2, 9);
  std::vector<TruncatedSeries> g(4, TruncatedSeries(8));
  g[3][4] = g4;  // grade 4 per face
  auto face = disk_series_graded(u, g, 2, 8);
  for (int f = 0; 4 * f <= 8; ++f) {
    if (2 * f + 1 <= 9) CHECK(face[4 * f] == edge[2 * f + 1]);
  }
  // rejection of an ungraded face weight
  std::vector<TruncatedSeries> bad(1, TruncatedSeries(8));
  bad[0][0] = 1;
  CHECK_THROWS(disk_series_graded(u, bad, 2, 8));
}

TEST_CASE("ring table against the necklace oracle, k + k' <= 8") {
  struct Pt {
    Rat h1, h2, a;
  } pts[] = {{Rat(1, 2), Rat(1, 3), Rat(2)},
             {Rat(1), Rat(1), Rat(1)},
             {Rat(3, 5), Rat(3, 5), Rat(1, 4)},
             {Rat(2, 7), Rat(5, 3), Rat(7, 2)}};
  for (auto& p : pts) {
    auto tab = ring_series(p.h1, p.h2, p.a, 8);
    for (int k = 1; k <= 8; ++k)
      for (int kp = 0; k + kp <= 8; ++kp)
        CHECK(tab.at(k, kp) == necklace_oracle(p.h1, p.h2, p.a, k, kp));
  }
}

TEST_CASE("ring table closed-form spot values") {
  Rat h1(1, 2), h2(1, 3), a(2);
  auto tab = ring_series(h1, h2, a, 6);
  for (int k = 1; k <= 6; ++k) CHECK(tab.at(k, 0) == rat_pow(a * h1, k));
  CHECK(tab.at(1, 1) == h1 * h2);                    // a-independent
  CHECK(tab.at(2, 1) == 2 * a * h1 * h1 * h2);
  CHECK(tab.at(2, 2) == (2 * a * a + 1) * h1 * h1 * h2 * h2);
  // color-swap table: A^{(2->1)}(h1,h2) = A^{(1->2)}(h2,h1)
  auto swapped = ring_series(h2, h1, a, 6);
  CHECK(swapped.at(2, 1) == 2 * a * h2 * h2 * h1);
}

TEST_CASE("gasket fixed point: base cases and symmetry") {
  ExactLoopWeights w;
  w.n = 1;
  w.a = 1;
  w.h1 = Rat(1, 2);
  w.h2 = Rat(1, 2);
  w.u1 = 1;
  w.u2 = 1;
  auto gs0 = gasket_fixed_point(w, 0, 2);
  CHECK(gs0.F1[0][0] == 1);
  CHECK(gs0.F2[0][0] == 1);

  auto gs = gasket_fixed_point(w, 6, 4);
  // F_0 = u identically
  for (int g = 1; g <= 6; ++g) CHECK(gs.F1[0][g] == 0);
  // grade-2 coefficient of F_2^(1): n a^2 h1^2 u2 u1^2 + n^2 a^2 h1^2 u2^2 u1
  CHECK(gs.F1[2][2] == Rat(1, 4) + Rat(1, 4));
  // color-symmetric model: F^(1) = F^(2)
  for (int l = 0; l <= 4; ++l) CHECK(gs.F1[l] == gs.F2[l]);

  // asymmetric spot check of the same closed form
  ExactLoopWeights w2 = w;
  w2.n = Rat(3, 2);
  w2.a = 2;
  w2.u1 = 3;
  w2.u2 = 5;
  w2.h1 = Rat(1, 3);
  w2.h2 = Rat(1, 7);
  auto gs2 = gasket_fixed_point(w2, 2, 2);
  Rat n = w2.n, a = w2.a, h1 = w2.h1, u1 = w2.u1, u2 = w2.u2;
  CHECK(gs2.F1[2][2] == n * a * a * h1 * h1 * u2 * u1 * u1 +
                            n * n * a * a * h1 * h1 * u2 * u2 * u1);
}

TEST_CASE("gasket at n = 0 decouples into the plain disk recursion") {
  ExactLoopWeights w;
  w.n = 0;
  w.a = 2;
  w.h1 = Rat(1, 2);
  w.h2 = Rat(1, 3);
  w.u1 = Rat(5, 4);
  w.u2 = 2;
  w.g1_seq = {0, 0, Rat(1, 6)};
  auto gs = gasket_fixed_point(w, 6, 4);
  std::vector<TruncatedSeries> g1(6, TruncatedSeries(6)),
      g2(6, TruncatedSeries(6));
  g1[2][3] = Rat(1, 6);
  for (int l = 0; l <= 4; ++l) {
    CHECK(gs.F1[l] == disk_series_graded(w.u1, g1, l, 6));
    CHECK(gs.F2[l] == disk_series_graded(w.u2, g2, l, 6));
  }
}

TEST_CASE("grand partition identity against the exhaustive map oracle") {
  struct Case {
    PottsParams p;
  };
  PottsParams q1;  // Q = 1
  q1.Q = 1;
  q1.t = Rat(1, 4);
  q1.J = 1;
  q1.mu_v = 2;
  q1.mu_f = 3;
  PottsParams q94;  // Q = 9/4
  q94.Q = Rat(9, 4);
  q94.t = Rat(1, 4);
  q94.J = Rat(3, 2);
  q94.mu_v = Rat(1, 2);
  q94.mu_f = Rat(2, 3);
  for (const auto& p : {q1, q94}) {
    auto w = exact_loop_weights(p);
    auto gs = gasket_fixed_point(w, 6, 2);
    for (int E = 1; E <= 3; ++E) {
      Rat both = potts_grand_sum(E, p.Q, p.t, p.J, p.mu_v, p.mu_f, -1);
      CHECK(gs.F1[2][2 * E] + gs.F2[2][2 * E] == both);
      // refinement: F^(1) collects the configurations whose root edge is in
      // S, F^(2) the complement
      CHECK(gs.F1[2][2 * E] ==
            potts_grand_sum(E, p.Q, p.t, p.J, p.mu_v, p.mu_f, 1));
      CHECK(gs.F2[2][2 * E] ==
            potts_grand_sum(E, p.Q, p.t, p.J, p.mu_v, p.mu_f, 0));
    }
  }
}
