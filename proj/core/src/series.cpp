#include <twofold/series.hpp>

#include <stdexcept>

namespace twofold {

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  if (o.order() != order())
    throw std::invalid_argument("series order mismatch");
  for (int g = 0; g <= order(); ++g) c_[g] += o.c_[g];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  if (o.order() != order())
    throw std::invalid_argument("series order mismatch");
  for (int g = 0; g <= order(); ++g) c_[g] -= o.c_[g];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rat& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("series order mismatch");
  TruncatedSeries r(a.order());
  for (int i = 0; i <= a.order(); ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; i + j <= a.order(); ++j) {
      if (b.c_[j] == 0) continue;
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return r;
}

TruncatedSeries TruncatedSeries::shifted(int k) const {
  TruncatedSeries r(order());
  for (int g = 0; g + k <= order(); ++g) r.c_[g + k] = c_[g];
  return r;
}

namespace {

// Shared root-edge recursion over a table F[ell][grade].
//   F_ell = sum_k g_k F_{ell+k-2} + sum_{l'=0}^{ell-2} F_{l'} F_{ell-2-l'}
// edge_graded: every recursion step (both terms) consumes one grade and the
// face weights are scalars. Otherwise the weights are series of valuation
// >= 1 and the grade is carried entirely by them.
std::vector<std::vector<Rat>> disk_table(const Rat& u,
                                         const std::vector<TruncatedSeries>& g,
                                         bool edge_graded, int ell_max,
                                         int order) {
  int K = static_cast<int>(g.size());
  int growth = K > 2 ? K - 2 : 0;
  int lcap = ell_max + growth * order + 2;
  std::vector<std::vector<Rat>> F(lcap + 1,
                                  std::vector<Rat>(order + 1, Rat(0)));
  F[0][0] = u;
  if (!edge_graded) {
    for (int l = 2; l <= lcap; l += 2)  // tree layer at grade 0
      for (int lp = 0; lp + 2 <= l; ++lp) F[l][0] += F[lp][0] * F[l - 2 - lp][0];
  }
  for (int m = 1; m <= order; ++m) {
    for (int l = 1; l <= lcap; ++l) {
      Rat acc = 0;
      for (int k = 1; k <= K; ++k) {
        int l2 = l + k - 2;
        if (l2 < 0 || l2 > lcap) continue;
        if (edge_graded) {
          if (g[k - 1][0] != 0) acc += g[k - 1][0] * F[l2][m - 1];
        } else {
          for (int j = 1; j <= m; ++j)
            if (g[k - 1][j] != 0) acc += g[k - 1][j] * F[l2][m - j];
        }
      }
      for (int lp = 0; lp + 2 <= l; ++lp) {
        int lq = l - 2 - lp;
        if (edge_graded) {
          for (int j = 0; j <= m - 1; ++j) acc += F[lp][j] * F[lq][m - 1 - j];
        } else {
          for (int j = 0; j <= m; ++j) acc += F[lp][j] * F[lq][m - j];
        }
      }
      F[l][m] = acc;
    }
  }
  return F;
}

}  // namespace

TruncatedSeries disk_series(const Rat& u, const std::vector<Rat>& g_seq,
                            int ell, int order) {
  if (ell < 0 || order < 0) throw std::invalid_argument("negative ell/order");
  std::vector<TruncatedSeries> g;
  for (const Rat& w : g_seq) {
    TruncatedSeries s(order);
    s[0] = w;
    g.push_back(std::move(s));
  }
  auto F = disk_table(u, g, true, ell, order);
  TruncatedSeries r(order);
  for (int m = 0; m <= order; ++m) r[m] = F[ell][m];
  return r;
}

std::vector<TruncatedSeries> disk_series_graded_all(
    const Rat& u, const std::vector<TruncatedSeries>& g_seq, int ell_max,
    int order) {
  for (const auto& s : g_seq)
    if (!s.is_zero() && s.valuation() < 1)
      throw std::invalid_argument(
          "graded disk recursion needs face weights of valuation >= 1");
  auto F = disk_table(u, g_seq, false, ell_max, order);
  std::vector<TruncatedSeries> out;
  for (int l = 0; l <= ell_max; ++l) {
    TruncatedSeries s(order);
    for (int m = 0; m <= order; ++m) s[m] = F[l][m];
    out.push_back(std::move(s));
  }
  return out;
}

TruncatedSeries disk_series_graded(const Rat& u,
                                   const std::vector<TruncatedSeries>& g_seq,
                                   int ell, int order) {
  return disk_series_graded_all(u, g_seq, ell, order).at(ell);
}

RingTable ring_series(const Rat& h1, const Rat& h2, const Rat& a, int k_max) {
  if (k_max < 1 || k_max > 64)
    throw std::invalid_argument("ring_series: k_max out of range");
  RingTable t;
  t.k_max = k_max;
  t.A.assign(k_max + 1, {});
  for (int k = 1; k <= k_max; ++k) {
    t.A[k].assign(k_max - k + 1, Rat(0));
    t.A[k][0] = rat_pow(a * h1, k);
    for (int kp = 1; k + kp <= k_max; ++kp) {
      Rat sum = 0;
      int mm = std::min(k, kp);
      for (int m = 1; m <= mm; ++m)
        sum += Rat(binomial(k, m) * binomial(kp - 1, m - 1)) *
               rat_pow(a, k + kp - 2 * m);
      t.A[k][kp] = sum * rat_pow(h1, k) * rat_pow(h2, kp);
    }
  }
  return t;
}

GasketSeries gasket_fixed_point(const ExactLoopWeights& w, int order,
                                int ell_max) {
  if (order < 0 || order > 64)
    throw std::invalid_argument("gasket_fixed_point: order out of range");
  int N = order;
  int L = std::max(ell_max, N);
  RingTable A12 = N >= 1 ? ring_series(w.h1, w.h2, w.a, N) : RingTable{};
  RingTable A21 = N >= 1 ? ring_series(w.h2, w.h1, w.a, N) : RingTable{};

  // Base face weights. An unvisited face of degree k is graded with k, the
  // footprint of the ring that could replace it; empty sequences = fully
  // packed. (The grand-identity oracle only exercises the fully packed case.)
  auto base = [&](const std::vector<Rat>& g_seq) {
    std::vector<TruncatedSeries> g(N, TruncatedSeries(N));
    for (size_t k = 1; k <= g_seq.size() && static_cast<int>(k) <= N; ++k)
      g[k - 1][static_cast<int>(k)] = g_seq[k - 1];
    return g;
  };
  std::vector<TruncatedSeries> G1 = base(w.g1_seq), G2 = base(w.g2_seq);

  GasketSeries gs;
  for (int sweep = 0; sweep <= N + 1; ++sweep) {
    gs.F1 = disk_series_graded_all(w.u1, G1, L, N);
    gs.F2 = disk_series_graded_all(w.u2, G2, L, N);
    auto next = [&](const RingTable& A, const std::vector<TruncatedSeries>& F,
                    const std::vector<Rat>& g_seq) {
      auto G = base(g_seq);
      for (int k = 1; k <= N; ++k)
        for (int kp = 0; k + kp <= N; ++kp)
          G[k - 1] += (F[kp] * A.at(k, kp)).shifted(k + kp) * w.n;
      return G;
    };
    auto G1n = next(A12, gs.F2, w.g1_seq);
    auto G2n = next(A21, gs.F1, w.g2_seq);
    bool stable = true;
    for (int k = 0; k < N; ++k)
      if (!(G1n[k] == G1[k]) || !(G2n[k] == G2[k])) stable = false;
    G1 = std::move(G1n);
    G2 = std::move(G2n);
    if (stable) break;
  }
  gs.F1 = disk_series_graded_all(w.u1, G1, L, N);
  gs.F2 = disk_series_graded_all(w.u2, G2, L, N);
  gs.F1.resize(ell_max + 1);
  gs.F2.resize(ell_max + 1);
  return gs;
}

}  // namespace twofold
