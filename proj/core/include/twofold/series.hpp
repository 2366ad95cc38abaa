#pragma once
// Exact truncated power series in one grading variable, plus the disk, ring
// and gasket generating functions built on them.

#include <twofold/rational.hpp>

#include <map>
#include <vector>

namespace twofold {

// Polynomial truncated at grade N: coefficients c[0..N].
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  explicit TruncatedSeries(int order) : c_(order + 1, Rat(0)) {}
  TruncatedSeries(int order, const Rat& constant) : c_(order + 1, Rat(0)) {
    c_[0] = constant;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Rat& operator[](int g) const { return c_.at(g); }
  Rat& operator[](int g) { return c_.at(g); }

  // Lowest grade with a nonzero coefficient; order()+1 if identically zero.
  int valuation() const {
    for (int g = 0; g <= order(); ++g)
      if (c_[g] != 0) return g;
    return order() + 1;
  }
  bool is_zero() const { return valuation() > order(); }

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const Rat& s);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
    return a += b;
  }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
    return a -= b;
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a,
                                   const TruncatedSeries& b);
  friend TruncatedSeries operator*(TruncatedSeries a, const Rat& s) {
    return a *= s;
  }
  // Multiply by z^k (drop overflowing grades).
  TruncatedSeries shifted(int k) const;

  bool operator==(const TruncatedSeries& o) const { return c_ == o.c_; }

 private:
  std::vector<Rat> c_;
};

// Disk generating functions for boundary length ell with scalar interior face
// weights g_seq (g_seq[k-1] is the weight of a degree-k face), graded by edge
// count. F_0 = u identically.
TruncatedSeries disk_series(const Rat& u, const std::vector<Rat>& g_seq, int ell,
                            int order);

// Same recursion, but every face weight is itself a series in the global
// grading variable and the recursion consumes no extra grade on its own;
// each g_seq[k-1] must have valuation >= 1 (rejected otherwise).
// This is the form used by the gasket substitution, where the grading counts
// visited triangles buried in the effective face weights.
TruncatedSeries disk_series_graded(const Rat& u,
                                   const std::vector<TruncatedSeries>& g_seq,
                                   int ell, int order);

// Batched variant returning F_0..F_ell_max in one pass.
std::vector<TruncatedSeries> disk_series_graded_all(
    const Rat& u, const std::vector<TruncatedSeries>& g_seq, int ell_max,
    int order);

// Ring partition functions A_{k,k'} with one marked red-facing triangle,
// as exact polynomials in (h1, h2, a) evaluated at rational arguments.
// A[k][k'] defined for k >= 1, k' >= 0, k + k' <= k_max.
struct RingTable {
  int k_max = 0;
  std::vector<std::vector<Rat>> A;  // A[k][k'], row 0 unused
  const Rat& at(int k, int kp) const { return A.at(k).at(kp); }
};

RingTable ring_series(const Rat& h1, const Rat& h2, const Rat& a, int k_max);

// Rational model weights for the exact gasket computation.
struct ExactLoopWeights {
  Rat n, a, h1, h2, u1, u2;
  std::vector<Rat> g1_seq, g2_seq;  // unvisited-face weights, default empty
};

struct GasketSeries {
  std::vector<TruncatedSeries> F1, F2;  // F_ell^(1), F_ell^(2), ell = 0..ell_max
};

// Joint fixed point of the gasket decomposition: effective face weights
// G_k^(i) = g_k^(i) + n sum_k' A^(i->j)_{k,k'} z^{k+k'} F_k'^(j), fed back
// through the disk recursion. Converges in at most `order` sweeps because a
// loop insertion always adds at least two triangles of grade.
GasketSeries gasket_fixed_point(const ExactLoopWeights& w, int order,
                                int ell_max);

}  // namespace twofold
