#pragma once
// Model parameters: Potts/random-cluster couplings, loop-model weights, the
// dictionary between them, and planar duality on the couplings.

#include <twofold/rational.hpp>
#include <twofold/series.hpp>

#include <optional>
#include <string>
#include <vector>

namespace twofold {

struct PottsParams {
  Rat Q = 1;     // number of states, extended to positive rationals
  Rat t = 1;     // weight per edge of the map
  Rat J = 1;     // J = e^K - 1, J > -1
  Rat mu_v = 1;  // weight per vertex
  Rat mu_f = 1;  // weight per face
  // Dilution weights: carried through serialization, never solved for.
  std::optional<Rat> mu_v_vac;
  std::optional<Rat> mu_f_dual;

  bool valid() const { return Q > 0 && t > 0 && J > -1; }
  double K() const;  // ln(1 + J)
};

struct ModelParams {
  double n = 1;   // weight per loop, in (0,2)
  double a = 1;   // curvature (bending) weight
  double h1 = 0;  // weight per red-facing triangle
  double h2 = 0;  // weight per green-facing triangle
  double u1 = 1;  // weight per red vertex
  double u2 = 1;  // weight per green vertex
  std::vector<double> g1_seq, g2_seq;  // unvisited-face weights, empty = fully packed

  double b() const;  // n = 2 cos(pi b)
  double r() const { return u1 / u2; }
  double u() const;  // sqrt(u1 u2)
  bool valid() const;
};

// Inverse of n = 2 cos(pi b) on (0,2) -> (0,1/2).
double b_from_n(double n);

// Weight dictionary at the fully packed point: n = sqrt(Q),
// h1 = sqrt(J t / sqrt(Q)), h2 = sqrt(t), u1 = mu_v sqrt(Q), u2 = mu_f, a = 1.
// Rejects Q >= 4 always and J <= 0 (h1 undefined on the solver path).
ModelParams loop_from_potts(const PottsParams& p);

// Same dictionary with every square root taken exactly; throws if any of
// sqrt(Q), sqrt(J t / sqrt(Q)), sqrt(t) is irrational. Used by the exact
// grand-identity tests (e.g. Q = 1 and Q = 9/4 with t = 1/4).
ExactLoopWeights exact_loop_weights(const PottsParams& p);

// Dual couplings. t* = J t / sqrt(Q) is irrational for general Q, so the
// exact carrier is (J*, t*^2); tstar is the floating evaluation. When a
// rational sqrt(Q) exists the exact t* is also filled in.
struct PottsDual {
  Rat Q;
  Rat Jstar;
  Rat tstar_sq;
  double tstar = 0;
  std::optional<Rat> tstar_exact;
  Rat mu_v, mu_f;  // swapped: dual vertices are faces
};

PottsDual potts_dual(const PottsParams& p);
// Applying the coupling transform twice returns the original (J, t^2); this
// is checked exactly in tests.
PottsParams potts_from_dual(const PottsDual& d);

// JSON (de)serialization with field names matching the structs; rationals are
// encoded as "p/q" strings.
std::string potts_to_json(const PottsParams& p);
PottsParams potts_from_json(const std::string& json);
std::string model_to_json(const ModelParams& m);
ModelParams model_from_json(const std::string& json);

}  // namespace twofold
