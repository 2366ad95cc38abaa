#pragma once
// Rooted planar maps as rotation systems, random-cluster weights, the
// bijection onto triangulations carrying fully packed twofold loops, and
// planar duality. This layer is fully exact and serves as the brute-force
// oracle for the series and analytic layers.

#include <twofold/rational.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace twofold {

// Half-edge encoding: sigma is the counterclockwise successor around the
// vertex, alpha the fixed-point-free pairing into edges. The vertex map
// (E = 0) is represented with empty permutations and root = -1.
struct RotationMap {
  std::vector<int> sigma;
  std::vector<int> alpha;
  int root = -1;

  int half_edges() const { return static_cast<int>(sigma.size()); }
  int num_edges() const { return half_edges() / 2; }
  int num_vertices() const;  // cycles of sigma (1 for the vertex map)
  int num_faces() const;     // cycles of sigma o alpha (1 for the vertex map)
  bool valid() const;        // involution, transitivity, root in range
  bool planar() const;       // V - E + F == 2

  // vertex_of[h]: index of the sigma-cycle through h; edge_of[h]: edge index
  // (edges numbered by their smallest half-edge, in increasing order).
  std::vector<int> vertex_ids() const;
  std::vector<int> face_ids() const;  // cycles of sigma o alpha
  std::vector<int> edge_ids() const;
};

// Rooted maps with exactly `edges` edges, one representative each, in a
// canonical exploration-order labeling. `edges` = 0 yields the vertex map.
std::vector<RotationMap> enumerate_rooted_maps_with(int edges);

// All rooted maps with at most max_edges edges (max_edges <= 5).
std::vector<RotationMap> enumerate_rooted_maps(int max_edges);

// Closed-form count of rooted planar maps with E edges.
BigInt rooted_map_count(int edges);

// sigma* = sigma o alpha, alpha* = alpha, root kept. Exactly involutive and
// exchanges vertices with faces. This is one of the two mirror conventions
// for the geometric dual; edge indices are preserved, so a subset S of edges
// maps to the same index set on the dual.
RotationMap dual_map(const RotationMap& m);

struct ClusterConfig {
  RotationMap map;
  std::vector<char> subset;  // indexed by edge id, 1 = edge in S
  int clusters = 0;          // c(S), components of (V, S)
};

ClusterConfig make_cluster_config(const RotationMap& m,
                                  const std::vector<char>& subset);
int cluster_count(const RotationMap& m, const std::vector<char>& subset);

// t^E * sum_{S subset E} J^|S| Q^{c(S)}, exact.
Rat potts_partition_cluster(const RotationMap& m, const Rat& Q, const Rat& t,
                            const Rat& J);

// Spin form: t^E * sum over colorings in {1..Q}^V of (1+J)^{#aligned edges}.
// Q must be a positive integer.
Rat potts_partition_spin(const RotationMap& m, int Q, const Rat& t,
                         const Rat& one_plus_J);

// Triangulation of the quadrangulated map carrying the loop configuration.
// Vertices 0..V-1 are the (red) vertices of the original map, V..V+F-1 the
// (green) face vertices. Edges are either corner edges (sides shared by two
// squares, carrying the loop arcs at their midpoints) or diagonals (the
// visited sides; red diagonals are the edges of S, green ones the duals of
// the complement). Each triangle carries exactly one arc joining the
// midpoints of its two corner-edge sides.
struct TwofoldLoopConfig {
  RotationMap tri;
  std::vector<char> vertex_color;        // per tri vertex, 0 = red, 1 = green
  std::vector<char> is_diagonal;         // per tri edge id
  std::vector<std::array<int, 2>> arcs;  // corner-edge id pairs, one per triangle
  // Root transfer convention: tri.root is the red-side half-edge of the
  // corner edge attached to the root half-edge of the source map.
  int num_triangles() const { return static_cast<int>(arcs.size()); }
  int loop_count() const;  // cycles of the arc pairing on corner edges
  bool fully_packed() const;  // every tri face is a triangle with one arc
};

TwofoldLoopConfig potts_to_loops(const ClusterConfig& c);

enum class ColorChoice { red, green };

// Inverse construction; red returns the original (map, S, root), green the
// dual pair (map*, S*, root on the green side of the same corner).
ClusterConfig loops_to_potts(const TwofoldLoopConfig& t, ColorChoice color);

// Loop count predicted by the cluster data: 2 c(S) + |S| - |V|.
int predicted_loop_count(const ClusterConfig& c);

// Canonical relabeling (exploration order from the root); two rooted maps are
// equal iff their canonical forms are identical.
RotationMap canonical_form(const RotationMap& m);
// Canonical form of a configuration: map relabeled, subset re-indexed.
ClusterConfig canonical_form(const ClusterConfig& c);
bool same_config(const ClusterConfig& a, const ClusterConfig& b);

// (sqrtQ)^{-V} Z(M, t, J) == (sqrtQ)^{-V*} Z(M*, t*, J*) with t* = J t/sqrtQ,
// J* = Q/J, checked exactly; requires a rational sqrtQ with sqrtQ^2 = Q.
bool duality_identity_check(const RotationMap& m, const Rat& Q,
                            const Rat& sqrtQ, const Rat& t, const Rat& J);

// Compact text codec: "sigma:a,b,...;alpha:c,d,...;root:r".
std::string map_to_string(const RotationMap& m);
RotationMap map_from_string(const std::string& s);

}  // namespace twofold
