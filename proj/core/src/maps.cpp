#include <twofold/maps.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace twofold {

namespace {

// Number of cycles of a permutation.
int cycle_count(const std::vector<int>& perm) {
  int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  int cycles = 0;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (int j = i; !seen[j]; j = perm[j]) seen[j] = 1;
  }
  return cycles;
}

// Labels of cycles, one id per cycle, ids in order of smallest element.
std::vector<int> cycle_labels(const std::vector<int>& perm) {
  int n = static_cast<int>(perm.size());
  std::vector<int> label(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    for (int j = i; label[j] < 0; j = perm[j]) label[j] = next;
    ++next;
  }
  return label;
}

std::vector<int> compose(const std::vector<int>& f, const std::vector<int>& g) {
  // (f o g)(i) = f[g[i]]
  std::vector<int> r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = f[g[i]];
  return r;
}

struct DSU {
  std::vector<int> p;
  explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

int RotationMap::num_vertices() const {
  if (half_edges() == 0) return 1;
  return cycle_count(sigma);
}

int RotationMap::num_faces() const {
  if (half_edges() == 0) return 1;
  return cycle_count(compose(sigma, alpha));
}

bool RotationMap::valid() const {
  int n = half_edges();
  if (n == 0) return root == -1 && alpha.empty();
  if (static_cast<int>(alpha.size()) != n || root < 0 || root >= n) return false;
  for (int h = 0; h < n; ++h) {
    if (sigma[h] < 0 || sigma[h] >= n || alpha[h] < 0 || alpha[h] >= n)
      return false;
    if (alpha[h] == h || alpha[alpha[h]] != h) return false;
  }
  // transitivity under sigma and alpha
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int h = stack.back();
    stack.pop_back();
    for (int g : {sigma[h], alpha[h]}) {
      if (!seen[g]) {
        seen[g] = 1;
        ++count;
        stack.push_back(g);
      }
    }
  }
  return count == n;
}

bool RotationMap::planar() const {
  return num_vertices() - num_edges() + num_faces() == 2;
}

std::vector<int> RotationMap::vertex_ids() const { return cycle_labels(sigma); }

std::vector<int> RotationMap::face_ids() const {
  return cycle_labels(compose(sigma, alpha));
}

std::vector<int> RotationMap::edge_ids() const {
  int n = half_edges();
  std::vector<int> id(n, -1);
  int next = 0;
  for (int h = 0; h < n; ++h) {
    if (id[h] >= 0) continue;
    id[h] = id[alpha[h]] = next++;
  }
  return id;
}

BigInt rooted_map_count(int E) {
  // 2 * 3^E * (2E)! / (E! (E+2)!)
  BigInt num = 2;
  for (int i = 0; i < E; ++i) num *= 3;
  BigInt f2e = 1, fe = 1, fe2 = 1;
  for (int i = 2; i <= 2 * E; ++i) f2e *= i;
  for (int i = 2; i <= E; ++i) fe *= i;
  for (int i = 2; i <= E + 2; ++i) fe2 *= i;
  return num * f2e / (fe * fe2);
}

namespace {

// Backtracking generator of canonically labeled rooted maps with E edges.
// Labels are assigned in exploration order: processing h = 0,1,... in order,
// first alpha(h) then sigma(h) must be either an already-introduced label or
// the next fresh one. Every rooted map has exactly one such labeling, so no
// isomorphism reduction is needed.
struct Enumerator {
  int n;  // 2E
  std::vector<int> sigma, alpha;
  std::vector<char> has_sigma, has_alpha, has_pre;  // pre = sigma preimage
  int next = 1;
  std::vector<RotationMap>* out;
  bool planar_only;

  void run(int edges, std::vector<RotationMap>& res, bool planar) {
    n = 2 * edges;
    out = &res;
    planar_only = planar;
    if (edges == 0) {
      res.push_back(RotationMap{});
      return;
    }
    sigma.assign(n, -1);
    alpha.assign(n, -1);
    has_sigma.assign(n, 0);
    has_alpha.assign(n, 0);
    has_pre.assign(n, 0);
    next = 1;
    step_alpha(0);
  }

  void emit() {
    RotationMap m;
    m.sigma = sigma;
    m.alpha = alpha;
    m.root = 0;
    if (!planar_only || m.planar()) out->push_back(std::move(m));
  }

  void step_alpha(int h) {
    if (h == n) {
      emit();
      return;
    }
    if (h >= next) return;  // label not introduced: disconnected, dead end
    if (has_alpha[h]) {
      step_sigma(h);
      return;
    }
    if (next < n) {  // fresh partner
      int j = next++;
      set_alpha(h, j);
      step_sigma(h);
      unset_alpha(h, j);
      --next;
    }
    for (int j = h + 1; j < next; ++j) {
      if (has_alpha[j]) continue;
      set_alpha(h, j);
      step_sigma(h);
      unset_alpha(h, j);
    }
  }

  void set_alpha(int a, int b) {
    alpha[a] = b;
    alpha[b] = a;
    has_alpha[a] = has_alpha[b] = 1;
  }
  void unset_alpha(int a, int b) {
    alpha[a] = alpha[b] = -1;
    has_alpha[a] = has_alpha[b] = 0;
  }

  void step_sigma(int h) {
    if (has_sigma[h]) {
      step_alpha(h + 1);
      return;
    }
    if (next < n) {  // fresh successor
      int j = next++;
      sigma[h] = j;
      has_sigma[h] = 1;
      has_pre[j] = 1;
      step_alpha(h + 1);
      has_pre[j] = 0;
      has_sigma[h] = 0;
      sigma[h] = -1;
      --next;
    }
    for (int j = 0; j < next; ++j) {
      if (has_pre[j]) continue;
      sigma[h] = j;
      has_sigma[h] = 1;
      has_pre[j] = 1;
      step_alpha(h + 1);
      has_pre[j] = 0;
      has_sigma[h] = 0;
      sigma[h] = -1;
    }
  }
};

}  // namespace

std::vector<RotationMap> enumerate_rooted_maps_with(int edges) {
  if (edges < 0 || edges > 5)
    throw std::invalid_argument("enumerate_rooted_maps: edge bound is 0..5");
  std::vector<RotationMap> res;
  Enumerator{}.run(edges, res, true);
  return res;
}

std::vector<RotationMap> enumerate_rooted_maps(int max_edges) {
  if (max_edges < 0 || max_edges > 5)
    throw std::invalid_argument("enumerate_rooted_maps: edge bound is 0..5");
  std::vector<RotationMap> res;
  for (int e = 0; e <= max_edges; ++e) {
    auto part = enumerate_rooted_maps_with(e);
    res.insert(res.end(), part.begin(), part.end());
  }
  return res;
}

RotationMap dual_map(const RotationMap& m) {
  RotationMap d;
  d.sigma = m.half_edges() ? compose(m.sigma, m.alpha) : std::vector<int>{};
  d.alpha = m.alpha;
  d.root = m.root;
  return d;
}

int cluster_count(const RotationMap& m, const std::vector<char>& subset) {
  auto vid = m.half_edges() ? m.vertex_ids() : std::vector<int>{};
  int V = m.num_vertices();
  DSU dsu(V);
  auto eid = m.edge_ids();
  for (int h = 0; h < m.half_edges(); ++h) {
    if (h < m.alpha[h] && subset[eid[h]])
      dsu.unite(vid[h], vid[m.alpha[h]]);
  }
  int c = 0;
  for (int v = 0; v < V; ++v)
    if (dsu.find(v) == v) ++c;
  return c;
}

ClusterConfig make_cluster_config(const RotationMap& m,
                                  const std::vector<char>& subset) {
  if (static_cast<int>(subset.size()) != m.num_edges())
    throw std::invalid_argument("subset size must equal edge count");
  return ClusterConfig{m, subset, cluster_count(m, subset)};
}

Rat potts_partition_cluster(const RotationMap& m, const Rat& Q, const Rat& t,
                            const Rat& J) {
  int E = m.num_edges();
  Rat total = 0;
  std::vector<char> subset(E, 0);
  for (uint32_t mask = 0; mask < (1u << E); ++mask) {
    int size = 0;
    for (int e = 0; e < E; ++e) {
      subset[e] = (mask >> e) & 1;
      size += subset[e];
    }
    total += rat_pow(J, size) * rat_pow(Q, cluster_count(m, subset));
  }
  return rat_pow(t, E) * total;
}

Rat potts_partition_spin(const RotationMap& m, int Q, const Rat& t,
                         const Rat& one_plus_J) {
  if (Q < 1) throw std::invalid_argument("spin form needs integer Q >= 1");
  int V = m.num_vertices();
  auto vid = m.half_edges() ? m.vertex_ids() : std::vector<int>{};
  Rat total = 0;
  std::vector<int> color(V, 0);
  while (true) {
    int aligned = 0;
    for (int h = 0; h < m.half_edges(); ++h)
      if (h < m.alpha[h] && color[vid[h]] == color[vid[m.alpha[h]]]) ++aligned;
    total += rat_pow(one_plus_J, aligned);
    int i = 0;
    for (; i < V; ++i) {
      if (++color[i] < Q) break;
      color[i] = 0;
    }
    if (i == V) break;
  }
  return rat_pow(t, m.num_edges()) * total;
}

namespace {

// End of a triangulation edge, used as an ordering key while the rotation
// lists are assembled. kind: 0 corner (id = source half-edge, side 0 red /
// 1 green), 1 red diagonal, 2 green diagonal (id = source edge, side = the
// source half-edge the end sits at).
struct EndKey {
  int kind, id, side;
  auto operator<=>(const EndKey&) const = default;
};

}  // namespace

TwofoldLoopConfig potts_to_loops(const ClusterConfig& c) {
  const RotationMap& m = c.map;
  TwofoldLoopConfig out;
  if (m.half_edges() == 0) {
    // Vertex map: a single isolated red vertex, no triangles, no loops.
    out.vertex_color = {0};
    return out;
  }
  int n = m.half_edges();
  auto vid = m.vertex_ids();
  auto eid = m.edge_ids();
  int V = m.num_vertices();
  std::vector<int> phi = compose(m.sigma, m.alpha);  // face successor
  auto fid = cycle_labels(phi);
  int F = m.num_faces();

  // Rotation list (counterclockwise) of triangulation edge ends per vertex.
  // Red vertex v(h): for each h around v, the red diagonal end of edge(h)
  // when marked, then the corner end of h. Green vertex f: for each h around
  // the face, the green diagonal end of edge(h) when unmarked, then the green
  // corner end of alpha(h).
  std::vector<std::vector<EndKey>> rot(V + F);
  std::vector<char> vstart(n, 0);
  for (int h = 0; h < n; ++h) {
    if (vstart[h]) continue;
    for (int g = h; !vstart[g]; g = m.sigma[g]) {
      vstart[g] = 1;
      if (c.subset[eid[g]]) rot[vid[g]].push_back({1, eid[g], g});
      rot[vid[g]].push_back({0, g, 0});
    }
  }
  std::vector<char> fstart(n, 0);
  for (int h = 0; h < n; ++h) {
    if (fstart[h]) continue;
    for (int g = h; !fstart[g]; g = phi[g]) {
      fstart[g] = 1;
      if (!c.subset[eid[g]]) rot[V + fid[g]].push_back({2, eid[g], g});
      rot[V + fid[g]].push_back({0, m.alpha[g], 1});
    }
  }
  // Green vertices carry the opposite cyclic orientation: the face cycle runs
  // clockwise around the face vertex when the vertex rotations run
  // counterclockwise.
  for (int f = 0; f < F; ++f)
    std::reverse(rot[V + f].begin(), rot[V + f].end());

  // Assign half-edge indices of the triangulation.
  std::map<EndKey, int> index;
  RotationMap tri;
  int nt = 0;
  for (auto& list : rot) nt += static_cast<int>(list.size());
  tri.sigma.assign(nt, -1);
  tri.alpha.assign(nt, -1);
  int cursor = 0;
  for (auto& list : rot) {
    int base = cursor;
    int sz = static_cast<int>(list.size());
    for (int i = 0; i < sz; ++i) {
      index[list[i]] = base + i;
      tri.sigma[base + i] = base + (i + 1) % sz;
    }
    cursor += sz;
  }
  auto other_side = [&](const EndKey& k) -> EndKey {
    if (k.kind == 0) return {0, k.id, 1 - k.side};
    return {k.kind, k.id, m.alpha[k.side]};
  };
  for (auto& [key, idx] : index) tri.alpha[idx] = index.at(other_side(key));
  tri.root = index.at(EndKey{0, m.root, 0});

  out.tri = tri;
  out.vertex_color.assign(V + F, 0);
  for (int f = 0; f < F; ++f) out.vertex_color[V + f] = 1;
  auto tri_eid = tri.edge_ids();
  int te = tri.num_edges();
  out.is_diagonal.assign(te, 0);
  for (auto& [key, idx] : index)
    if (key.kind != 0) out.is_diagonal[tri_eid[idx]] = 1;

  // One arc per triangle, joining its two corner sides. sp = sigma^{-1}.
  std::vector<int> sp(n);
  for (int h = 0; h < n; ++h) sp[m.sigma[h]] = h;
  auto corner = [&](int h) { return tri_eid[index.at(EndKey{0, h, 0})]; };
  for (int h = 0; h < n; ++h) {
    if (h > m.alpha[h]) continue;
    int hb = m.alpha[h];
    if (c.subset[eid[h]]) {
      out.arcs.push_back({corner(h), corner(sp[hb])});
      out.arcs.push_back({corner(hb), corner(sp[h])});
    } else {
      out.arcs.push_back({corner(sp[hb]), corner(hb)});
      out.arcs.push_back({corner(sp[h]), corner(h)});
    }
  }
  return out;
}

int TwofoldLoopConfig::loop_count() const {
  if (arcs.empty()) return 0;
  // The arcs form a 2-regular multigraph on corner-edge ids; loops are its
  // connected components.
  int maxid = 0;
  for (auto& a : arcs) maxid = std::max({maxid, a[0], a[1]});
  DSU dsu(maxid + 1);
  std::vector<char> used(maxid + 1, 0);
  for (auto& a : arcs) {
    dsu.unite(a[0], a[1]);
    used[a[0]] = used[a[1]] = 1;
  }
  int c = 0;
  for (int i = 0; i <= maxid; ++i)
    if (used[i] && dsu.find(i) == i) ++c;
  return c;
}

bool TwofoldLoopConfig::fully_packed() const {
  if (tri.half_edges() == 0) return arcs.empty();
  auto phi = compose(tri.sigma, tri.alpha);
  auto fid = cycle_labels(phi);
  auto eid = tri.edge_ids();
  int F = tri.num_faces();
  // Each face must be a triangle with exactly one diagonal side, and the arc
  // list must contain exactly its two corner sides.
  std::vector<std::vector<int>> sides(F);
  for (int h = 0; h < tri.half_edges(); ++h) sides[fid[h]].push_back(eid[h]);
  std::vector<std::array<int, 2>> expect;
  for (auto& s : sides) {
    if (s.size() != 3) return false;
    std::vector<int> corners;
    int diag = 0;
    for (int e : s) {
      if (is_diagonal[e])
        ++diag;
      else
        corners.push_back(e);
    }
    if (diag != 1 || corners.size() != 2) return false;
    std::sort(corners.begin(), corners.end());
    expect.push_back({corners[0], corners[1]});
  }
  auto norm = [](std::array<int, 2> a) {
    if (a[0] > a[1]) std::swap(a[0], a[1]);
    return a;
  };
  std::vector<std::array<int, 2>> got;
  for (auto& a : arcs) got.push_back(norm(a));
  std::sort(expect.begin(), expect.end());
  std::sort(got.begin(), got.end());
  return expect == got;
}

int predicted_loop_count(const ClusterConfig& c) {
  if (c.map.half_edges() == 0) return 0;  // vertex map: no loops by convention
  int S = 0;
  for (char x : c.subset) S += x;
  return 2 * c.clusters + S - c.map.num_vertices();
}

ClusterConfig loops_to_potts(const TwofoldLoopConfig& t, ColorChoice color) {
  if (!t.fully_packed())
    throw std::invalid_argument("loops_to_potts: configuration not fully packed");
  if (t.tri.half_edges() == 0) {
    RotationMap m;  // vertex map
    return ClusterConfig{m, {}, 1};
  }
  const RotationMap& tri = t.tri;
  int nt = tri.half_edges();
  auto teid = tri.edge_ids();
  auto tvid = tri.vertex_ids();
  auto phi = compose(tri.sigma, tri.alpha);
  auto tfid = cycle_labels(phi);
  int col = color == ColorChoice::red ? 0 : 1;

  // Diagonal color = color of its (equal-colored) endpoints.
  int te = tri.num_edges();
  std::vector<int> diag_color(te, -1);
  std::vector<int> edge_half(te, -1);
  for (int h = 0; h < nt; ++h) edge_half[teid[h]] = h;
  for (int e = 0; e < te; ++e)
    if (t.is_diagonal[e]) diag_color[e] = t.vertex_color[tvid[edge_half[e]]];

  // The diagonal side of each triangle (face): the square a face belongs to.
  int FT = tri.num_faces();
  std::vector<int> face_diag(FT, -1);
  for (int h = 0; h < nt; ++h)
    if (t.is_diagonal[teid[h]]) face_diag[tfid[h]] = teid[h];

  // Walk the rotation at every vertex of the chosen color and parse it into
  // slots: each corner end is one slot; its square is the diagonal of the
  // face lying between the preceding end and the corner end, which is the
  // face of the corner half-edge itself.
  struct Slot {
    int vertex;     // tri vertex
    int half;       // tri half-edge of the corner end
    int square;     // diagonal edge id of the square
  };
  std::vector<Slot> slots;
  std::vector<std::vector<int>> per_vertex_slots(tri.num_vertices());
  std::vector<char> seen(nt, 0);
  for (int h0 = 0; h0 < nt; ++h0) {
    if (seen[h0] || t.vertex_color[tvid[h0]] != col) {
      seen[h0] = 1;
      continue;
    }
    std::vector<int> cyc;
    for (int g = h0; !seen[g]; g = tri.sigma[g]) {
      seen[g] = 1;
      cyc.push_back(g);
    }
    for (int g : cyc) {
      if (t.is_diagonal[teid[g]]) continue;  // diagonal ends are not slots
      int sq = face_diag[tfid[g]];
      slots.push_back({tvid[g], g, sq});
      per_vertex_slots[tvid[g]].push_back(static_cast<int>(slots.size()) - 1);
    }
  }

  // sigma': cyclic order of slots around each chosen-color vertex (slots were
  // pushed in rotation order). alpha': the two slots of the same square.
  int n2 = static_cast<int>(slots.size());
  RotationMap m;
  m.sigma.assign(n2, -1);
  m.alpha.assign(n2, -1);
  for (auto& vs : per_vertex_slots) {
    int sz = static_cast<int>(vs.size());
    for (int i = 0; i < sz; ++i) m.sigma[vs[i]] = vs[(i + 1) % sz];
  }
  std::map<int, std::vector<int>> by_square;
  for (int s = 0; s < n2; ++s) by_square[slots[s].square].push_back(s);
  for (auto& [sq, pair] : by_square) {
    if (pair.size() != 2)
      throw std::invalid_argument("loops_to_potts: malformed square incidence");
    m.alpha[pair[0]] = pair[1];
    m.alpha[pair[1]] = pair[0];
  }
  // Root: the slot carrying the root corner end (red) or the green end of the
  // same corner edge (green extraction).
  int root_half = col == 0 ? tri.root : tri.alpha[tri.root];
  for (int s = 0; s < n2; ++s)
    if (slots[s].half == root_half) m.root = s;
  if (m.root < 0)
    throw std::invalid_argument("loops_to_potts: root transfer failed");

  auto eid2 = m.edge_ids();
  std::vector<char> subset(m.num_edges(), 0);
  for (int s = 0; s < n2; ++s)
    if (diag_color[slots[s].square] == col) subset[eid2[s]] = 1;
  return make_cluster_config(m, subset);
}

RotationMap canonical_form(const RotationMap& m) {
  if (m.half_edges() == 0) return m;
  int n = m.half_edges();
  // Exploration relabeling: process new labels in order, introducing
  // alpha(h) then sigma(h).
  std::vector<int> label(n, -1), order;
  label[m.root] = 0;
  order.push_back(m.root);
  int next = 1;
  for (int i = 0; i < n; ++i) {
    int h = order[i];
    for (int g : {m.alpha[h], m.sigma[h]}) {
      if (label[g] < 0) {
        label[g] = next++;
        order.push_back(g);
      }
    }
  }
  RotationMap r;
  r.sigma.assign(n, -1);
  r.alpha.assign(n, -1);
  for (int h = 0; h < n; ++h) {
    r.sigma[label[h]] = label[m.sigma[h]];
    r.alpha[label[h]] = label[m.alpha[h]];
  }
  r.root = 0;
  return r;
}

ClusterConfig canonical_form(const ClusterConfig& c) {
  if (c.map.half_edges() == 0) return c;
  int n = c.map.half_edges();
  std::vector<int> label(n, -1), order;
  label[c.map.root] = 0;
  order.push_back(c.map.root);
  int next = 1;
  for (int i = 0; i < n; ++i) {
    int h = order[i];
    for (int g : {c.map.alpha[h], c.map.sigma[h]}) {
      if (label[g] < 0) {
        label[g] = next++;
        order.push_back(g);
      }
    }
  }
  RotationMap r;
  r.sigma.assign(n, -1);
  r.alpha.assign(n, -1);
  for (int h = 0; h < n; ++h) {
    r.sigma[label[h]] = label[c.map.sigma[h]];
    r.alpha[label[h]] = label[c.map.alpha[h]];
  }
  r.root = 0;
  auto old_eid = c.map.edge_ids();
  auto new_eid = r.edge_ids();
  std::vector<char> subset(c.map.num_edges(), 0);
  for (int h = 0; h < n; ++h) subset[new_eid[label[h]]] = c.subset[old_eid[h]];
  return ClusterConfig{r, subset, c.clusters};
}

bool same_config(const ClusterConfig& a, const ClusterConfig& b) {
  auto ca = canonical_form(a), cb = canonical_form(b);
  return ca.map.sigma == cb.map.sigma && ca.map.alpha == cb.map.alpha &&
         ca.map.root == cb.map.root && ca.subset == cb.subset;
}

bool duality_identity_check(const RotationMap& m, const Rat& Q,
                            const Rat& sqrtQ, const Rat& t, const Rat& J) {
  if (sqrtQ * sqrtQ != Q)
    throw std::invalid_argument("duality_identity_check: sqrtQ^2 != Q");
  if (J == 0) throw std::invalid_argument("dual of J = 0 is infinite");
  RotationMap d = dual_map(m);
  Rat tstar = J * t / sqrtQ;
  Rat Jstar = Q / J;
  Rat lhs = rat_pow(sqrtQ, -m.num_vertices()) *
            potts_partition_cluster(m, Q, t, J);
  Rat rhs = rat_pow(sqrtQ, -d.num_vertices()) *
            potts_partition_cluster(d, Q, tstar, Jstar);
  return lhs == rhs;
}

std::string map_to_string(const RotationMap& m) {
  std::ostringstream os;
  os << "sigma:";
  for (int i = 0; i < m.half_edges(); ++i) os << (i ? "," : "") << m.sigma[i];
  os << ";alpha:";
  for (int i = 0; i < m.half_edges(); ++i) os << (i ? "," : "") << m.alpha[i];
  os << ";root:" << m.root;
  return os.str();
}

RotationMap map_from_string(const std::string& s) {
  auto section = [&](const std::string& tag) -> std::string {
    auto pos = s.find(tag + ":");
    if (pos == std::string::npos)
      throw std::invalid_argument("map_from_string: missing " + tag);
    pos += tag.size() + 1;
    auto end = s.find(';', pos);
    return s.substr(pos, end == std::string::npos ? end : end - pos);
  };
  auto ints = [](const std::string& part) {
    std::vector<int> v;
    std::istringstream is(part);
    std::string tok;
    while (std::getline(is, tok, ','))
      if (!tok.empty()) v.push_back(std::stoi(tok));
    return v;
  };
  RotationMap m;
  m.sigma = ints(section("sigma"));
  m.alpha = ints(section("alpha"));
  m.root = std::stoi(section("root"));
  if (!m.valid()) throw std::invalid_argument("map_from_string: invalid map");
  return m;
}

}  // namespace twofold
