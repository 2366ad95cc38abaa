// Batch front end: verification suites, critical-variety scans, figure data
// and density sampling. Exit codes: 0 all pass, 1 numeric failure, 2 bad
// configuration.

#include <CLI11.hpp>
#include <json.hpp>

#include <twofold/critical.hpp>
#include <twofold/maps.hpp>
#include <twofold/model.hpp>
#include <twofold/series.hpp>
#include <twofold/solver.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace twofold;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// "lo:hi:step" inclusive scan
struct Range {
  double lo = 0, hi = 0, step = 0;
  std::vector<double> values() const {
    std::vector<double> v;
    if (step <= 0) return v;
    for (double x = lo; x <= hi + 1e-12 * step; x += step) v.push_back(x);
    return v;
  }
};

bool parse_range(const std::string& s, Range& r) {
  return std::sscanf(s.c_str(), "%lf:%lf:%lf", &r.lo, &r.hi, &r.step) == 3;
}

std::string resolve_out(const std::string& path) {
  if (path.empty() || path == "-") return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  if (const char* base = std::getenv("TWOFOLD_OUT"))
    return (std::filesystem::path(base) / p).string();
  return path;
}

// stdout when path is empty or "-"
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// ---------------------------------------------------------------------------
// minimal SVG line plots

struct PlotSeries {
  std::string name;
  std::vector<std::pair<double, double>> pts;
};

void write_svg(std::ostream& os, const std::string& title,
               const std::vector<PlotSeries>& series) {
  const int W = 640, H = 480, M = 60;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (auto [x, y] : s.pts) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      xmin = std::min(xmin, x), xmax = std::max(xmax, x);
      ymin = std::min(ymin, y), ymax = std::max(ymax, y);
    }
  if (xmin > xmax) xmin = 0, xmax = 1;
  if (ymin > ymax) ymin = 0, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  auto X = [&](double x) { return M + (W - 2 * M) * (x - xmin) / (xmax - xmin); };
  auto Y = [&](double y) { return H - M - (H - 2 * M) * (y - ymin) / (ymax - ymin); };
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\">" << title
     << "</text>\n";
  os << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M
     << "\" y2=\"" << H - M << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\""
     << H - M << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << M << "\" y=\"" << H - M + 20 << "\">" << fmt17(xmin)
     << "</text>\n<text x=\"" << W - M << "\" y=\"" << H - M + 20
     << "\" text-anchor=\"end\">" << fmt17(xmax) << "</text>\n";
  os << "<text x=\"" << M - 6 << "\" y=\"" << H - M
     << "\" text-anchor=\"end\">" << fmt17(ymin) << "</text>\n<text x=\""
     << M - 6 << "\" y=\"" << M << "\" text-anchor=\"end\">" << fmt17(ymax)
     << "</text>\n";
  int ci = 0;
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << colors[ci % 4]
       << "\" points=\"";
    for (auto [x, y] : s.pts)
      if (std::isfinite(y)) os << X(x) << "," << Y(y) << " ";
    os << "\"/>\n";
    os << "<text x=\"" << W - M - 4 << "\" y=\"" << M + 18 * (ci + 1)
       << "\" text-anchor=\"end\" fill=\"" << colors[ci % 4] << "\">" << s.name
       << "</text>\n";
    ++ci;
  }
  os << "</svg>\n";
}

// ---------------------------------------------------------------------------
// verify suites

struct Check {
  std::string name;
  double residual = 0;
  double bound = 0;
  bool pass = false;
};

json check_json(const std::vector<Check>& cs) {
  json arr = json::array();
  for (const auto& c : cs)
    arr.push_back({{"name", c.name},
                   {"residual", c.residual},
                   {"bound", c.bound},
                   {"pass", c.pass}});
  return arr;
}

void push(std::vector<Check>& cs, const std::string& name, double residual,
          double bound) {
  cs.push_back({name, residual, bound, residual <= bound});
}

std::vector<Check> suite_bijection(int max_edges) {
  std::vector<Check> cs;
  int bad_packed = 0, bad_count = 0, bad_round = 0, configs = 0;
  for (const auto& m : enumerate_rooted_maps(max_edges)) {
    int E = m.num_edges();
    if (E == 0) continue;
    std::vector<char> subset(E, 0);
    for (unsigned mask = 0; mask < (1u << E); ++mask) {
      for (int e = 0; e < E; ++e) subset[e] = (mask >> e) & 1;
      auto cc = make_cluster_config(m, subset);
      auto loops = potts_to_loops(cc);
      ++configs;
      if (!loops.fully_packed() || loops.num_triangles() != 2 * E) ++bad_packed;
      if (loops.loop_count() != predicted_loop_count(cc)) ++bad_count;
      if (!same_config(loops_to_potts(loops, ColorChoice::red), cc)) ++bad_round;
    }
  }
  push(cs, "fully_packed_and_2E_triangles", bad_packed, 0);
  push(cs, "loop_count_identity", bad_count, 0);
  push(cs, "red_roundtrip", bad_round, 0);
  push(cs, "configs_visited_at_least", configs > 0 ? 0 : 1, 0);
  return cs;
}

// exhaustive weighted cluster sum, optionally filtered on the root edge
Rat grand_sum(int E, const Rat& Q, const Rat& t, const Rat& J, const Rat& mu_v,
              const Rat& mu_f, int root_filter) {
  Rat total = 0;
  for (const auto& m : enumerate_rooted_maps_with(E)) {
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

std::vector<Check> suite_series(int order) {
  std::vector<Check> cs;
  PottsParams q1;
  q1.Q = 1, q1.t = Rat(1, 4), q1.J = 1, q1.mu_v = 2, q1.mu_f = 3;
  PottsParams q94;
  q94.Q = Rat(9, 4), q94.t = Rat(1, 4), q94.J = Rat(3, 2), q94.mu_v = Rat(1, 2),
  q94.mu_f = Rat(2, 3);
  for (const auto& p : {q1, q94}) {
    auto gs = gasket_fixed_point(exact_loop_weights(p), order, 2);
    int bad = 0;
    for (int E = 1; 2 * E <= order && E <= 3; ++E) {
      if (gs.F1[2][2 * E] != grand_sum(E, p.Q, p.t, p.J, p.mu_v, p.mu_f, 1))
        ++bad;
      if (gs.F2[2][2 * E] != grand_sum(E, p.Q, p.t, p.J, p.mu_v, p.mu_f, 0))
        ++bad;
    }
    push(cs, "gasket_vs_map_enumeration_Q=" + rat_str(p.Q), bad, 0);
  }
  return cs;
}

std::vector<Check> suite_duality() {
  std::vector<Check> cs;
  struct QS {
    Rat Q, sqrtQ;
  };
  int bad_identity = 0, bad_inv = 0, bad_cons = 0;
  for (const QS& qs : {QS{1, 1}, QS{Rat(9, 4), Rat(3, 2)}}) {
    Rat t(1, 3), J(2);
    for (const auto& m : enumerate_rooted_maps(3))
      if (!duality_identity_check(m, qs.Q, qs.sqrtQ, t, J)) ++bad_identity;
    PottsParams p;
    p.Q = qs.Q, p.t = t, p.J = J;
    auto d = potts_dual(p);
    auto back = potts_from_dual(d);
    if (back.J != p.J || rat_pow(back.t, 2) != rat_pow(p.t, 2)) ++bad_inv;
    // J J* = Q and the self-dual invariant J t^2 = J* t*^2
    if (p.J * d.Jstar != p.Q) ++bad_cons;
    if (p.J * rat_pow(p.t, 2) != d.Jstar * d.tstar_sq) ++bad_cons;
  }
  push(cs, "partition_function_identity", bad_identity, 0);
  push(cs, "coupling_involution", bad_inv, 0);
  push(cs, "coupling_invariants", bad_cons, 0);
  return cs;
}

std::vector<Check> suite_elliptic() {
  std::vector<Check> cs;
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> ur(0.05, 0.95);
  double worst_period = 0, worst_phase = 0, worst_res = 0, worst_trig = 0;
  for (double b : {0.15, 0.3, 0.45})
    for (double T : {2.0, 4.0, 8.0}) {
      ZetaB z{b, T};
      for (int k = 0; k < 100; ++k) {
        Cplx v(ur(rng), -T * ur(rng));
        Cplx f = z(v);
        worst_period = std::max(worst_period,
                                std::abs(z(v + Cplx(0, 2 * T)) - f));
        worst_phase = std::max(
            worst_phase,
            std::abs(z(v + 1.0) - std::exp(Cplx(0, kPi * b)) * f));
      }
      Cplx v0(1e-7, -1e-7);
      worst_res = std::max(worst_res, std::abs(v0 * z(v0) - 1.0));
    }
  // trig comparison at T = 8: the theta form approaches the trig form like
  // e^{-pi b T}, so the residual is normalized by that rate per b
  for (double b : {0.38, 0.42, 0.47}) {
    ZetaB fin{b, 8.0};
    double rate = 60 * std::exp(-kPi * b * 8.0);
    for (double tau : {0.5, 1.0, 2.0}) {
      Cplx v(0.3, -tau);
      Cplx trig = kPi * std::exp(Cplx(0, kPi * (b - 1)) * v) /
                  std::sin(kPi * v);
      worst_trig =
          std::max(worst_trig, std::abs(fin(v) - trig) / std::abs(trig) / rate);
    }
  }
  push(cs, "period_2iT", worst_period, 1e-12);
  push(cs, "phase_shift", worst_phase, 1e-12);
  push(cs, "unit_residue", worst_res, 1e-6);
  push(cs, "trig_limit_T8_normalized", worst_trig, 1.0);
  return cs;
}

const ModelParams kSolverSets[] = {
    {1.0, 1.0, 0.1, 0.1, 1.0, 1.0},  {1.0, 0.8, 0.08, 0.12, 1.0, 1.3},
    {1.2, 1.2, 0.1, 0.07, 0.9, 1.1}, {0.6, 1.0, 0.12, 0.09, 1.3, 0.7},
    {std::numbers::sqrt2, 1.1, 0.06, 0.1, 1.0, 0.8}};

std::vector<Check> suite_solver() {
  std::vector<Check> cs;
  double worst_edge = 0, worst_fe = 0, worst_tail = 0;
  int failures = 0;
  for (const auto& p : kSolverSets) {
    auto rep = solve_cuts(p);
    if (!rep.converged || !rep.density_positive) {
      ++failures;
      continue;
    }
    worst_edge = std::max(worst_edge, rep.residual);
    auto ver = verify_solution(rep.sol);
    worst_fe = std::max({worst_fe, ver.fe_residual, ver.ext_residual});
    worst_tail = std::max({worst_tail, ver.large_x_err1, ver.large_x_err2});
  }
  push(cs, "solves_converged", failures, 0);
  push(cs, "edge_conditions", worst_edge, 1e-10);
  push(cs, "functional_equations", worst_fe, 1e-8);
  push(cs, "resolvent_tails", worst_tail, 1e-6);
  return cs;
}

std::vector<Check> suite_ising() {
  std::vector<Check> cs;
  double worst = 0;
  for (double a : {1.5, 2.0, 3.0, 3.9}) {
    auto cp = symmetric_bending(a, 1.0 / 3, 1.0);
    auto ic = ising_critical(a);
    worst = std::max(worst, std::abs(std::pow((1 - a * a) * cp.h1, 2) -
                                     ic.H_nongeneric));
  }
  push(cs, "two_matrix_cross_check", worst, 1e-10);
  auto i4 = ising_critical(4.0);
  push(cs, "branch_crossing_at_4", std::abs(i4.H_nongeneric - 10.0 / 9) +
                                       std::abs(i4.H_generic - 10.0 / 9),
       1e-12);
  auto [wm, am] = a_max(1.0 / 3);
  push(cs, "amax_at_unit_loop_weight",
       std::abs(wm - 0.75) + std::abs(am - 4.0), 1e-8);
  return cs;
}

int run_verify(const std::string& suite, int max_edges, int order,
               const std::string& out_path) {
  std::vector<Check> cs;
  if (suite == "bijection")
    cs = suite_bijection(max_edges);
  else if (suite == "series")
    cs = suite_series(order);
  else if (suite == "duality")
    cs = suite_duality();
  else if (suite == "elliptic")
    cs = suite_elliptic();
  else if (suite == "solver")
    cs = suite_solver();
  else if (suite == "ising")
    cs = suite_ising();
  else {
    std::cerr << "unknown suite: " << suite << "\n";
    return 2;
  }
  bool all = true;
  for (const auto& c : cs) all = all && c.pass;
  json rep = {{"suite", suite}, {"pass", all}, {"checks", check_json(cs)}};
  Output out(resolve_out(out_path));
  out.stream() << rep.dump(2) << "\n";
  return all ? 0 : 1;
}

// ---------------------------------------------------------------------------
// critical scans

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::dense_generic: return "dense";
    case Regime::dilute_boundary: return "dilute-boundary";
    case Regime::invalid_positivity: return "invalid";
  }
  return "?";
}

struct CritRow {
  CriticalPoint cp;
  bool ok = false;
  std::string error;
};

void print_crit_header(std::ostream& os) {
  os << "b,a,u,r,w1_re,w1_im,w2_re,w2_im,h1,h2,g1m,g1p,g2m,g2p,lam,del,"
        "regime,residual\n";
}

void print_crit_row(std::ostream& os, const CritRow& row) {
  const CriticalPoint& c = row.cp;
  os << fmt17(c.b) << "," << fmt17(c.a) << "," << fmt17(c.u) << ","
     << fmt17(c.r) << ",";
  if (!row.ok) {
    os << ",,,,,,,,,,,,failed," << row.error << "\n";
    return;
  }
  os << fmt17(c.w1.real()) << "," << fmt17(c.w1.imag()) << ","
     << fmt17(c.w2.real()) << "," << fmt17(c.w2.imag()) << "," << fmt17(c.h1)
     << "," << fmt17(c.h2) << "," << fmt17(c.g1m) << "," << fmt17(c.g1p) << ","
     << fmt17(c.g2m) << "," << fmt17(c.g2p) << "," << fmt17(c.lam) << ","
     << fmt17(c.del) << "," << regime_name(c.regime) << ","
     << fmt17(c.residual) << "\n";
}

// deterministic fan-out over a parameter list
template <class F>
std::vector<CritRow> scan(const std::vector<double>& xs, int threads, F&& f) {
  std::vector<CritRow> rows(xs.size());
  if (threads < 1) threads = 1;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (size_t i = t; i < xs.size(); i += threads) {
        try {
          rows[i].cp = f(xs[i]);
          rows[i].ok = true;
        } catch (const std::exception& e) {
          rows[i].error = e.what();
        }
      }
    });
  for (auto& th : pool) th.join();
  return rows;
}

int run_critical(const std::string& mode, double b, double u, double r,
                 double a, const std::string& r_range,
                 const std::string& a_range, const std::string& q_range,
                 const std::string& n_range, int threads,
                 const std::string& format, const std::string& out_path) {
  Output out(resolve_out(out_path));
  std::ostream& os = out.stream();

  auto emit = [&](const std::vector<double>& xs, const std::string& xname,
                  const std::vector<CritRow>& rows) {
    if (format == "svg") {
      PlotSeries s1{"h1", {}}, s2{"h2", {}};
      for (size_t i = 0; i < rows.size(); ++i)
        if (rows[i].ok) {
          s1.pts.push_back({xs[i], rows[i].cp.h1});
          s2.pts.push_back({xs[i], rows[i].cp.h2});
        }
      write_svg(os, "critical " + mode + " vs " + xname, {s1, s2});
      return;
    }
    print_crit_header(os);
    for (const auto& row : rows) print_crit_row(os, row);
  };

  Range R;
  if (mode == "a1" || mode == "general" || mode == "nzero") {
    std::vector<double> xs;
    std::string xname;
    bool scan_a = !a_range.empty();
    if (scan_a && parse_range(a_range, R)) {
      xs = R.values(), xname = "a";
    } else if (!r_range.empty() && parse_range(r_range, R)) {
      xs = R.values(), xname = "r";
    } else {
      xs = {r};
      xname = "r";
    }
    (void)scan_a;
    if (xs.empty()) {
      std::cerr << "empty or invalid range\n";
      return 2;
    }
    auto rows = scan(xs, threads, [&](double x) {
      double rr = (xname == "r") ? x : r;
      double aa = (xname == "a") ? x : a;
      if (mode == "a1") return critical_point_a1(u, rr, b);
      if (mode == "nzero") return critical_point_nzero(u, rr, aa);
      return critical_point_general(u, rr, aa, b);
    });
    emit(xs, xname, rows);
    int bad = 0;
    for (const auto& row : rows) bad += !row.ok;
    return bad == static_cast<int>(rows.size()) && !rows.empty() ? 1 : 0;
  }

  if (mode == "symmetric") {
    if (a_range.empty() || !parse_range(a_range, R)) {
      std::cerr << "symmetric mode needs --a-range lo:hi:step\n";
      return 2;
    }
    auto xs = R.values();
    auto rows =
        scan(xs, threads, [&](double x) { return symmetric_bending(x, b, u); });
    emit(xs, "a", rows);
    return 0;
  }

  if (mode == "potts") {
    if (q_range.empty() || !parse_range(q_range, R)) {
      std::cerr << "potts mode needs --Q-range lo:hi:step\n";
      return 2;
    }
    auto xs = R.values();
    std::vector<PottsCritical> rows(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) rows[i] = potts_critical(xs[i]);
    if (format == "svg") {
      PlotSeries st{"t_c", {}}, ss{"t_selfdual", {}};
      for (size_t i = 0; i < xs.size(); ++i) {
        st.pts.push_back({xs[i], rows[i].t_c});
        ss.pts.push_back({xs[i], rows[i].t_selfdual});
      }
      write_svg(os, "Potts critical couplings", {st, ss});
      return 0;
    }
    os << "Q,t_c,J_c,K_c,t_selfdual,J_selfdual\n";
    for (size_t i = 0; i < xs.size(); ++i)
      os << fmt17(rows[i].Q) << "," << fmt17(rows[i].t_c) << ","
         << fmt17(rows[i].J_c) << "," << fmt17(rows[i].K_c) << ","
         << fmt17(rows[i].t_selfdual) << "," << fmt17(rows[i].J_selfdual)
         << "\n";
    return 0;
  }

  if (mode == "amax") {
    if (n_range.empty() || !parse_range(n_range, R)) {
      std::cerr << "amax mode needs --n-range lo:hi:step\n";
      return 2;
    }
    auto xs = R.values();
    struct AR {
      double n, b, w, a;
      bool ok;
    };
    std::vector<AR> rows(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
      rows[i].n = xs[i];
      rows[i].b = b_from_n(xs[i]);
      try {
        auto [w, am] = a_max(rows[i].b);
        rows[i].w = w, rows[i].a = am, rows[i].ok = true;
      } catch (const std::exception&) {
        rows[i].ok = false;
      }
    }
    if (format == "svg") {
      PlotSeries s{"a_max", {}};
      for (const auto& row : rows)
        if (row.ok) s.pts.push_back({row.n, row.a});
      write_svg(os, "largest bending weight vs loop weight", {s});
      return 0;
    }
    os << "n,b,w1_max,a_max\n";
    for (const auto& row : rows) {
      os << fmt17(row.n) << "," << fmt17(row.b) << ",";
      if (row.ok)
        os << fmt17(row.w) << "," << fmt17(row.a) << "\n";
      else
        os << ",\n";
    }
    return 0;
  }

  std::cerr << "unknown mode: " << mode << "\n";
  return 2;
}

// ---------------------------------------------------------------------------
// density sampling

// least-squares slope of y against x
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= x.size(), my /= x.size();
  double num = 0, den = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

int run_density_subcritical(const std::string& params_path, int samples,
                            const std::string& out_path) {
  std::ifstream in(params_path);
  if (!in) {
    std::cerr << "cannot read " << params_path << "\n";
    return 2;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  ModelParams p = model_from_json(ss.str());
  auto rep = solve_cuts(p);
  if (!rep.converged) {
    std::cerr << "solver did not converge, residual " << rep.residual << "\n";
    return 1;
  }
  Output out(resolve_out(out_path));
  std::ostream& os = out.stream();
  os << "color,tau,x,rho\n";
  double T = rep.sol.fr.T;
  bool positive = true;
  for (int color = 1; color <= 2; ++color)
    for (int i = 1; i < samples; ++i) {
      double tau = T * i / samples;
      double x = density_location(rep.sol, color, tau);
      double rho = spectral_density(rep.sol, color, tau);
      if (rho < -1e-9) positive = false;
      os << color << "," << fmt17(tau) << "," << fmt17(x) << "," << fmt17(rho)
         << "\n";
    }
  // edge exponent: rho ~ (x - g1m)^nu near the lower edge of cut 1
  std::vector<double> lx, ly;
  for (double f : {0.02, 0.03, 0.04, 0.06, 0.08}) {
    double tau = f * T;
    double x = density_location(rep.sol, 1, tau);
    double dx = std::min(std::abs(x - rep.sol.fr.g1m),
                         std::abs(x - rep.sol.fr.g1p));
    double rho = spectral_density(rep.sol, 1, tau);
    if (dx > 0 && rho > 0) lx.push_back(std::log(dx)), ly.push_back(std::log(rho));
  }
  double nu = lx.size() >= 2 ? fit_slope(lx, ly) : 0;
  os << "# positive=" << (positive ? 1 : 0) << "\n";
  os << "# edge_exponent=" << fmt17(nu) << "\n";
  os << "# residual=" << fmt17(rep.residual) << "\n";
  return positive ? 0 : 1;
}

int run_density_critical(double b, double a, double u, double r, int samples,
                         double tau_max, const std::string& out_path) {
  CriticalPoint cp;
  if (std::abs(a - 1) < 1e-12)
    cp = critical_point_a1(u, r, b);
  else if (std::abs(r - 1) < 1e-12)
    cp = symmetric_bending(a, b, u);
  else
    cp = critical_point_general(u, r, a, b);
  Output out(resolve_out(out_path));
  std::ostream& os = out.stream();
  os << "color,tau,x,rho\n";
  bool positive = cp.regime != Regime::invalid_positivity;
  for (int color = 1; color <= 2; ++color)
    for (int i = 1; i <= samples; ++i) {
      double tau = tau_max * i / samples;
      Cplx v(color == 1 ? 1.0 : 0.0, -tau);
      double x = critical_x(cp, v).real();
      if (color == 2) x = SMaps{cp.a, cp.h1, cp.h2}.s1(x);
      double rho = critical_density(cp, color, tau);
      if (rho < -1e-9) positive = false;
      os << color << "," << fmt17(tau) << "," << fmt17(x) << "," << fmt17(rho)
         << "\n";
    }
  // log-slope of the tail against the dense-phase numerator rate pi(2-b)
  // (the frame derivative contributes one unit of decay)
  std::vector<double> lt, lr;
  for (double tau = 4; tau <= 7.0001; tau += 0.5) {
    double rho = std::abs(critical_density(cp, 1, tau));
    if (rho > 0) lt.push_back(tau), lr.push_back(std::log(rho));
  }
  double rate = lt.size() >= 2 ? -fit_slope(lt, lr) / kPi + 1 : 0;
  os << "# positive=" << (positive ? 1 : 0) << "\n";
  os << "# regime=" << regime_name(cp.regime) << "\n";
  os << "# dense_rate=" << fmt17(rate) << "\n";
  os << "# dense_rate_expected=" << fmt17(2 - b) << "\n";
  return positive ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twofold loop model toolkit"};
  app.require_subcommand(1);

  // verify
  std::string suite, v_out;
  int max_edges = 3, order = 6;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite,
                     "bijection|series|duality|elliptic|solver|ising")
      ->required();
  verify->add_option("--max-edges", max_edges, "map size cap (<= 4)")
      ->check(CLI::Range(1, 4));
  verify->add_option("--order", order, "series truncation grade (<= 8)")
      ->check(CLI::Range(2, 8));
  verify->add_option("--out", v_out, "report path (default stdout)");

  // critical
  std::string mode, c_out, r_range, a_range, q_range, n_range;
  std::string format = "csv";
  double b = 0.3, u = 1, r = 1, a = 1;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  auto* critical = app.add_subcommand("critical", "critical-variety scans");
  critical->add_option("mode", mode, "a1|general|symmetric|potts|amax|nzero")
      ->required();
  critical->add_option("--b", b, "loop-weight parameter, n = 2 cos(pi b)");
  critical->add_option("--u", u, "vertex weight scale");
  critical->add_option("--r", r, "vertex weight ratio");
  critical->add_option("--a", a, "bending weight");
  critical->add_option("--r-range", r_range, "lo:hi:step scan in r");
  critical->add_option("--a-range", a_range, "lo:hi:step scan in a");
  critical->add_option("--Q-range", q_range, "lo:hi:step scan in Q");
  critical->add_option("--n-range", n_range, "lo:hi:step scan in n");
  critical->add_option("--threads", threads, "worker pool size");
  critical->add_option("--format", format, "csv|svg")
      ->check(CLI::IsMember({"csv", "svg"}));
  critical->add_option("--out", c_out, "output path (default stdout)");

  // density
  std::string params_json, d_out;
  int samples = 64;
  bool at_critical = false;
  double db = 0.3, da = 1, du = 1, dr = 1, tau_max = 6;
  auto* density = app.add_subcommand("density", "spectral density sampling");
  density->add_option("--params-json", params_json,
                      "model parameter file (subcritical sampling)");
  density->add_flag("--at-critical", at_critical,
                    "sample the T = infinity critical density instead");
  density->add_option("--b", db, "loop-weight parameter");
  density->add_option("--a", da, "bending weight");
  density->add_option("--u", du, "vertex weight scale");
  density->add_option("--r", dr, "vertex weight ratio");
  density->add_option("--tau-max", tau_max, "cylinder depth sampled");
  density->add_option("--samples", samples, "points per cut")
      ->check(CLI::Range(2, 100000));
  density->add_option("--out", d_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) return run_verify(suite, max_edges, order, v_out);
    if (critical->parsed())
      return run_critical(mode, b, u, r, a, r_range, a_range, q_range, n_range,
                          threads, format, c_out);
    if (density->parsed()) {
      if (at_critical)
        return run_density_critical(db, da, du, dr, samples, tau_max, d_out);
      if (params_json.empty()) {
        std::cerr << "density needs --params-json or --at-critical\n";
        return 2;
      }
      return run_density_subcritical(params_json, samples, d_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
