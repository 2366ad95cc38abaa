#include <twofold/model.hpp>

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace twofold {

using nlohmann::json;

double PottsParams::K() const { return std::log(1.0 + to_double(J)); }

double ModelParams::b() const { return b_from_n(n); }

double ModelParams::u() const { return std::sqrt(u1 * u2); }

bool ModelParams::valid() const {
  if (!(n > 0 && n < 2)) return false;
  if (!(a > 0) || h1 < 0 || h2 < 0 || !(u1 > 0) || !(u2 > 0)) return false;
  for (double g : g1_seq)
    if (g < 0) return false;
  for (double g : g2_seq)
    if (g < 0) return false;
  return true;
}

double b_from_n(double n) {
  if (!(n > 0 && n < 2))
    throw std::domain_error(
        "b_from_n: n must lie in the open interval (0, 2)");
  return std::acos(n / 2.0) / std::numbers::pi;
}

ModelParams loop_from_potts(const PottsParams& p) {
  if (!p.valid()) throw std::invalid_argument("invalid Potts parameters");
  if (p.Q >= 4)
    throw std::domain_error("loop_from_potts: Q >= 4 puts n outside (0, 2)");
  if (p.J <= 0)
    throw std::domain_error(
        "loop_from_potts: J <= 0 leaves h1 undefined on the solver path");
  double Q = to_double(p.Q), t = to_double(p.t), J = to_double(p.J);
  double sq = std::sqrt(Q);
  ModelParams m;
  m.n = sq;
  m.a = 1;
  m.h1 = std::sqrt(J * t / sq);
  m.h2 = std::sqrt(t);
  m.u1 = to_double(p.mu_v) * sq;
  m.u2 = to_double(p.mu_f);
  return m;
}

ExactLoopWeights exact_loop_weights(const PottsParams& p) {
  if (!p.valid()) throw std::invalid_argument("invalid Potts parameters");
  Rat sqrtQ, h1, h2;
  if (!rat_sqrt(p.Q, sqrtQ))
    throw std::domain_error("exact_loop_weights: sqrt(Q) irrational");
  if (!rat_sqrt(p.t, h2))
    throw std::domain_error("exact_loop_weights: sqrt(t) irrational");
  if (!rat_sqrt(p.J * p.t / sqrtQ, h1))
    throw std::domain_error("exact_loop_weights: sqrt(J t / sqrt(Q)) irrational");
  ExactLoopWeights w;
  w.n = sqrtQ;
  w.a = 1;
  w.h1 = h1;
  w.h2 = h2;
  w.u1 = p.mu_v * sqrtQ;
  w.u2 = p.mu_f;
  return w;
}

PottsDual potts_dual(const PottsParams& p) {
  if (p.J == 0)
    throw std::domain_error("potts_dual: J = 0 has an infinite dual coupling");
  if (p.J < 0) throw std::domain_error("potts_dual: requires J > 0");
  PottsDual d;
  d.Q = p.Q;
  d.Jstar = p.Q / p.J;
  d.tstar_sq = p.J * p.J * p.t * p.t / p.Q;  // (J t / sqrt(Q))^2
  d.tstar = to_double(p.J * p.t) / std::sqrt(to_double(p.Q));
  Rat sqrtQ;
  if (rat_sqrt(p.Q, sqrtQ)) d.tstar_exact = p.J * p.t / sqrtQ;
  d.mu_v = p.mu_f;
  d.mu_f = p.mu_v;
  return d;
}

PottsParams potts_from_dual(const PottsDual& d) {
  PottsParams p;
  p.Q = d.Q;
  p.J = d.Q / d.Jstar;
  Rat t2 = d.Jstar * d.Jstar * d.tstar_sq / d.Q;
  Rat t;
  if (!rat_sqrt(t2, t))
    throw std::domain_error("potts_from_dual: t^2 is not a rational square");
  p.t = t;
  p.mu_v = d.mu_f;
  p.mu_f = d.mu_v;
  return p;
}

std::string potts_to_json(const PottsParams& p) {
  json j;
  j["Q"] = rat_str(p.Q);
  j["t"] = rat_str(p.t);
  j["J"] = rat_str(p.J);
  j["mu_v"] = rat_str(p.mu_v);
  j["mu_f"] = rat_str(p.mu_f);
  if (p.mu_v_vac) j["mu_v_vac"] = rat_str(*p.mu_v_vac);
  if (p.mu_f_dual) j["mu_f_dual"] = rat_str(*p.mu_f_dual);
  return j.dump();
}

PottsParams potts_from_json(const std::string& text) {
  json j = json::parse(text);
  PottsParams p;
  p.Q = rat_parse(j.at("Q").get<std::string>());
  p.t = rat_parse(j.at("t").get<std::string>());
  p.J = rat_parse(j.at("J").get<std::string>());
  if (j.contains("mu_v")) p.mu_v = rat_parse(j["mu_v"].get<std::string>());
  if (j.contains("mu_f")) p.mu_f = rat_parse(j["mu_f"].get<std::string>());
  if (j.contains("mu_v_vac"))
    p.mu_v_vac = rat_parse(j["mu_v_vac"].get<std::string>());
  if (j.contains("mu_f_dual"))
    p.mu_f_dual = rat_parse(j["mu_f_dual"].get<std::string>());
  return p;
}

std::string model_to_json(const ModelParams& m) {
  json j;
  j["n"] = m.n;
  j["a"] = m.a;
  j["h1"] = m.h1;
  j["h2"] = m.h2;
  j["u1"] = m.u1;
  j["u2"] = m.u2;
  j["g1_seq"] = m.g1_seq;
  j["g2_seq"] = m.g2_seq;
  return j.dump();
}

ModelParams model_from_json(const std::string& text) {
  json j = json::parse(text);
  ModelParams m;
  m.n = j.at("n").get<double>();
  m.a = j.at("a").get<double>();
  m.h1 = j.at("h1").get<double>();
  m.h2 = j.at("h2").get<double>();
  m.u1 = j.at("u1").get<double>();
  m.u2 = j.at("u2").get<double>();
  if (j.contains("g1_seq")) m.g1_seq = j["g1_seq"].get<std::vector<double>>();
  if (j.contains("g2_seq")) m.g2_seq = j["g2_seq"].get<std::vector<double>>();
  return m;
}

}  // namespace twofold
