#pragma once

// JSON in and out: character specs, exact cyclotomic records, numeric values and
// the verification reports.

#include "periods.hpp"
#include "qfield.hpp"
#include "symdecomp.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace dihedral {

using nlohmann::json;

// Bad input; field() names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& msg) : std::runtime_error(field + ": " + msg), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, std::string("invalid JSON: ") + e.what());
  }
}

namespace detail {

template <class T>
T get_field(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key)) throw ConfigError(ctx + key, "missing");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(ctx + key, "wrong type");
  }
}

}  // namespace detail

// { "disc": D, "weight_k": k, "conductor": [a, b] | [g, a, b], "finite_part":
//   [{"gen": [x, y], "exp": e}, ...], "order": M }
// gen = x + y t with t = (D mod 2 + sqrt(D)) / 2. A missing conductor means the
// unit ideal. "class_group_values" is reserved for h(D) > 1.
inline HeckeChar parse_char_spec(const json& j) {
  if (!j.is_object()) throw ConfigError("character", "expected an object");
  i64 D = detail::get_field<i64>(j, "disc", "");
  std::optional<QuadField> K;
  try {
    K.emplace(D);
  } catch (const std::exception& e) {
    throw ConfigError("disc", e.what());
  }
  int k = detail::get_field<int>(j, "weight_k", "");
  if (k < 2) throw ConfigError("weight_k", "must be >= 2");
  QuadIdeal m{1, 1, K->delta()};
  if (j.contains("conductor")) {
    auto c = detail::get_field<std::vector<i64>>(j, "conductor", "");
    if (c.size() == 2)
      m = QuadIdeal{1, c[0], c[1]};
    else if (c.size() == 3)
      m = QuadIdeal{c[0], c[1], c[2]};
    else
      throw ConfigError("conductor", "expected [a, b] or [g, a, b]");
    if (!K->valid(m)) throw ConfigError("conductor", "not an ideal in normal form: need a > 0, 0 <= b < 2a, b^2 = D mod 4a");
  }
  i64 M = j.contains("order") ? detail::get_field<i64>(j, "order", "") : 1;
  if (M < 1) throw ConfigError("order", "must be >= 1");
  std::vector<HeckeChar::Generator> gens;
  if (j.contains("finite_part")) {
    const json& fp = j.at("finite_part");
    if (!fp.is_array()) throw ConfigError("finite_part", "expected an array");
    for (std::size_t i = 0; i < fp.size(); ++i) {
      std::string ctx = "finite_part[" + std::to_string(i) + "].";
      auto g = detail::get_field<std::vector<i64>>(fp[i], "gen", ctx);
      if (g.size() != 2) throw ConfigError(ctx + "gen", "expected [x, y]");
      gens.push_back({QuadInt{g[0], g[1]}, detail::get_field<i64>(fp[i], "exp", ctx)});
    }
  }
  if (j.contains("class_group_values") && !j.at("class_group_values").is_null() && !j.at("class_group_values").empty())
    throw ConfigError("class_group_values", "reserved: class number > 1 is not supported");
  try {
    return HeckeChar::build(*K, k, m, gens, M);
  } catch (const std::exception& e) {
    throw ConfigError("character", e.what());
  }
}

inline json default_char_spec() { return json{{"disc", -7}, {"weight_k", 3}, {"conductor", {1, 1}}, {"finite_part", json::array()}, {"order", 1}}; }

inline std::string decimal(const Real& x, int digits = 40) { return x.to_string(digits); }

inline json to_json(const Complex& z, int digits = 40) { return {{"re", decimal(z.re, digits)}, {"im", decimal(z.im, digits)}}; }

inline json to_json(const Cyclo& c, long bits = 128) {
  json coeffs = json::array();
  for (const auto& q : c.coeffs()) coeffs.push_back(q.get_str());
  Complex z = c.embed(bits);
  return {{"order", c.order()}, {"coefficients", coeffs}, {"decimal", to_json(z, 30)}};
}

inline json to_json(const CycloPoly& p) {
  json a = json::array();
  for (const auto& c : p) a.push_back(to_json(c));
  return {{"text", poly_to_string(p)}, {"coefficients", a}};
}

inline json to_json(const PolyCheck& c) {
  json j{{"ok", c.ok}, {"p", c.p}, {"n", c.n}, {"variant", c.variant}};
  if (!c.ok) {
    j["lhs"] = to_json(c.lhs);
    j["rhs"] = to_json(c.rhs);
  }
  return j;
}

inline json to_json(const RecognitionResult& r) {
  json poly = json::array();
  for (const auto& c : r.poly) poly.push_back(c.get_str());
  json j{{"poly", poly},
         {"poly_text", r.poly_string()},
         {"residual", std::exp2(r.residual_log2)},
         {"residual_log2", r.residual_log2},
         {"height", r.height.get_str()},
         {"degree_cap", r.max_degree},
         {"verdict", r.recognized() ? "recognized" : "not_found"},
         {"method", r.method},
         {"precision", r.bits}};
  if (auto q = r.rational()) j["rational"] = q->get_str();
  return j;
}

inline json to_json(const RatioReport& r) {
  json j = to_json(r.recognition);
  j["label"] = r.label;
  j["raw"] = to_json(r.ratio);
  if (!r.residual_curve.empty()) {
    json c = json::array();
    for (auto [b, res] : r.residual_curve) c.push_back({{"bits", b}, {"residual_log2", res}});
    j["residual_curve"] = c;
  }
  return j;
}

inline json to_json(const CalibrationReport& c) {
  return {{"conductor", c.conductor},
          {"conductor_fitted", c.conductor_fitted},
          {"root_number", to_json(c.root_number, 20)},
          {"residual_log2", c.residual_log2},
          {"candidates_tried", c.tried}};
}

inline json to_json(const TwistChoice& t) {
  json j{{"xi", t.xi.describe()}, {"conductor", t.xi.conductor()}, {"parity", t.xi.parity()}, {"L_value", to_json(t.L)}};
  if (t.calibration) j["calibration"] = to_json(*t.calibration);
  return j;
}

inline json to_json(const PeriodPair& p) {
  return {{"u_plus", to_json(p.u_plus)},
          {"u_minus", to_json(p.u_minus)},
          {"point", p.point},
          {"xi_plus", to_json(p.plus)},
          {"xi_minus", to_json(p.minus)},
          {"skipped", p.skipped},
          {"normalization", "u = L_f(k-1, phi, xi) / ((2 pi i)^(k-1) gamma(xi)); delta(omega) = (2 pi i)^(1-k) gamma(omega)"},
          {"precision", p.bits}};
}

inline json to_json(const ComponentValue& c) {
  json j{{"piece", c.description}, {"method", c.method}, {"point", c.point}, {"value", to_json(c.value)}};
  if (c.calibration) j["calibration"] = to_json(*c.calibration);
  if (c.residual_log2 != 0) j["residual_log2"] = c.residual_log2;
  return j;
}

inline json to_json(const CriticalValue& v) {
  json comps = json::array();
  for (const auto& c : v.components) comps.push_back(to_json(c));
  return {{"n", v.n}, {"m", v.m}, {"critical", v.critical}, {"warnings", v.warnings}, {"value", to_json(v.value)}, {"pieces", comps}};
}

inline json to_json(const RelationReport& r) {
  return {{"n", r.n},
          {"ok", r.ok()},
          {"r_plus", to_json(r.plus)},
          {"r_minus", to_json(r.minus)},
          {"plus_exactly_one", r.plus_exactly_one},
          {"periods_base", to_json(r.base)},
          {"periods_power", to_json(r.power)}};
}

inline json to_json(const DeligneReport& r) {
  return {{"n", r.n},
          {"m", r.m},
          {"sign", std::string(1, r.sign)},
          {"d", r.d},
          {"ok", r.ok()},
          {"ratio", to_json(r.ratio)},
          {"value", to_json(r.value)},
          {"c_plus", to_json(r.deligne.c_plus)},
          {"c_minus", to_json(r.deligne.c_minus)},
          {"delta_omega", to_json(r.deligne.delta)}};
}

inline json to_json(const SturmReport& r) {
  return {{"m", r.m},
          {"xi", r.xi.describe()},
          {"two_pi_i_exponent", r.two_pi_i_exponent},
          {"ok", r.ok()},
          {"ratio", to_json(r.ratio)},
          {"value", to_json(r.value)}};
}

inline json to_json(const EquivarianceReport& r) {
  json j{{"b", r.b}, {"field_order", r.field_order}, {"conclusive", r.conclusive}, {"plus_match", r.plus_match}, {"minus_match", r.minus_match},
         {"ok", r.ok()}};
  if (r.plus.recognized) j["r_plus"] = to_json(r.plus.value);
  if (r.plus_conj.recognized) j["r_plus_conjugate"] = to_json(r.plus_conj.value);
  if (r.minus.recognized) j["r_minus"] = to_json(r.minus.value);
  if (r.minus_conj.recognized) j["r_minus_conjugate"] = to_json(r.minus_conj.value);
  return j;
}

inline json field_info(const QuadField& K, i64 bound = 100) {
  json split = json::object();
  for (i64 p : primes_upto(bound - 1)) split[std::to_string(p)] = to_string(K.splitting(p));
  return {{"disc", K.disc()}, {"class_number", K.class_number()}, {"unit_count", K.unit_count()}, {"splitting", split}};
}

inline json char_info(const HeckeChar& chi) {
  CMForm f(chi);
  return {{"description", chi.describe()},
          {"weight", f.weight()},
          {"level", f.level()},
          {"level_convention", "|D| * N(conductor)"},
          {"nebentypus", f.nebentypus().describe()},
          {"value_order", chi.value_order()},
          {"primitive", chi.is_primitive()},
          {"coefficient_field_degree", coefficient_field_degree(f)}};
}

}  // namespace dihedral
