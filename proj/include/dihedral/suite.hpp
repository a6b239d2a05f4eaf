#pragma once

// Batch verification: a JSON run config in, one deterministic JSON report out.

#include "io.hpp"

#include <chrono>
#include <filesystem>
#include <algorithm>

namespace dihedral {

inline constexpr const char* kToolVersion = "1.0.0";

struct IdealCountResult {
  bool ok = true;
  i64 bound = 0;
  std::optional<i64> first_mismatch;
};

// #{ideals of norm n} = sum_{d | n} omega_K(d) for n <= bound.
inline IdealCountResult ideal_count_check(const QuadField& K, i64 bound) {
  IdealCountResult r;
  r.bound = bound;
  std::vector<i64> count(static_cast<std::size_t>(bound + 1), 0), expect(static_cast<std::size_t>(bound + 1), 0);
  for (const auto& [I, n] : K.enumerate_ideals(bound)) ++count[static_cast<std::size_t>(n)];
  for (i64 d = 1; d <= bound; ++d) {
    int w = K.omega_value(d);
    if (w == 0) continue;
    for (i64 n = d; n <= bound; n += d) expect[static_cast<std::size_t>(n)] += w;
  }
  for (i64 n = 1; n <= bound; ++n)
    if (count[static_cast<std::size_t>(n)] != expect[static_cast<std::size_t>(n)]) {
      r.ok = false;
      r.first_mismatch = n;
      break;
    }
  return r;
}

// Ten points off the calibration points, spread around the critical strip.
inline std::vector<Complex> fe_test_points(int w, long bits) {
  std::vector<Complex> pts;
  double c = (w + 1) / 2.0;
  for (int j = 0; j < 10; ++j) {
    double re = c - 1.1 + 0.27 * j, im = (j % 2 ? -1.0 : 1.0) * (0.35 + 0.41 * j);
    pts.emplace_back(Real(re, bits), Real(im, bits));
  }
  return pts;
}

struct RunConfig {
  json character = default_char_spec();
  long precision = 256;
  i64 prime_bound = 500;
  int sym_min = 1, sym_max = 6;
  mpz_class max_height = 1000000;
  i64 ideal_bound = 10000;
  int relation_max = 3;
  std::vector<std::pair<int, int>> deligne_points;  // empty = defaults
  std::vector<std::string> checks;
  bool corrupt_fixture = false;
  std::string output;

  json echo() const {
    json dp = json::array();
    for (auto [n, m] : deligne_points) dp.push_back({n, m});
    return {{"character", character},
            {"precision", precision},
            {"prime_bound", prime_bound},
            {"sym_range", {sym_min, sym_max}},
            {"height_cap", max_height.get_str()},
            {"ideal_bound", ideal_bound},
            {"relation_max", relation_max},
            {"deligne_points", dp},
            {"checks", checks},
            {"corrupt_fixture", corrupt_fixture}};
  }
};

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> v{"ideals", "factorization", "rankin_selberg", "critical_sets", "lvalues",
                                          "periods", "relations",     "deligne",        "sturm"};
  return v;
}

// Relative character paths resolve against base_dir (the config file's directory).
inline RunConfig parse_run_config(const json& j, const std::string& base_dir = "") {
  RunConfig c;
  if (!j.is_object()) throw ConfigError("config", "expected an object");
  for (const auto& [key, _] : j.items()) {
    static const std::vector<std::string> keys{"character", "character_path", "precision", "prime_bound",   "sym_range", "height_cap",
                                               "ideal_bound", "relation_max", "deligne_points", "checks", "corrupt_fixture", "output"};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError(key, "unknown key");
  }
  if (j.contains("character_path")) {
    std::filesystem::path p = detail::get_field<std::string>(j, "character_path", "");
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    c.character = read_json_file(p.string());
  }
  if (j.contains("character")) c.character = j.at("character");
  if (j.contains("precision")) c.precision = detail::get_field<long>(j, "precision", "");
  if (c.precision < 128) throw ConfigError("precision", "must be >= 128");
  if (j.contains("prime_bound")) c.prime_bound = detail::get_field<i64>(j, "prime_bound", "");
  if (c.prime_bound < 2) throw ConfigError("prime_bound", "must be >= 2");
  if (j.contains("sym_range")) {
    auto r = detail::get_field<std::vector<int>>(j, "sym_range", "");
    if (r.size() != 2 || r[0] < 1 || r[1] < r[0]) throw ConfigError("sym_range", "expected [lo, hi] with 1 <= lo <= hi");
    c.sym_min = r[0];
    c.sym_max = r[1];
  }
  if (j.contains("height_cap")) {
    const json& h = j.at("height_cap");
    try {
      c.max_height = h.is_string() ? mpz_class(h.get<std::string>()) : mpz_class(h.get<long>());
    } catch (const std::exception&) {
      throw ConfigError("height_cap", "expected a positive integer");
    }
    if (c.max_height < 1) throw ConfigError("height_cap", "must be positive");
  }
  if (j.contains("ideal_bound")) c.ideal_bound = detail::get_field<i64>(j, "ideal_bound", "");
  if (c.ideal_bound < 1) throw ConfigError("ideal_bound", "must be >= 1");
  if (j.contains("relation_max")) c.relation_max = detail::get_field<int>(j, "relation_max", "");
  if (c.relation_max < 1) throw ConfigError("relation_max", "must be >= 1");
  if (j.contains("deligne_points")) {
    auto pts = detail::get_field<std::vector<std::vector<int>>>(j, "deligne_points", "");
    for (const auto& p : pts) {
      if (p.size() != 2 || p[0] < 1) throw ConfigError("deligne_points", "expected [[n, m], ...] with n >= 1");
      c.deligne_points.emplace_back(p[0], p[1]);
    }
  }
  // absent means everything; an explicit [] runs nothing
  c.checks = j.contains("checks") ? detail::get_field<std::vector<std::string>>(j, "checks", "") : known_checks();
  for (const auto& name : c.checks)
    if (std::find(known_checks().begin(), known_checks().end(), name) == known_checks().end())
      throw ConfigError("checks", "unknown check '" + name + "'");
  if (j.contains("corrupt_fixture")) c.corrupt_fixture = detail::get_field<bool>(j, "corrupt_fixture", "");
  if (j.contains("output")) c.output = detail::get_field<std::string>(j, "output", "");
  parse_char_spec(c.character);
  return c;
}

struct Report {
  json body;  // deterministic part
  json timing = json::object();
  bool pass = true;
  std::vector<std::string> failures;

  json to_json() const {
    json j = body;
    j["pass"] = pass;
    j["failures"] = failures;
    j["timing_seconds"] = timing;
    return j;
  }
};

namespace detail {

inline json run_factorization(const HeckeChar& chi, const RunConfig& c, bool& ok) {
  CMForm f(chi);
  json fails = json::array();
  long checked = 0;
  for (int n = c.sym_min; n <= c.sym_max; ++n)
    for (i64 p : primes_upto(c.prime_bound - 1)) {
      if (!f.is_good(p)) continue;
      for (auto model : {TwistModel::direct, TwistModel::omega, TwistModel::omega_omegaK}) {
        auto r = factorization_check(chi, n, p, model, c.corrupt_fixture);
        ++checked;
        if (!r.ok) fails.push_back(dihedral::to_json(r));
      }
    }
  ok = fails.empty();
  return {{"checked", checked}, {"failed", fails.size()}, {"failures", fails}};
}

inline json run_rankin_selberg(const HeckeChar& chi, const RunConfig& c, bool& ok) {
  CMForm f(chi);
  json fails = json::array();
  long checked = 0;
  for (int n = c.sym_min; n <= c.sym_max; ++n)
    for (i64 p : primes_upto(c.prime_bound - 1)) {
      if (!f.is_good(p)) continue;
      auto r = rankin_selberg_check(chi, n, p);
      ++checked;
      if (!r.ok) fails.push_back(dihedral::to_json(r));
    }
  ok = fails.empty();
  return {{"checked", checked}, {"failed", fails.size()}, {"failures", fails}};
}

inline json run_critical_sets(const HeckeChar& chi, const RunConfig& c, bool& ok) {
  int k = chi.weight();
  json rows = json::array();
  ok = true;
  for (int n = c.sym_min; n <= c.sym_max; ++n) {
    auto a = critical_set(k, n), b = critical_set_oracle(k, n);
    bool eq = a == b;
    ok = ok && eq;
    rows.push_back({{"n", n}, {"closed_form", a}, {"oracle", b}, {"equal", eq}});
  }
  return {{"weight", k}, {"sets", rows}};
}

inline json run_lvalues(const HeckeChar& chi, const RunConfig& c, bool& ok) {
  long bits = c.precision;
  double gate = -static_cast<double>(bits) / 2;
  json rows = json::array();
  ok = true;
  for (int n = 1; n <= std::max(1, std::min(c.sym_max, 3)); ++n) {
    CMForm f(chi.power(n));
    LFunction L(cm_spec(f));
    const auto& cal = L.calibrate(bits);
    double worst = -1e9;
    for (const auto& s : fe_test_points(f.motivic_weight(), bits)) worst = std::max(worst, L.fe_residual_log2(s, bits));
    bool good = worst < gate;
    ok = ok && good;
    int m = f.weight() - 1;
    auto e = L.evaluate(Complex(Real(static_cast<long>(m + f.shift()), bits)), bits);
    rows.push_back({{"form", "phi_{chi^" + std::to_string(n) + "}"},
                    {"calibration", dihedral::to_json(cal)},
                    {"fe_residual_log2_worst", worst},
                    {"value_at", m},
                    {"value", dihedral::to_json(e.L)},
                    {"ok", good}});
  }
  return {{"forms", rows}};
}

inline std::vector<std::pair<int, int>> default_deligne_points(int k) {
  std::vector<std::pair<int, int>> v{{2, 2 * k - 2}};
  auto cs = critical_set(k, 3);
  if (!cs.empty()) v.emplace_back(3, cs.front());
  return v;
}

}  // namespace detail

inline Report run_suite(const RunConfig& c) {
  Report rep;
  HeckeChar chi = parse_char_spec(c.character).primitive();
  rep.body = {{"tool", "cmperiods"}, {"version", kToolVersion}, {"config", c.echo()}, {"character", char_info(chi)}};
  json results = json::object();
  for (const auto& name : c.checks) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    json out;
    try {
      if (name == "ideals") {
        auto r = ideal_count_check(chi.field(), c.ideal_bound);
        ok = r.ok;
        out = {{"bound", r.bound}};
        if (r.first_mismatch) out["first_mismatch"] = *r.first_mismatch;
      } else if (name == "factorization") {
        out = detail::run_factorization(chi, c, ok);
      } else if (name == "rankin_selberg") {
        out = detail::run_rankin_selberg(chi, c, ok);
      } else if (name == "critical_sets") {
        out = detail::run_critical_sets(chi, c, ok);
      } else if (name == "lvalues") {
        out = detail::run_lvalues(chi, c, ok);
      } else if (name == "periods") {
        out = to_json(shimura_periods(CMForm(chi), c.precision));
      } else if (name == "relations") {
        out = json::array();
        for (int n = 1; n <= c.relation_max; ++n) {
          auto r = verify_period_relation(chi, n, c.precision, c.max_height);
          ok = ok && r.ok() && (n != 1 || r.plus_exactly_one);
          out.push_back(to_json(r));
        }
      } else if (name == "deligne") {
        out = json::array();
        auto pts = c.deligne_points.empty() ? detail::default_deligne_points(chi.weight()) : c.deligne_points;
        for (auto [n, m] : pts) {
          auto r = verify_deligne(chi, n, m, c.precision, c.max_height);
          ok = ok && r.ok();
          out.push_back(to_json(r));
        }
      } else if (name == "sturm") {
        int m = 2 * chi.weight() - 2;
        auto r = sturm_check(chi, m, DirichletChar(1), c.precision, c.max_height);
        ok = r.ok();
        out = to_json(r);
      }
    } catch (const std::exception& e) {
      ok = false;
      out = {{"error", e.what()}};
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.timing[name] = dt;
    results[name] = {{"pass", ok}, {"result", out}};
    if (!ok) {
      rep.pass = false;
      rep.failures.push_back(name);
    }
  }
  rep.body["checks"] = results;
  return rep;
}

}  // namespace dihedral
