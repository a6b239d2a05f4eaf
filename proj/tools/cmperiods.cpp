// cmperiods: command-line front end to the dihedral library.
//
// Exit status: 0 pass, 1 verification failure, 2 usage or config error.

#include <dihedral/suite.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace dihedral;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

long default_precision() {
  if (const char* env = std::getenv("CM_PERIOD_PRECISION")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 128) throw ConfigError("CM_PERIOD_PRECISION", "expected an integer >= 128");
    return v;
  }
  return 256;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

HeckeChar load_char(const std::string& path) { return parse_char_spec(path.empty() ? default_char_spec() : read_json_file(path)); }

// "re" or "re,im"
Complex parse_point(const std::string& s, long bits) {
  auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return Complex(Real(s, bits));
    return Complex(Real(s.substr(0, comma), bits), Real(s.substr(comma + 1), bits));
  } catch (const std::exception&) {
    throw ConfigError("--s", "expected a number or re,im");
  }
}

DirichletChar parse_twist(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw ConfigError("--twist", "expected modulus,index");
  try {
    return DirichletChar::from_index(std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1)));
  } catch (const std::exception& e) {
    throw ConfigError("--twist", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dihedral forms: symmetric-power L-values, Shimura periods and their relations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  long bits = 0;
  std::string spec_path;
  auto add_prec = [&](CLI::App* c) { c->add_option("--prec", bits, "working precision in bits (default 256 or $CM_PERIOD_PRECISION)")->check(CLI::Range(128L, 1L << 20)); };
  auto add_spec = [&](CLI::App* c) { c->add_option("--spec", spec_path, "character spec JSON (default: D=-7, k=3, unramified)"); };
  int exit_code = 0;

  // field
  i64 disc = -7;
  auto* field = app.add_subcommand("field", "imaginary quadratic field data");
  field->add_option("--disc", disc, "fundamental discriminant D < 0")->required();
  field->add_subcommand("info", "D, h(D), w and splitting of p < 100")->callback([&] { emit(field_info(QuadField(disc))); });
  field->require_subcommand(1);

  // dirichlet
  i64 modulus = 1, index = 0;
  int m = 0;
  auto* dir = app.add_subcommand("dirichlet", "Dirichlet characters; --index counts in the canonical order of the generators");
  dir->add_option("--modulus", modulus, "modulus N")->required();
  dir->add_option("--index", index, "index in [0, phi(N))")->required();
  dir->require_subcommand(1);
  dir->add_subcommand("info", "conductor, parity and Gauss sum")->callback([&] {
    auto chi = DirichletChar::from_index(modulus, index);
    json table = json::object();
    for (i64 r = 1; r < modulus; ++r)
      if (auto e = chi.exponent(r)) table[std::to_string(r)] = *e;
    emit({{"character", chi.describe()},
          {"conductor", chi.conductor()},
          {"parity", chi.parity()},
          {"value_order", chi.value_order()},
          {"exponents", table},
          {"gauss_sum", to_json(gauss_sum_exact(chi))}});
  });
  auto* dl = dir->add_subcommand("lvalue", "L(m, chi) by the closed form or the L-engine");
  dl->add_option("--m", m, "integer point")->required();
  add_prec(dl);
  dl->callback([&] {
    auto v = dirichlet_value_at(DirichletChar::from_index(modulus, index), m, bits);
    emit(to_json(v));
  });

  // char
  std::string char_file;
  auto* chr = app.add_subcommand("char", "Hecke characters");
  chr->require_subcommand(1);
  auto* cv = chr->add_subcommand("validate", "parse and validate a character spec");
  cv->add_option("spec", char_file, "character spec JSON")->required();
  cv->callback([&] { emit(char_info(parse_char_spec(read_json_file(char_file)))); });

  // coeffs
  i64 upto = 50;
  std::string format = "json";
  auto* co = app.add_subcommand("coeffs", "Fourier coefficients of phi_chi");
  co->add_option("spec", char_file, "character spec JSON")->required();
  co->add_option("--upto", upto, "last index")->check(CLI::PositiveNumber);
  co->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  co->callback([&] {
    CMForm f(parse_char_spec(read_json_file(char_file)));
    auto a = f.coefficients(upto);
    if (format == "csv") {
      std::cout << "n,re,im,exact\n";
      auto num = embed_all(a, 128);
      for (i64 n = 1; n <= upto; ++n) {
        const auto& z = num[static_cast<std::size_t>(n)];
        std::cout << n << "," << z.re.to_string(25) << "," << z.im.to_string(25) << ",\"" << a[static_cast<std::size_t>(n)].to_string() << "\"\n";
      }
      return;
    }
    json arr = json::array();
    for (i64 n = 1; n <= upto; ++n) arr.push_back({{"n", n}, {"a", to_json(a[static_cast<std::size_t>(n)])}});
    emit({{"form", char_info(f.character())}, {"coefficients", arr}});
  });

  // check
  int sym = 2;
  i64 prime_bound = 500;
  bool corrupt = false;
  auto* chk = app.add_subcommand("check", "exact Euler-factor identities");
  chk->require_subcommand(1);
  auto add_check = [&](const std::string& name, const std::string& what, bool rs) {
    auto* c = chk->add_subcommand(name, what);
    add_spec(c);
    c->add_option("--sym", sym, "symmetric power n")->check(CLI::PositiveNumber);
    c->add_option("--primes", prime_bound, "check good p below this bound");
    if (!rs) c->add_flag("--corrupt", corrupt, "test fixture: perturb a_p on the left-hand side");
    c->callback([&, rs] {
      RunConfig cfg;
      cfg.character = spec_path.empty() ? default_char_spec() : read_json_file(spec_path);
      cfg.sym_min = cfg.sym_max = sym;
      cfg.prime_bound = prime_bound;
      cfg.corrupt_fixture = corrupt;
      HeckeChar chi = parse_char_spec(cfg.character).primitive();
      bool ok = true;
      json out = rs ? detail::run_rankin_selberg(chi, cfg, ok) : detail::run_factorization(chi, cfg, ok);
      out["pass"] = ok;
      emit(out);
      if (!ok) exit_code = kExitFail;
    });
  };
  add_check("factorization", "Sym^n factor = product of the isobaric pieces", false);
  add_check("rankin-selberg", "L(phi_{chi^n} x phi_chi) = L(phi_{chi^{n+1}}) L(phi_{chi^{n-1}}, omega) shifted", true);

  // critical
  int k = 3;
  bool oracle = false;
  auto* cr = app.add_subcommand("critical", "critical integers of Sym^n in weight k");
  cr->add_option("--k", k, "weight k")->check(CLI::PositiveNumber);
  cr->add_option("--sym", sym, "symmetric power n")->check(CLI::PositiveNumber);
  cr->add_flag("--oracle", oracle, "also run the Gamma-pole oracle and compare");
  cr->callback([&] {
    json out{{"k", k}, {"n", sym}, {"critical", critical_set(k, sym)}};
    if (oracle) {
      auto o = critical_set_oracle(k, sym);
      out["oracle"] = o;
      out["equal"] = o == critical_set(k, sym);
      if (o != critical_set(k, sym)) exit_code = kExitFail;
    }
    emit(out);
  });

  // lvalue
  std::string point;
  int power = 1;
  std::optional<int> crit_m;
  auto* lv = app.add_subcommand("lvalue", "L-values: phi_{chi^n} at s, or Sym^n at a critical m");
  add_spec(lv);
  add_prec(lv);
  lv->add_option("--power", power, "use phi_{chi^n}")->check(CLI::PositiveNumber);
  lv->add_option("--s", point, "point s as re or re,im");
  lv->add_option("--sym", sym, "symmetric power n (with --m)")->check(CLI::PositiveNumber);
  lv->add_option("--m", crit_m, "integer point for L_f(m, Sym^n phi)");
  lv->callback([&] {
    HeckeChar chi = load_char(spec_path);
    if (crit_m) {
      emit(to_json(critical_L_value(chi, sym, *crit_m, std::nullopt, bits)));
      return;
    }
    if (point.empty()) throw ConfigError("--s", "give --s or --m");
    CMForm f(chi.power(power));
    LFunction L(cm_spec(f));
    const auto& cal = L.calibrate(bits);
    auto e = L.evaluate(parse_point(point, bits), bits);
    emit({{"series", L.spec().name},
          {"normalization", "sum lambda(a) N(a)^-s = L_f(s - " + std::to_string(f.shift()) + ", phi)"},
          {"calibration", to_json(cal)},
          {"L", to_json(e.L)},
          {"Lambda", to_json(e.Lambda)},
          {"residual_log2", e.residual_log2},
          {"terms", e.terms}});
  });

  // periods
  auto* pe = app.add_subcommand("periods", "Shimura periods u^+- of phi_chi");
  add_spec(pe);
  add_prec(pe);
  pe->callback([&] { emit(to_json(shimura_periods(CMForm(load_char(spec_path)), bits))); });

  // verify
  std::string height = "1000000";
  std::string twist;
  i64 conj_b = 1;
  auto* ve = app.add_subcommand("verify", "period relations, Deligne ratios and Sturm's identity");
  ve->require_subcommand(1);
  auto add_verify = [&](CLI::App* c) {
    add_spec(c);
    add_prec(c);
    c->add_option("--height", height, "recognition height cap");
  };
  auto* vr = ve->add_subcommand("relation", "u^+(phi_{chi^n}) / u^+(phi_chi)^n and the u^- analogue");
  add_verify(vr);
  vr->add_option("--sym", sym, "n")->required()->check(CLI::PositiveNumber);
  vr->callback([&] {
    auto r = verify_period_relation(load_char(spec_path), sym, bits, mpz_class(height));
    emit(to_json(r));
    if (!r.ok()) exit_code = kExitFail;
  });
  auto* vd = ve->add_subcommand("deligne", "L_f(m, Sym^n phi) / ((2 pi i)^{m d} c)");
  add_verify(vd);
  vd->add_option("--sym", sym, "n")->required()->check(CLI::PositiveNumber);
  vd->add_option("--m", m, "critical integer")->required();
  vd->callback([&] {
    auto r = verify_deligne(load_char(spec_path), sym, m, bits, mpz_class(height));
    emit(to_json(r));
    if (!r.ok()) exit_code = kExitFail;
  });
  auto* vs = ve->add_subcommand("sturm", "L_f(m, Sym^2 phi, xi) / ((2 pi i)^{2m+1-k} u^+ u^- gamma(omega xi^2))");
  add_verify(vs);
  vs->add_option("--m", m, "integer in Sturm's range")->required();
  vs->add_option("--twist", twist, "xi as modulus,index (default trivial)");
  vs->callback([&] {
    DirichletChar xi = twist.empty() ? DirichletChar(1) : parse_twist(twist);
    auto r = sturm_check(load_char(spec_path), m, xi, bits, mpz_class(height));
    emit(to_json(r));
    if (!r.ok()) exit_code = kExitFail;
  });
  auto* vq = ve->add_subcommand("equivariance", "sigma_b on the relation ratios versus the conjugate character");
  add_verify(vq);
  vq->add_option("--sym", sym, "n")->required()->check(CLI::PositiveNumber);
  vq->add_option("--b", conj_b, "conjugation zeta -> zeta^b")->required();
  vq->callback([&] {
    auto r = equivariance_check(load_char(spec_path), sym, conj_b, bits, mpz_class(height));
    emit(to_json(r));
    if (!r.ok()) exit_code = kExitFail;
  });

  // suite
  std::string config_path, output;
  auto* su = app.add_subcommand("suite", "run a JSON-configured batch and write one report");
  su->add_option("config", config_path, "run config JSON")->required();
  su->add_option("--output", output, "report path (default: config 'output' or stdout)");
  su->add_flag("--corrupt", corrupt, "test fixture: perturb a coefficient in the factorization check");
  su->callback([&] {
    json raw = read_json_file(config_path);
    RunConfig cfg = parse_run_config(raw, std::filesystem::path(config_path).parent_path().string());
    if (!raw.contains("precision")) cfg.precision = default_precision();
    if (corrupt) cfg.corrupt_fixture = true;
    if (!output.empty()) cfg.output = output;
    Report rep = run_suite(cfg);
    std::string text = rep.to_json().dump(2) + "\n";
    if (cfg.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.output);
      if (!out) throw ConfigError("output", "cannot write " + cfg.output);
      out << text;
    }
    for (const auto& f : rep.failures) std::cerr << "FAILED: " << f << "\n";
    if (!rep.pass) exit_code = kExitFail;
  });

  try {
    bits = default_precision();
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "out of range: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return exit_code;
}
