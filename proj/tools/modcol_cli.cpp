// Command-line driver: expand differentials, evaluate tiny-integral sums,
// compute single Coleman integrals and inspect fixture data.
#include "modcol/integrator.hpp"
#include "modcol/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

using namespace modcol;
using nlohmann::json;

namespace {

const char* kValidationKinds[] = {"ParseError",   "ValidationError", "CoherenceError",
                                  "MissingHeckeMatrix", "BadPrime",  "LabelNotFound",
                                  "BadHeckeMatrix"};

int exit_code_for(const Error& e) {
  for (const char* k : kValidationKinds)
    if (e.kind() == k) return 2;
  return 3;
}

struct Options {
  std::string fixture;
  long complex_bits = 0;
  long padic_prec = 0;
  std::string uniformizer;
  bool offline = false;
  bool as_json = false;
};

UniformizerKind uniformizer_from_name(const std::string& name) {
  if (name == "j") return UniformizerKind::J;
  if (name == "j+jN") return UniformizerKind::J_PLUS_JN;
  if (name == "1/j") return UniformizerKind::ONE_OVER_J;
  if (name == "j*jN") return UniformizerKind::J_TIMES_JN;
  throw ValidationError("unknown uniformizer '" + name + "'");
}

PrecisionConfig config_from(const Options& opt) {
  PrecisionConfig cfg;
  if (opt.complex_bits > 0) {
    cfg.complex_bits = opt.complex_bits;
    cfg.algdep_height_bits = opt.complex_bits / 3;
  }
  if (opt.padic_prec > 0) cfg.padic_target = opt.padic_prec;
  return cfg;
}

FixtureBundle load_bundle(const Options& opt, long wanted_prime) {
  FixtureBundle b = load_fixture_file(opt.fixture);
  if (!opt.uniformizer.empty())
    b.curve.uniformizer_default = uniformizer_from_name(opt.uniformizer);
  // modular polynomials live next to the fixture as phi<p>.mpoly
  std::filesystem::path dir = std::filesystem::path(opt.fixture).parent_path();
  if (wanted_prime > 0) {
    std::filesystem::path mp = dir / ("phi" + std::to_string(wanted_prime) + ".mpoly");
    if (std::filesystem::exists(mp))
      b.modular_polys.emplace(wanted_prime,
                              parse_modular_polynomial(read_text_file(mp.string())));
  }
  return b;
}

const RationalPointRecord& find_point(const FixtureBundle& b, const std::string& label) {
  for (const auto& pt : b.points)
    if (pt.label == label) return pt;
  throw ValidationError("fixture has no point labelled '" + label + "'");
}

json padic_json(const PadicNumber& v) {
  json out;
  out["valuation"] = v.is_zero() ? 0 : v.valuation();
  out["digits"] = v.digits();
  out["prec"] = v.abs_prec();
  return out;
}

json config_json(const PrecisionConfig& cfg) {
  return json{{"complex_bits", cfg.complex_bits},
              {"series_order", cfg.series_order},
              {"padic_target", cfg.padic_target},
              {"algdep_height_bits", cfg.algdep_height_bits}};
}

std::string rat_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

// run fn, escalating the configuration on InsufficientOrder as
// coleman_integrate does
template <typename F>
auto with_escalation(PrecisionConfig cfg, F fn) {
  for (int attempt = 0;; ++attempt) {
    try {
      return fn(cfg);
    } catch (const Error& e) {
      if (e.kind() != "InsufficientOrder" || attempt >= 4) throw;
      escalate_precision(cfg);
    }
  }
}

int cmd_expand(const Options& opt, const std::string& point, int form, long p, int order) {
  FixtureBundle b = load_bundle(opt, p);
  PrecisionConfig cfg = config_from(opt);
  if (order > 0) cfg.series_order = order;
  const RationalPointRecord& P = find_point(b, point);
  ExpansionResult ex = with_escalation(cfg, [&](const PrecisionConfig& c) {
    return expand_at_point(b.curve, P, form, c);
  });
  if (opt.as_json) {
    json out;
    out["curve"] = curve_label(b.curve);
    out["point"] = point;
    out["form"] = form;
    json xs = json::array();
    for (const auto& x : ex.x) xs.push_back(rat_str(x));
    out["coefficients"] = xs;
    out["config"] = config_json(cfg);
    std::cout << out.dump(2) << "\n";
  } else {
    for (size_t i = 0; i < ex.x.size(); ++i)
      std::cout << "x_" << i << " = " << rat_str(ex.x[i]) << "\n";
  }
  return 0;
}

int cmd_tiny_sum(const Options& opt, const std::string& point, int form, long p) {
  FixtureBundle b = load_bundle(opt, p);
  PrecisionConfig cfg = config_from(opt);
  const RationalPointRecord& P = find_point(b, point);
  auto it = b.modular_polys.find(p);
  const ModularPolynomial* phi = it == b.modular_polys.end() ? nullptr : &it->second;
  std::vector<PadicNumber> sums = with_escalation(cfg, [&](const PrecisionConfig& c) {
    return tiny_sums_at_point(b.curve, P, p, c, phi);
  });
  if (form < 0 || form >= static_cast<int>(sums.size()))
    throw ValidationError("form index out of range");
  if (opt.as_json) {
    json out;
    out["curve"] = curve_label(b.curve);
    out["prime"] = p;
    out["point"] = point;
    out["form"] = form;
    out["value"] = padic_json(sums[static_cast<size_t>(form)]);
    out["config"] = config_json(cfg);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << sums[static_cast<size_t>(form)].to_string() << "\n";
  }
  return 0;
}

int cmd_integrate(const Options& opt, const std::string& from, const std::string& to, long p) {
  FixtureBundle b = load_bundle(opt, p);
  PrecisionConfig cfg = config_from(opt);
  const RationalPointRecord& R = find_point(b, from);
  const RationalPointRecord& Q = find_point(b, to);
  auto it = b.modular_polys.find(p);
  const ModularPolynomial* phi = it == b.modular_polys.end() ? nullptr : &it->second;
  ColemanResult res = coleman_integrate(b.curve, Q, R, p, cfg, phi);
  if (opt.as_json) {
    json out;
    out["curve"] = curve_label(b.curve);
    out["prime"] = p;
    out["from"] = from;
    out["to"] = to;
    json vals = json::array();
    for (const auto& v : res.values) vals.push_back(padic_json(v));
    out["values"] = vals;
    out["config"] = config_json(cfg);
    std::cout << out.dump(2) << "\n";
  } else {
    for (size_t i = 0; i < res.values.size(); ++i)
      std::cout << "integral of w_" << i << ": " << res.values[i].to_string() << "\n";
  }
  return 0;
}

int cmd_hecke_matrix(const Options& opt, long p) {
  FixtureBundle b = load_bundle(opt, p);
  std::vector<std::vector<Rational>> A;
  bool rational_basis = true;
  for (const auto& f : b.curve.basis)
    if (!f.is_rational()) rational_basis = false;
  if (rational_basis && std::gcd(p, b.curve.group.N) == 1) {
    A = hecke_matrix_from_basis(b.curve.basis, p);
    auto it = b.curve.hecke.find(p);
    if (it != b.curve.hecke.end() && it->second != A)
      throw ValidationError("computed Hecke matrix disagrees with the fixture");
  } else {
    auto it = b.curve.hecke.find(p);
    if (it == b.curve.hecke.end())
      throw MissingHeckeMatrix("fixture has no matrix for p = " + std::to_string(p) +
                               " and the basis is not rational");
    A = it->second;
  }
  if (opt.as_json) {
    json rows = json::array();
    for (const auto& row : A) {
      json r = json::array();
      for (const auto& e : row) r.push_back(rat_str(e));
      rows.push_back(r);
    }
    std::cout << json{{"curve", curve_label(b.curve)}, {"prime", p}, {"matrix", rows}}.dump(2)
              << "\n";
  } else {
    for (const auto& row : A) {
      for (size_t k = 0; k < row.size(); ++k) std::cout << (k ? " " : "") << rat_str(row[k]);
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_check(const Options& opt) {
  // loading already runs the grammar, invariant and coherence checks
  FixtureBundle b = load_bundle(opt, 0);
  std::cout << "fixture: " << curve_label(b.curve) << ", genus " << b.curve.genus << ", "
            << b.points.size() << " points: ok\n";

  std::filesystem::path dir = std::filesystem::path(opt.fixture).parent_path();
  for (const auto& entry : std::filesystem::directory_iterator(
           dir.empty() ? std::filesystem::path(".") : dir)) {
    std::string name = entry.path().filename().string();
    if (name.rfind("phi", 0) != 0 || entry.path().extension() != ".mpoly") continue;
    ModularPolynomial phi = parse_modular_polynomial(read_text_file(entry.path().string()));
    std::cout << name << ": degree " << (phi.p + 1)
              << ", Eichler-Shimura congruence mod " << phi.p << ": ok\n";
  }

  for (const auto& [p, A] : b.curve.hecke) {
    double bound = 2.0 * std::sqrt(static_cast<double>(p)) + 1e-6;
    if (spectral_radius(A) > bound)
      throw ValidationError("hecke matrix for p = " + std::to_string(p) +
                            " violates the Ramanujan bound");
    std::cout << "hecke " << p << ": Ramanujan bound ok\n";
  }

  bool rational_basis = true;
  for (const auto& f : b.curve.basis)
    if (!f.is_rational()) rational_basis = false;
  if (rational_basis) {
    for (const auto& [p, A] : b.curve.hecke) {
      if (std::gcd(p, b.curve.group.N) != 1) continue;
      if (hecke_matrix_from_basis(b.curve.basis, p) != A)
        throw ValidationError("fixture Hecke matrix for p = " + std::to_string(p) +
                              " disagrees with the q-expansions");
      std::cout << "hecke " << p << ": matches the q-expansion action\n";
    }
  }
  std::cout << "all checks passed\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"single Coleman integrals of holomorphic differentials on modular curves"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--complex-bits", opt.complex_bits, "working complex precision in bits");
  app.add_option("--padic-prec", opt.padic_prec, "target absolute p-adic precision");
  app.add_option("--uniformizer", opt.uniformizer,
                 "uniformizer kind: j, j+jN, 1/j or j*jN (default: per curve family)");
  app.add_flag("--offline", opt.offline, "never open a network connection");
  app.add_flag("--json", opt.as_json, "machine-readable output");

  std::string point, from, to;
  int form = 0, order = 0;
  long prime = 0;

  CLI::App* expand = app.add_subcommand("expand", "expand a form in the uniformizer");
  expand->add_option("--fixture", opt.fixture)->required();
  expand->add_option("--point", point)->required();
  expand->add_option("--form", form)->required();
  expand->add_option("--prime", prime)->required();
  expand->add_option("--order", order);

  CLI::App* tiny = app.add_subcommand("tiny-sum", "sum of tiny integrals at a point");
  tiny->add_option("--fixture", opt.fixture)->required();
  tiny->add_option("--point", point)->required();
  tiny->add_option("--form", form)->required();
  tiny->add_option("--prime", prime)->required();

  CLI::App* integrate = app.add_subcommand("integrate", "Coleman integral between two points");
  integrate->add_option("--fixture", opt.fixture)->required();
  integrate->add_option("--from", from)->required();
  integrate->add_option("--to", to)->required();
  integrate->add_option("--prime", prime)->required();

  CLI::App* hm = app.add_subcommand("hecke-matrix", "Hecke matrix on the fixture basis");
  hm->add_option("--fixture", opt.fixture)->required();
  hm->add_option("--prime", prime)->required();

  CLI::App* check = app.add_subcommand("check", "validate a fixture and its side files");
  check->add_option("--fixture", opt.fixture)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(expand)) return cmd_expand(opt, point, form, prime, order);
    if (app.got_subcommand(tiny)) return cmd_tiny_sum(opt, point, form, prime);
    if (app.got_subcommand(integrate)) return cmd_integrate(opt, from, to, prime);
    if (app.got_subcommand(hm)) return cmd_hecke_matrix(opt, prime);
    if (app.got_subcommand(check)) return cmd_check(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
