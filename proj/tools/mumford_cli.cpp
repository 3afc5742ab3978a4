#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mumford/json_io.hpp"

using namespace mumford;

namespace {

struct GlobalOpts {
  uint32_t p = 0;
  uint32_t precision = 64;
  std::string format = "json";
  std::string infile;
};

std::string read_payload(const GlobalOpts& g) {
  if (!g.infile.empty()) {
    std::ifstream in(g.infile);
    if (!in) fail(errc::parse_error, "cannot open input file '" + g.infile + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }
  std::ostringstream os;
  os << std::cin.rdbuf();
  return os.str();
}

ordered_json parse_payload(const GlobalOpts& g) {
  std::string text = read_payload(g);
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(errc::parse_error, "input is not valid JSON");
  return j;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

void check_globals(const GlobalOpts& g, bool need_p, bool dot_allowed = false) {
  if (need_p && (g.p == 0 || !is_prime(g.p))) fail(errc::parse_error, "--p must be a prime");
  if (g.precision < 8) fail(errc::parse_error, "--precision must be at least 8");
  if (g.format != "json" && !(dot_allowed && g.format == "dot"))
    fail(errc::parse_error, dot_allowed ? "--format must be json or dot"
                                        : "--format dot is only valid for the tree subcommand");
}

int run_bound(const GlobalOpts& g, uint32_t m, uint32_t n) {
  check_globals(g, true);
  Rational t = alpha_bound(g.p, m, n);
  emit(ordered_json{{"threshold_val", t.str()},
                    {"bound", "|" + std::to_string(g.p) + "|^" + t.str()}});
  return 0;
}

int run_classify(const GlobalOpts& g) {
  check_globals(g, false);
  ordered_json payload = parse_payload(g);
  KummerEquation eq = kummer_from_json(payload, g.p, g.precision);
  ordered_json out;
  if (eq.terms.size() == 4) {
    out = verdict_to_json(classify_four_point(eq));
    // the general criterion must agree; surfaced for transparency
    out["general_criterion_agrees"] = classify(eq).is_mumford == out["is_mumford"].get<bool>();
    if (eq.field->p == 2 && eq.degree == 2) {
      // Tate check applies to the normalized quadruple {0, inf, 1, lambda}
      MoebiusMap nrm = normalize_triple(eq.terms[0].point, eq.terms[1].point, eq.terms[2].point);
      ProjectivePoint lp = nrm.apply(eq.terms[3].point);
      if (!lp.is_infinity()) {
        PadicElement lam = lp.affine_value();
        Valuation v = lam.val();
        if (!v.is_zero_to_precision() && v.value() == Rational(0) &&
            !(lam - PadicElement::one(eq.field)).is_zero_to_precision()) {
          TateCheck tc = tate_j_check(lam);
          out["tate"] = ordered_json{{"j", tc.j.str()},
                                     {"j_val", tc.j.val().str()},
                                     {"lambda_side", tc.lambda_side},
                                     {"j_side", tc.j_side},
                                     {"consistent", tc.consistent}};
        }
      }
    }
  } else {
    out = verdict_to_json(classify(eq));
  }
  emit(out);
  return 0;
}

int run_synthesize(const GlobalOpts& g, uint32_t d, uint32_t e, uint32_t f, uint32_t k, uint32_t l,
                   const std::string& lambda_str) {
  check_globals(g, true);
  uint32_t n = d == e ? d : (d % e == 0 ? d : (e % d == 0 ? e : (uint32_t)std::lcm(d, e)));
  FieldPtr field = make_field(g.p, n, g.precision);
  PadicElement lambda = PadicElement::parse(field, lambda_str);
  CoverSpec spec = CoverSpec::make(field, d, e, lambda, f, k, l);
  emit(presentation_to_json(synthesize(spec)));
  return 0;
}

int run_verify(const GlobalOpts& g) {
  check_globals(g, false);
  SchottkyPresentation pres = presentation_from_json(parse_payload(g));
  ordered_json out = report_to_json(verify_schottky(pres));
  ordered_json circles = ordered_json::array();
  for (const auto& gen : pres.generators) {
    try {
      circles.push_back(ordered_json{{"label", gen.label},
                                     {"circle", disk_to_json(isometric_circle(gen.matrix))},
                                     {"inverse_circle", disk_to_json(isometric_circle(gen.matrix.inverse()))}});
    } catch (const error&) {
      circles.push_back(ordered_json{{"label", gen.label}, {"circle", nullptr}});
    }
  }
  out["isometric_circles"] = std::move(circles);
  emit(out);
  return 0;
}

int run_tree(const GlobalOpts& g, uint32_t m, uint32_t n, const std::string& lambda_val,
             const std::string& lambda_str) {
  check_globals(g, true, /*dot_allowed=*/true);
  Rational lv;
  if (!lambda_val.empty()) {
    lv = Rational::parse(lambda_val);
  } else if (!lambda_str.empty()) {
    FieldPtr field = make_field(g.p, 1, g.precision);
    PadicElement lam = PadicElement::parse(field, lambda_str);
    Valuation v = (lam - PadicElement::one(field)).val();
    if (v.is_zero_to_precision()) fail(errc::insufficient_precision, "lambda - 1 vanishes");
    lv = v.value();
  } else {
    fail(errc::parse_error, "one of --lambda-val or --lambda is required");
  }
  QuotientTreeDescriptor q = quotient_tree(g.p, m, n, lv);
  if (g.format == "dot")
    std::cout << q.to_dot();
  else
    emit(tree_to_json(q));
  return 0;
}

int run_oracle(const GlobalOpts& g) {
  check_globals(g, false);
  ordered_json payload = parse_payload(g);
  if (!payload.contains("orders") || !payload["orders"].is_array())
    fail(errc::parse_error, "orders array required");
  std::vector<uint32_t> orders = payload["orders"].get<std::vector<uint32_t>>();
  FreeProduct fp(orders);
  std::string op = payload.value("op", std::string("kernel"));
  if (op == "kernel" || op == "table") {
    CyclicAssignment a{payload.at("n").get<uint32_t>(),
                       payload.at("images").get<std::vector<uint32_t>>()};
    auto kg = kernel_generators_rs(fp, a);
    ordered_json out;
    out["rank"] = kg.rank();
    ordered_json gens = ordered_json::array();
    for (const auto& w : kg.generators) gens.push_back(w.str());
    out["generators"] = std::move(gens);
    if (op == "table" || payload.value("include_table", false))
      out["coset_table_csv"] = kg.table.to_csv();
    emit(out);
    return 0;
  }
  if (op == "torsion") {
    uint32_t L = payload.value("L", 6u);
    bool kernel_only = payload.contains("n");
    ordered_json out;
    if (kernel_only) {
      CyclicAssignment a{payload.at("n").get<uint32_t>(),
                         payload.at("images").get<std::vector<uint32_t>>()};
      out["torsion_free"] = torsion_scan(fp, &a, L);
    } else {
      out["torsion_free"] = torsion_scan(fp, nullptr, L);
    }
    out["scan_syllables"] = L;
    emit(out);
    return 0;
  }
  fail(errc::parse_error, "op must be kernel, table or torsion");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact p-adic Mumford cover toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOpts g;
  app.add_option("--p", g.p, "residue characteristic (prime)");
  app.add_option("--precision", g.precision, "working precision in uniformizer digits")
      ->default_val(64);
  app.add_option("--format", g.format, "output format: json | dot")->default_val("json");
  app.add_option("--in", g.infile, "read the JSON payload from a file instead of stdin");

  auto* bound = app.add_subcommand("bound", "alpha_p(m, n) threshold for |lambda - 1|");
  std::vector<uint32_t> bound_orders;
  bound->add_option("orders", bound_orders, "the two ramification orders m n")->expected(2);

  auto* classify = app.add_subcommand("classify", "decide whether a Kummer cover is a Mumford cover");

  auto* synthesize = app.add_subcommand("synthesize", "emit Schottky generators for a four-point cover");
  uint32_t sd = 0, se = 0, sf = 1, sk = 1, sl = 1;
  std::string lambda_str;
  synthesize->add_option("--d", sd, "order of s (fixed points 0, inf)")->required();
  synthesize->add_option("--e", se, "order of t (fixed points 1, lambda)")->required();
  synthesize->add_option("--f", sf, "prime-case exponent datum, a f = 1 mod q")->default_val(1);
  synthesize->add_option("--k", sk, "divisor-case twist")->default_val(1);
  synthesize->add_option("--l", sl, "coprime-case twist")->default_val(1);
  synthesize->add_option("--lambda", lambda_str, "lambda as rational or element text")->required();

  auto* verify = app.add_subcommand("verify", "Ford-verify a serialized presentation");

  auto* tree = app.add_subcommand("tree", "quotient *-tree descriptor for C_m * C_n");
  uint32_t tm = 0, tn = 0;
  std::string tree_lambda_val, tree_lambda;
  tree->add_option("--m", tm, "first factor order")->required();
  tree->add_option("--n", tn, "second factor order")->required();
  tree->add_option("--lambda-val", tree_lambda_val, "v(lambda - 1) as a rational");
  tree->add_option("--lambda", tree_lambda, "lambda as rational (valuation taken)");

  auto* oracle = app.add_subcommand("oracle", "combinatorial group theory brute force");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (bound->parsed()) return run_bound(g, bound_orders[0], bound_orders[1]);
    if (classify->parsed()) return run_classify(g);
    if (synthesize->parsed()) return run_synthesize(g, sd, se, sf, sk, sl, lambda_str);
    if (verify->parsed()) return run_verify(g);
    if (tree->parsed()) return run_tree(g, tm, tn, tree_lambda_val, tree_lambda);
    if (oracle->parsed()) return run_oracle(g);
  } catch (const error& e) {
    ordered_json out{{"status", "error"}, {"code", errc_name(e.code())}, {"message", e.what()}};
    std::cout << out.dump(2) << "\n";
    return e.code() == errc::parse_error ? 2 : 1;
  } catch (const nlohmann::json::exception& e) {
    ordered_json out{{"status", "error"}, {"code", "ParseError"}, {"message", e.what()}};
    std::cout << out.dump(2) << "\n";
    return 2;
  }
  return 2;
}
