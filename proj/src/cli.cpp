#include "nie/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nie/duality.hpp"
#include "nie/errors.hpp"
#include "nie/verify.hpp"

namespace nie {

namespace {

using ordered_json = nlohmann::ordered_json;

// ---- parsing helpers -------------------------------------------------------

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  const std::string t = strip(text);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
    fail(errc::parse_error, what + " must be a non-negative integer, got \"" +
                                text + "\"");
  }
  errno = 0;
  char* end = nullptr;
  std::uint64_t v = std::strtoull(t.c_str(), &end, 10);
  if (errno != 0 || end != t.c_str() + t.size()) {
    fail(errc::parse_error, what + " is out of range: \"" + text + "\"");
  }
  return v;
}

std::vector<elem_t> parse_lambdas(const std::string& text, std::size_t want) {
  std::vector<elem_t> out;
  std::string::size_type pos = 0;
  while (pos <= text.size()) {
    std::string::size_type comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(parse_u64(text.substr(pos, comma - pos), "shift constant"));
    pos = comma + 1;
  }
  if (out.size() != want) {
    fail(errc::component_mismatch,
         "expected " + std::to_string(want) + " shift constants, got " +
             std::to_string(out.size()));
  }
  return out;
}

// ---- JSON assembly ---------------------------------------------------------

ordered_json rows_json(const EchelonModule& m) {
  ordered_json rows = ordered_json::array();
  for (const EchelonRow& r : m.rows()) rows.push_back(r.v);
  return rows;
}

std::string rational_text(const Rational& r) { return r.str(); }

Code build_code(const Alg& s, const std::vector<std::string>& gen_texts) {
  std::vector<Vec> gens;
  gens.reserve(gen_texts.size());
  for (const std::string& g : gen_texts) gens.push_back(parse_poly(*s, g));
  return Code::from_generators(s, gens);
}

struct PirInputs {
  Pir pr;
  std::vector<elem_t> lambdas;
  PirCode code;
};

PirInputs build_pir_code(const std::string& pir_spec, std::size_t n,
                         const std::string& lambdas_text,
                         const std::vector<std::string>& gen_texts) {
  Pir pr = parse_pir(pir_spec);
  std::vector<elem_t> lambdas = parse_lambdas(lambdas_text, pr->s());

  std::vector<Alg> algs;
  algs.reserve(pr->s());
  for (std::size_t t = 1; t <= pr->s(); ++t) {
    algs.push_back(make_algebra(pr->component(t), n, lambdas[t - 1]));
  }

  // Generators arrive as "t:[c0,c1,...]" with 1-based component index t;
  // components never mentioned stay the zero code.
  std::vector<std::vector<Vec>> gens(pr->s());
  for (const std::string& g : gen_texts) {
    std::string::size_type colon = g.find(':');
    if (colon == std::string::npos) {
      fail(errc::parse_error,
           "component generator must look like t:[c0,c1,...], got \"" + g +
               "\"");
    }
    std::uint64_t t = parse_u64(g.substr(0, colon), "component index");
    if (t < 1 || t > pr->s()) {
      fail(errc::index_out_of_range,
           "component index " + std::to_string(t) + " outside 1.." +
               std::to_string(pr->s()));
    }
    gens[t - 1].push_back(parse_poly(*algs[t - 1], g.substr(colon + 1)));
  }

  std::vector<Code> comps;
  comps.reserve(pr->s());
  for (std::size_t t = 0; t < pr->s(); ++t) {
    comps.push_back(gens[t].empty() ? Code::zero_code(algs[t])
                                    : Code::from_generators(algs[t], gens[t]));
  }
  PirCode code = PirCode::crt(pr, n, lambdas, std::move(comps));
  return PirInputs{std::move(pr), std::move(lambdas), std::move(code)};
}

// ---- output ----------------------------------------------------------------

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string scalar_text(const ordered_json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "";
  return j.dump();
}

void flatten_csv(const ordered_json& j, const std::string& prefix,
                 std::string& out) {
  if (j.is_object()) {
    for (const auto& item : j.items()) {
      flatten_csv(item.value(),
                  prefix.empty() ? item.key() : prefix + "." + item.key(), out);
    }
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& v : j) {
      flatten_csv(v, prefix + "." + std::to_string(i++), out);
    }
  } else {
    out += csv_escape(prefix);
    out += ',';
    out += csv_escape(scalar_text(j));
    out += '\n';
  }
}

void emit(const ordered_json& doc, const std::string& format,
          const std::string& out_path, std::ostream& out) {
  std::string text;
  if (format == "csv") {
    text = "key,value\n";
    flatten_csv(doc, "", text);
  } else {
    text = doc.dump(2) + "\n";
  }
  if (!out_path.empty()) {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      fail(errc::bad_parameters, "cannot open output file: " + out_path);
    }
    file << text;
    if (!file.flush()) {
      fail(errc::bad_parameters, "cannot write output file: " + out_path);
    }
  } else {
    out << text;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  if (const char* env = std::getenv("NIE_MAX_ENUM")) {
    std::uint64_t cap = 0;
    try {
      cap = parse_u64(env, "NIE_MAX_ENUM");
    } catch (const domain_error&) {
      cap = 0;
    }
    if (cap == 0) {
      err << "usage error: NIE_MAX_ENUM must be a positive integer\n";
      return 2;
    }
    set_enumeration_cap(static_cast<std::size_t>(cap));
  }

  CLI::App app{
      "Constacyclic-code toolkit for finite chain rings and finite PIRs"};
  app.name("nie");
  app.require_subcommand(1);

  std::string format = "json";
  std::string out_path;
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "Write the report to a file");

  ordered_json doc;
  int exit_code = 0;

  // ring-info ---------------------------------------------------------------
  std::string ri_ring;
  CLI::App* ring_info =
      app.add_subcommand("ring-info", "Describe a finite chain ring");
  ring_info->fallthrough();
  ring_info->add_option("--ring", ri_ring, "Ring spec, e.g. \"GR(4,2)\"")
      ->required();
  ring_info->callback([&] {
    Ring r = make_ring(ri_ring);
    ordered_json ring;
    ring["spec"] = r->spec_string();
    ring["p"] = r->p();
    ring["m"] = r->m();
    ring["e"] = r->e();
    ring["q"] = r->q();
    ring["size"] = r->size();
    ring["gamma"] = r->gamma();
    ring["zeta"] = r->zeta();
    ring["units"] = r->size() - r->size() / r->q();
    ring["teichmuller"] = r->teichmuller();
    doc["schema"] = 1;
    doc["command"] = "ring-info";
    doc["ring"] = ring;
  });

  // algebra-classify ----------------------------------------------------------
  std::string ac_algebra;
  CLI::App* classify = app.add_subcommand(
      "algebra-classify", "Classify R[x]/<x^n - lambda> by its ideal shape");
  classify->fallthrough();
  classify
      ->add_option("--algebra", ac_algebra,
                   "Algebra spec, e.g. \"Z(4);n=2;lambda=2\"")
      ->required();
  classify->callback([&] {
    Alg s = parse_algebra(ac_algebra);
    ordered_json alg;
    alg["spec"] = s->spec_string();
    alg["ring"] = s->coeff_ring()->spec_string();
    alg["n"] = s->n();
    alg["lambda"] = s->lambda();
    alg["nie"] = s->nie();
    alg["size"] = big_str(s->size());
    if (s->nie()) {
      Classification c = s->classify();
      alg["class"] = algebra_class_name(c.kind);
      alg["nilpotency"] = c.nilpotency;
    } else {
      alg["class"] = nullptr;
      alg["nilpotency"] = nullptr;
    }
    doc["schema"] = 1;
    doc["command"] = "algebra-classify";
    doc["algebra"] = alg;
  });

  // code-* --------------------------------------------------------------------
  std::string code_algebra;
  std::vector<std::string> code_gens;
  auto add_code_options = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("--algebra", code_algebra, "Algebra spec")->required();
    // allow_extra_args(false) keeps CLI11 from exploding "[0,1]" into
    // separate container elements; each occurrence is one verbatim string.
    sub->add_option("--gens", code_gens,
                    "Generator polynomial \"[c0,c1,...]\" (repeatable; none "
                    "gives the zero code)")
        ->allow_extra_args(false);
  };

  CLI::App* code_repr = app.add_subcommand(
      "code-repr", "Canonical representation of a constacyclic code");
  add_code_options(code_repr);
  code_repr->callback([&] {
    Alg s = parse_algebra(code_algebra);
    Code c = build_code(s, code_gens);
    doc["schema"] = 1;
    doc["command"] = "code-repr";
    doc["algebra"] = s->spec_string();
    doc["cardinality"] = big_str(c.cardinality());
    doc["torsional_degrees"] = c.torsional_degrees();
    ordered_json repr = ordered_json::array();
    for (const Vec& f : c.canonical_representation()) repr.push_back(f);
    doc["representation"] = repr;
  });

  CLI::App* code_distance = app.add_subcommand(
      "code-distance", "Minimum Hamming distance of a constacyclic code");
  add_code_options(code_distance);
  code_distance->callback([&] {
    Alg s = parse_algebra(code_algebra);
    Code c = build_code(s, code_gens);
    doc["schema"] = 1;
    doc["command"] = "code-distance";
    doc["algebra"] = s->spec_string();
    doc["cardinality"] = big_str(c.cardinality());
    doc["distance"] = c.min_distance();
    if (s->nie() && !c.is_zero()) doc["witness"] = c.weight_one_witness();
  });

  CLI::App* code_dual = app.add_subcommand(
      "code-dual", "Annihilator, dual, and the dual-constacyclic verdict");
  add_code_options(code_dual);
  code_dual->callback([&] {
    Alg s = parse_algebra(code_algebra);
    Code c = build_code(s, code_gens);
    DualReport rep = dual(c);
    doc["schema"] = 1;
    doc["command"] = "code-dual";
    doc["algebra"] = s->spec_string();
    doc["cardinality"] = big_str(c.cardinality());
    doc["dual_cardinality"] = big_str(rep.annihilator.cardinality());
    doc["annihilator_basis"] = rows_json(rep.annihilator.basis());
    doc["dual_basis"] = rows_json(rep.dual);
    doc["dual_torsion_profile"] = rep.dual_torsion_profile;
    ConstacyclicVerdict v = is_dual_constacyclic(c);
    ordered_json verdict;
    if (v.power) {
      verdict["yes"] = *v.power;
    } else {
      verdict["no"] = v.witness;
    }
    doc["verdict"] = verdict;
  });

  // pir-* -----------------------------------------------------------------------
  std::string pir_spec;
  std::size_t pir_n = 1;
  std::string pir_lambdas;
  std::vector<std::string> pir_gens;
  auto add_pir_options = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("--pir", pir_spec, "Product ring, e.g. \"Z(4) x F(5)\"")
        ->required();
    sub->add_option("--n", pir_n, "Code length")->required();
    sub->add_option("--lambdas", pir_lambdas,
                    "Comma-separated shift constants, one per component")
        ->required();
    sub->add_option("--gens", pir_gens,
                    "Component generator \"t:[c0,c1,...]\" with 1-based t "
                    "(repeatable; unmentioned components are zero)")
        ->allow_extra_args(false);
  };

  CLI::App* pir_build =
      app.add_subcommand("pir-build", "Assemble a code over a product ring");
  add_pir_options(pir_build);
  pir_build->callback([&] {
    PirInputs in = build_pir_code(pir_spec, pir_n, pir_lambdas, pir_gens);
    doc["schema"] = 1;
    doc["command"] = "pir-build";
    doc["pir"] = in.pr->spec_string();
    doc["n"] = pir_n;
    doc["lambdas"] = in.lambdas;
    doc["cardinality"] = big_str(in.code.cardinality());
    ordered_json comps = ordered_json::array();
    for (std::size_t t = 1; t <= in.pr->s(); ++t) {
      const Code& c = in.code.components()[t - 1];
      ordered_json comp;
      comp["component"] = t;
      comp["algebra"] = c.algebra()->spec_string();
      comp["cardinality"] = big_str(c.cardinality());
      comp["basis"] = rows_json(c.basis());
      comps.push_back(comp);
    }
    doc["components"] = comps;
  });

  CLI::App* pir_distance = app.add_subcommand(
      "pir-distance", "Minimum distance of a product-ring code");
  add_pir_options(pir_distance);
  pir_distance->callback([&] {
    PirInputs in = build_pir_code(pir_spec, pir_n, pir_lambdas, pir_gens);
    doc["schema"] = 1;
    doc["command"] = "pir-distance";
    doc["pir"] = in.pr->spec_string();
    doc["n"] = pir_n;
    doc["lambdas"] = in.lambdas;
    doc["cardinality"] = big_str(in.code.cardinality());
    doc["distance"] = pir_min_distance(in.code);
    if (auto hit = nie_pir_distance_check(in.code)) {
      ordered_json h;
      h["component"] = hit->component;
      h["witness"] = hit->word;
      doc["nie_check"] = h;
    } else {
      doc["nie_check"] = nullptr;
    }
  });

  // pir-optimal -----------------------------------------------------------------
  std::string opt_kind;
  std::uint64_t opt_q = 0, opt_p = 0;
  unsigned opt_t = 0, opt_m = 0;
  std::size_t opt_n = 0, opt_k = 0, opt_s = 0;
  CLI::App* pir_optimal = app.add_subcommand(
      "pir-optimal", "Distance-optimal product-code constructions");
  pir_optimal->fallthrough();
  pir_optimal
      ->add_option("--kind", opt_kind, "Construction family: rs or gmds")
      ->required()
      ->check(CLI::IsMember({"rs", "gmds"}));
  CLI::Option* oq = pir_optimal->add_option("--q", opt_q, "Field size (rs)");
  CLI::Option* op = pir_optimal->add_option("--p", opt_p, "Prime (gmds)");
  CLI::Option* ot =
      pir_optimal->add_option("--t", opt_t, "Coefficient nilpotency (gmds)");
  CLI::Option* om =
      pir_optimal->add_option("--m", opt_m, "Residue degree (gmds)");
  CLI::Option* on = pir_optimal->add_option("--n", opt_n, "Length (gmds)");
  CLI::Option* ok = pir_optimal->add_option("--k", opt_k, "Dimension");
  CLI::Option* os =
      pir_optimal->add_option("--s", opt_s, "Number of ring copies");
  pir_optimal->callback([&] {
    auto need = [&](const CLI::Option* o, const char* name) {
      if (o->count() == 0) {
        throw CLI::RequiredError(std::string(name) + " (for --kind " +
                                 opt_kind + ")");
      }
    };
    OptimalResult r = [&] {
      if (opt_kind == "rs") {
        need(oq, "--q");
        need(ok, "--k");
        need(os, "--s");
        return optimal_rs(opt_q, opt_k, opt_s);
      }
      need(op, "--p");
      need(ot, "--t");
      need(om, "--m");
      need(on, "--n");
      need(ok, "--k");
      need(os, "--s");
      return optimal_galois_mds(opt_p, opt_t, opt_m, opt_n, opt_k, opt_s);
    }();
    doc["schema"] = 1;
    doc["command"] = "pir-optimal";
    doc["kind"] = opt_kind;
    doc["pir"] = r.code.pir()->spec_string();
    doc["lambdas"] = r.code.lambdas();
    ordered_json cert;
    cert["n"] = r.certificate.n;
    cert["cardinality"] = big_str(r.certificate.cardinality);
    cert["distance"] = r.certificate.distance;
    cert["bound"] = rational_text(r.certificate.singleton_bound);
    cert["optimal"] = r.certificate.optimal;
    doc["certificate"] = cert;
  });

  // verify ------------------------------------------------------------------------
  VerifyConfig vc;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the property-verification suites over small algebras");
  verify->fallthrough();
  verify->add_option("--suite", vc.suite, "Suite to run")
      ->check(CLI::IsMember({"units", "torsion", "representation", "distance",
                             "duality", "crt", "optimal", "all"}));
  verify->add_option("--max-ring-size", vc.max_ring_size,
                     "Skip coefficient rings larger than this");
  verify->add_option("--max-algebra-size", vc.max_algebra_size,
                     "Skip algebras larger than this");
  verify->add_option("--seed", vc.seed, "Seed for sampled ideal joins");
  verify->callback([&] {
    VerifyReport rep = run_verify(vc);
    doc["schema"] = 1;
    doc["command"] = "verify";
    ordered_json cfg;
    cfg["suite"] = vc.suite;
    cfg["max_ring_size"] = vc.max_ring_size;
    cfg["max_algebra_size"] = vc.max_algebra_size;
    cfg["seed"] = vc.seed;
    doc["config"] = cfg;
    ordered_json checks = ordered_json::array();
    for (const CheckResult& c : rep.checks) {
      ordered_json row;
      row["name"] = c.name;
      row["cases"] = c.cases;
      row["failures"] = c.failures;
      row["passed"] = c.passed();
      row["reproducers"] = c.reproducers;
      checks.push_back(row);
    }
    doc["checks"] = checks;
    doc["passed"] = rep.all_passed();
    doc["total_cases"] = rep.total_cases();
    if (!rep.all_passed()) exit_code = 1;
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    emit(doc, format, out_path, out);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    while (!target->get_subcommands().empty()) {
      target = target->get_subcommands().front();
    }
    out << target->help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    ordered_json ej;
    ej["schema"] = 1;
    ej["error"]["kind"] = errc_name(e.code());
    ej["error"]["message"] = e.what();
    err << ej.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    ordered_json ej;
    ej["schema"] = 1;
    ej["error"]["kind"] = "internal";
    ej["error"]["message"] = e.what();
    err << ej.dump(2) << "\n";
    return 1;
  }
  return exit_code;
}

}  // namespace nie
