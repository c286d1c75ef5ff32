#include "nie/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "nie/duality.hpp"
#include "nie/errors.hpp"

namespace nie {

namespace {

constexpr std::size_t kFullLatticeCap = 512;
constexpr std::size_t kSampledJoins = 64;
constexpr std::size_t kMaxReproducers = 5;

const char* const kSweepRings[] = {"Z(4)",    "Z(8)",    "Z(9)",
                                   "F(4)",    "GR(4,2)", "FU(2,2)"};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void record(CheckResult& r, bool ok, const std::string& repro) {
  ++r.cases;
  if (!ok) {
    ++r.failures;
    if (r.reproducers.size() < kMaxReproducers) r.reproducers.push_back(repro);
  }
}

std::string basis_text(const Code& c) {
  std::string out = "[";
  const auto& rows = c.basis().rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += ",";
    out += poly_text(rows[i].v);
  }
  return out + "]";
}

std::string code_repro(const Code& c) {
  return "algebra=\"" + c.algebra()->spec_string() + "\" basis=" +
         basis_text(c);
}

/// Shared sweep state: the algebras under test and their ideal lattices.
struct Sweep {
  VerifyConfig cfg;
  std::vector<Alg> algebras;
  std::map<std::string, std::vector<Code>> lattices;
  std::map<std::string, bool> lattice_is_full;

  explicit Sweep(const VerifyConfig& c) : cfg(c) {
    for (const char* spec : kSweepRings) {
      Ring r = make_ring(spec);
      if (r->size() > cfg.max_ring_size) continue;
      for (std::size_t n = 1; n <= 3; ++n) {
        for (elem_t l = 0; l < static_cast<elem_t>(r->size()); ++l) {
          if (r->is_unit(l)) continue;
          Alg s = make_algebra(r, n, l);
          if (s->size() > BigInt(cfg.max_algebra_size)) continue;
          algebras.push_back(std::move(s));
        }
      }
    }
  }

  const std::vector<Code>& ideals(const Alg& s) {
    const std::string key = s->spec_string();
    auto it = lattices.find(key);
    if (it != lattices.end()) return it->second;

    std::vector<Code> found;
    auto add = [&](Code c) {
      for (const Code& k : found) {
        if (k.same_code(c)) return;
      }
      found.push_back(std::move(c));
    };
    for (const Vec& g : s->enumerate()) add(Code::from_generators(s, {g}));

    const bool full = s->size() <= BigInt(kFullLatticeCap);
    if (full) {
      // Close under pairwise sums to a fixpoint; i keeps walking over
      // whatever gets appended, so joins of joins are covered.
      for (std::size_t i = 0; i < found.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          add(Code::sum(found[i], found[j]));
        }
      }
    } else {
      std::mt19937_64 rng(cfg.seed ^ fnv1a(key));
      for (std::size_t t = 0; t < kSampledJoins; ++t) {
        const Code& a = found[rng() % found.size()];
        const Code& b = found[rng() % found.size()];
        add(Code::sum(a, b));
      }
    }
    lattice_is_full[key] = full;
    return lattices.emplace(key, std::move(found)).first->second;
  }
};

// --- criterion 1: the unit criterion against exhaustive inversion ----------

void check_units(Sweep& sw, CheckResult& out) {
  for (const Alg& s : sw.algebras) {
    const auto words = s->enumerate();
    const Vec one = s->one();
    for (const Vec& v : words) {
      bool ok;
      if (s->is_unit(v)) {
        // A claimed unit must produce an exact inverse.
        ok = (s->mul(v, s->invert(v)) == one);
      } else {
        // A claimed non-unit must have no inverse anywhere in S.
        ok = std::none_of(words.begin(), words.end(), [&](const Vec& w) {
          return s->mul(v, w) == one;
        });
      }
      record(out, ok,
             "algebra=\"" + s->spec_string() + "\" element=" + poly_text(v));
    }
  }
}

// --- criterion 2: classification against the brute-force chain test --------

void check_classification(Sweep& sw, CheckResult& out) {
  for (const Alg& s : sw.algebras) {
    const auto& ideals = sw.ideals(s);
    bool totally_ordered = true;
    for (std::size_t i = 0; i < ideals.size() && totally_ordered; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (!ideals[i].basis().contains_module(ideals[j].basis()) &&
            !ideals[j].basis().contains_module(ideals[i].basis())) {
          totally_ordered = false;
          break;
        }
      }
    }
    const Classification cls = s->classify();
    const bool lib_chain = cls.kind != AlgebraClass::local_non_chain;
    record(out, lib_chain == totally_ordered,
           "algebra=\"" + s->spec_string() + "\" classified=" +
               algebra_class_name(cls.kind));

    // Chain algebras with a fully enumerated lattice must show the exact
    // ideal count for their shape.
    if (lib_chain && sw.lattice_is_full[s->spec_string()]) {
      std::size_t expect = 0;
      switch (cls.kind) {
        case AlgebraClass::field_quotient:
          expect = s->n() + 1;
          break;
        case AlgebraClass::chain_via_gamma:
          expect = s->coeff_ring()->e() + 1;
          break;
        default:
          expect = cls.nilpotency + 1;
          break;
      }
      record(out, ideals.size() == expect,
             "algebra=\"" + s->spec_string() + "\" ideals=" +
                 std::to_string(ideals.size()) + " expected=" +
                 std::to_string(expect));
    }
  }

  // Pinned shapes.
  auto z4_nonchain = make_algebra(make_ring("Z(4)"), 2, 0);
  record(out,
         z4_nonchain->classify().kind == AlgebraClass::local_non_chain,
         "algebra=\"Z(4);n=2;lambda=0\" expected local_non_chain");
  auto z4_chain = make_algebra(make_ring("Z(4)"), 2, 2);
  record(out, z4_chain->classify().kind == AlgebraClass::chain_via_x,
         "algebra=\"Z(4);n=2;lambda=2\" expected chain_via_x");
  record(out, sw.ideals(z4_chain).size() == 5,
         "algebra=\"Z(4);n=2;lambda=2\" expected exactly 5 ideals");
}

// --- criterion 3: the cardinality formula against exhaustive counting ------

void check_cardinality(Sweep& sw, CheckResult& out) {
  for (const Alg& s : sw.algebras) {
    const ChainRing& r = *s->coeff_ring();
    for (const Code& c : sw.ideals(s)) {
      const auto& tors = c.torsional_degrees();
      const std::size_t deficit = std::accumulate(tors.begin(), tors.end(),
                                                  std::size_t{0});
      const BigInt formula =
          big_pow(r.q(), r.e() * s->n() - deficit);
      const std::size_t counted = c.enumerate().size();
      record(out, formula == c.cardinality() && BigInt(counted) == formula,
             code_repro(c) + " counted=" + std::to_string(counted) +
                 " formula=" + big_str(formula));
    }
  }
}

// --- criterion 4: canonical representation -------------------------------

void check_representation(Sweep& sw, CheckResult& out) {
  for (const Alg& s : sw.algebras) {
    const ChainRing& r = *s->coeff_ring();
    for (const Code& c : sw.ideals(s)) {
      const auto& f = c.canonical_representation();
      const auto& tors = c.torsional_degrees();

      bool shape = f.size() == r.e();
      for (unsigned i = 0; i < f.size() && shape; ++i) {
        shape = canonical_shape_ok(*s, tors, i, f[i]) && c.contains(f[i]);
      }
      record(out, shape, code_repro(c) + " shape violation");

      std::vector<Vec> nonzero;
      for (const Vec& fi : f) {
        if (!vec_is_zero(fi)) nonzero.push_back(fi);
      }
      record(out, Code::from_generators(s, nonzero).same_code(c),
             code_repro(c) + " regeneration mismatch");

      // No other member of C has the canonical shape at any level.
      std::size_t extras = 0;
      auto words = c.enumerate();
      for (unsigned i = 0; i < r.e(); ++i) {
        if (tors[i] == s->n()) continue;
        for (const Vec& v : words) {
          if (canonical_shape_ok(*s, tors, i, v) && v != f[i]) ++extras;
        }
      }
      record(out, extras == 0,
             code_repro(c) + " alternative canonical members found");
    }

    // Chain algebras: the closed form for <x^j>.
    const Classification cls = s->classify();
    if (cls.kind == AlgebraClass::chain_via_x) {
      const unsigned e = r.e();
      const unsigned n = static_cast<unsigned>(s->n());
      for (unsigned j = 0; j <= n * e; ++j) {
        Vec gen = s->one();
        for (unsigned t = 0; t < j; ++t) gen = s->mul_x(gen);
        Code c = Code::from_generators(s, {gen});
        const unsigned k = j / n;
        const unsigned w = j % n;
        std::vector<Vec> want(e, Vec(s->n(), 0));
        if (j < n * e) {
          for (unsigned i = k; i < e; ++i) {
            want[i][i == k ? w : 0] = r.gamma_pow(i);
          }
        }
        record(out, c.canonical_representation() == want,
               "algebra=\"" + s->spec_string() + "\" ideal=<x^" +
                   std::to_string(j) + "> closed form mismatch");
      }
    }
  }
}

// --- criterion 5: distance one with constructive witness -------------------

void check_distance(Sweep& sw, CheckResult& out) {
  for (const Alg& s : sw.algebras) {
    for (const Code& c : sw.ideals(s)) {
      if (!c.is_zero()) {
        record(out, c.min_distance() == 1, code_repro(c) + " d(C) != 1");
        Vec w = c.weight_one_witness();
        std::size_t wt = 0;
        for (elem_t x : w) wt += (x != 0);
        record(out, wt == 1 && c.contains(w),
               code_repro(c) + " witness=" + poly_text(w));
      }
      if (!c.is_full()) {
        record(out, dual_min_distance_check(c) == 1,
               code_repro(c) + " d(dual) != 1");
      }
    }
  }
}

// --- criterion 6: the reversed annihilator is the dual ---------------------

void check_duality(Sweep& sw, CheckResult& out) {
  for (const Alg& s : sw.algebras) {
    const ChainRing& r = *s->coeff_ring();
    const unsigned e = r.e();
    for (const Code& c : sw.ideals(s)) {
      DualReport rep = dual(c);

      // Set equality with the inner-product kernel, membership by
      // membership across all of S. Orthogonality against the basis rows
      // settles orthogonality against the whole code.
      bool sets_equal = true;
      for (const Vec& v : s->enumerate()) {
        bool orth = true;
        for (const EchelonRow& row : c.basis().rows()) {
          elem_t dot = 0;
          for (std::size_t i = 0; i < v.size(); ++i) {
            dot = r.add(dot, r.mul(v[i], row.v[i]));
          }
          if (dot != 0) {
            orth = false;
            break;
          }
        }
        if (orth != rep.dual.contains(v)) {
          sets_equal = false;
          break;
        }
      }
      record(out, sets_equal, code_repro(c) + " dual set mismatch");

      record(out,
             rep.annihilator.cardinality() * c.cardinality() == s->size(),
             code_repro(c) + " annihilator size off");

      const auto& tors = c.torsional_degrees();
      bool profile_ok =
          rep.dual_torsion_profile == rep.annihilator.torsional_degrees();
      for (unsigned i = 0; i < e && profile_ok; ++i) {
        profile_ok = rep.dual_torsion_profile[i] == s->n() - tors[e - 1 - i];
      }
      record(out, profile_ok, code_repro(c) + " torsion profile off");
    }

    // Dual generator matrices in the two closed-form families.
    const Classification cls = s->classify();
    if (cls.kind == AlgebraClass::field_quotient && s->n() > 1) {
      for (std::size_t i = 1; i < s->n(); ++i) {
        Vec gen(s->n(), 0);
        gen[i] = 1;
        DualReport rep = dual(Code::from_generators(s, {gen}));
        bool block = rep.dual.rows().size() == i;
        for (std::size_t k = 0; k < i && block; ++k) {
          Vec want(s->n(), 0);
          want[k] = 1;
          block = rep.dual.rows()[k].v == want;
        }
        record(out, block,
               "algebra=\"" + s->spec_string() + "\" ideal=<x^" +
                   std::to_string(i) + "> identity block missing");
      }
    }
    if (cls.kind == AlgebraClass::chain_via_x) {
      const unsigned n = static_cast<unsigned>(s->n());
      for (unsigned j = 1; j <= n * e; ++j) {
        Vec gen = s->one();
        for (unsigned t = 0; t < j; ++t) gen = s->mul_x(gen);
        DualReport rep = dual(Code::from_generators(s, {gen}));
        const unsigned k = j / n;
        const unsigned w = j % n;
        bool block = rep.dual.rows().size() == w + (k >= 1 ? n - w : 0);
        std::size_t idx = 0;
        for (std::size_t col = 0; col < w && block; ++col, ++idx) {
          Vec want(s->n(), 0);
          want[col] = r.gamma_pow(e - (k + 1));
          block = rep.dual.rows()[idx].v == want;
        }
        if (k >= 1) {
          for (std::size_t col = w; col < n && block; ++col, ++idx) {
            Vec want(s->n(), 0);
            want[col] = r.gamma_pow(e - k);
            block = rep.dual.rows()[idx].v == want;
          }
        }
        record(out, block,
               "algebra=\"" + s->spec_string() + "\" ideal=<x^" +
                   std::to_string(j) + "> gamma block mismatch");
      }
    }
  }
}

// --- criterion 7: the dual-constacyclic verdict ----------------------------

void check_constacyclic(Sweep& sw, CheckResult& out) {
  for (const Alg& s : sw.algebras) {
    const ChainRing& r = *s->coeff_ring();
    for (const Code& c : sw.ideals(s)) {
      DualReport rep = dual(c);
      auto dual_words = rep.dual.enumerate();

      bool closed_for_some = false;
      for (elem_t l = 0; l < static_cast<elem_t>(r.size()) && !closed_for_some;
           ++l) {
        bool closed = true;
        for (const Vec& b : dual_words) {
          Vec t(b.size());
          t[0] = r.mul(l, b.back());
          std::copy(b.begin(), b.end() - 1, t.begin() + 1);
          if (!rep.dual.contains(t)) {
            closed = false;
            break;
          }
        }
        closed_for_some = closed;
      }

      ConstacyclicVerdict v = is_dual_constacyclic(c);
      bool ok = v.power.has_value() == closed_for_some;
      if (ok && v.power) {
        Code gi = *v.power >= r.e()
                      ? Code::zero_code(s)
                      : Code::from_generators(
                            s, {s->from_constant(r.gamma_pow(*v.power))});
        ok = c.same_code(gi);
      }
      if (ok && !v.power) {
        ok = rep.dual.contains(v.witness);
        for (elem_t l = 0; l < static_cast<elem_t>(r.size()) && ok; ++l) {
          Vec t(v.witness.size());
          t[0] = r.mul(l, v.witness.back());
          std::copy(v.witness.begin(), v.witness.end() - 1, t.begin() + 1);
          ok = !rep.dual.contains(t);
        }
      }
      record(out, ok, code_repro(c) + " verdict mismatch");
    }
  }
}

// --- criterion 8: torsion commutes with the quotient maps ------------------

void check_torsion_commutation(Sweep& sw, CheckResult& out) {
  for (const Alg& s : sw.algebras) {
    if (s->coeff_ring()->spec_string() != "Z(8)") continue;
    const unsigned e = s->coeff_ring()->e();
    for (const Code& c : sw.ideals(s)) {
      for (unsigned j = 1; j <= e; ++j) {
        for (unsigned i = 0; i < j; ++i) {
          record(out, c.torsion_commutes(j, i),
                 code_repro(c) + " i=" + std::to_string(i) + " j=" +
                     std::to_string(j));
        }
      }
    }
  }
}

// --- criterion 9: CRT round trips and product distance ---------------------

std::size_t brute_pir_distance(const PirCode& c) {
  std::vector<std::vector<Vec>> menus;
  for (const Code& comp : c.components()) menus.push_back(comp.enumerate());
  std::size_t best = c.length() + 2;
  std::vector<std::size_t> idx(menus.size(), 0);
  PirWord cur(menus.size());
  for (;;) {
    for (std::size_t t = 0; t < menus.size(); ++t) cur[t] = menus[t][idx[t]];
    std::size_t wt = pir_weight(cur);
    if (wt != 0) best = std::min(best, wt);
    std::size_t t = 0;
    while (t < idx.size() && ++idx[t] == menus[t].size()) {
      idx[t] = 0;
      ++t;
    }
    if (t == idx.size()) break;
  }
  return best;
}

void check_crt(Sweep& sw, CheckResult& out) {
  for (const char* spec : {"F(3) x F(3)", "Z(4) x F(5)"}) {
    Pir pr = parse_pir(spec);
    for (std::size_t n = 1; n <= 3; ++n) {
      const std::size_t s1 = static_cast<std::size_t>(pr->component(1)->size());
      const std::size_t s2 = static_cast<std::size_t>(pr->component(2)->size());
      for (elem_t l1 = 0; l1 < s1; ++l1) {
        for (elem_t l2 = 0; l2 < s2; ++l2) {
          auto a1 = make_algebra(pr->component(1), n, l1);
          auto a2 = make_algebra(pr->component(2), n, l2);
          const auto& menu1 = sw.ideals(a1);
          const auto& menu2 = sw.ideals(a2);
          for (const Code& a : menu1) {
            for (const Code& b : menu2) {
              PirCode c = PirCode::crt(pr, n, {l1, l2}, {a, b});
              std::string repro = "pir=\"" + std::string(spec) + "\" n=" +
                                  std::to_string(n) + " lambdas=[" +
                                  std::to_string(l1) + "," +
                                  std::to_string(l2) + "] comp1=" +
                                  basis_text(a) + " comp2=" + basis_text(b);

              bool ok = c.project(1).same_code(a) && c.project(2).same_code(b);
              ok = ok &&
                   c.cardinality() == a.cardinality() * b.cardinality();
              record(out, ok, repro + " roundtrip");

              if (c.cardinality() <= BigInt(1024)) {
                auto words = c.enumerate();
                bool closed = BigInt(words.size()) == c.cardinality();
                for (const PirWord& w : words) closed = closed && c.contains(w);
                record(out, closed, repro + " enumeration closure");
              }

              if (!c.is_zero() && c.cardinality() <= BigInt(1 << 16)) {
                record(out, pir_min_distance(c) == brute_pir_distance(c),
                       repro + " distance");
              }
            }
          }
        }
      }
    }
  }
}

// --- criteria 10 and 11: the optimal constructions -------------------------

void check_optimal(Sweep&, CheckResult& out) {
  OptimalResult rs = optimal_rs(5, 1, 2);
  record(out,
         rs.certificate.n == 4 && rs.certificate.cardinality == 5 &&
             rs.certificate.distance == 4 &&
             rs.certificate.singleton_bound == Rational(9, 2) &&
             rs.certificate.optimal &&
             brute_pir_distance(rs.code) == 4,
         "construction=rs q=5 k=1 s=2");

  OptimalResult gm = optimal_galois_mds(2, 2, 2, 3, 1, 2);
  record(out,
         gm.certificate.n == 3 && gm.certificate.cardinality == 16 &&
             gm.certificate.distance == 3 &&
             gm.certificate.singleton_bound == Rational(7, 2) &&
             gm.certificate.optimal &&
             brute_pir_distance(gm.code) == 3,
         "construction=galois-mds p=2 t=2 m=2 n=3 k=1 s=2");

  // Both constructions put the zero code on the only non-invertible
  // component, so the distance-one trap must stay disarmed.
  record(out,
         !nie_pir_distance_check(rs.code).has_value() &&
             !nie_pir_distance_check(gm.code).has_value(),
         "construction escape from the distance-one trap");
}

void check_pir_nie_distance(Sweep&, CheckResult& out) {
  Pir pr = parse_pir("Z(4) x F(5)");
  auto s1 = make_algebra(pr->component(1), 2, 2);
  auto s2 = make_algebra(pr->component(2), 2, 1);
  PirCode c = PirCode::crt(
      pr, 2, {2, 1},
      {Code::from_generators(s1, {s1->x()}), Code::full_code(s2)});

  auto hit = nie_pir_distance_check(c);
  bool ok = hit.has_value() && hit->component == 1;
  if (ok) {
    std::size_t wt = 0;
    for (elem_t x : hit->word) wt += (x != 0);
    ok = wt == 1 && c.project(1).contains(hit->word);
  }
  ok = ok && pir_min_distance(c) == 1 && brute_pir_distance(c) == 1;
  record(out, ok, "pir=\"Z(4) x F(5)\" lambdas=[2,1] comp1=<x> comp2=full");
}

struct Registered {
  const char* suite;
  const char* name;
  void (*fn)(Sweep&, CheckResult&);
};

const Registered kChecks[] = {
    {"units", "units.exhaustive_inverse", check_units},
    {"units", "units.classification_lattice", check_classification},
    {"torsion", "torsion.cardinality_formula", check_cardinality},
    {"torsion", "torsion.quotient_commutation", check_torsion_commutation},
    {"representation", "representation.canonical_form", check_representation},
    {"distance", "distance.weight_one", check_distance},
    {"duality", "duality.reversed_annihilator", check_duality},
    {"duality", "duality.constacyclic_verdict", check_constacyclic},
    {"crt", "crt.product_roundtrip", check_crt},
    {"optimal", "optimal.certificates", check_optimal},
    {"optimal", "optimal.nie_component_distance", check_pir_nie_distance},
};

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed(); });
}

std::size_t VerifyReport::total_cases() const {
  std::size_t sum = 0;
  for (const CheckResult& c : checks) sum += c.cases;
  return sum;
}

bool known_suite(const std::string& suite) {
  if (suite == "all") return true;
  return std::any_of(std::begin(kChecks), std::end(kChecks),
                     [&](const Registered& r) { return suite == r.suite; });
}

VerifyReport run_verify(const VerifyConfig& cfg) {
  if (!known_suite(cfg.suite)) {
    fail(errc::bad_parameters, "unknown verify suite: " + cfg.suite);
  }
  Sweep sw(cfg);
  VerifyReport report;
  for (const Registered& reg : kChecks) {
    if (cfg.suite != "all" && cfg.suite != reg.suite) continue;
    CheckResult res;
    res.name = reg.name;
    try {
      reg.fn(sw, res);
    } catch (const std::exception& ex) {
      // Internal tripwires must surface as a red check, not a crash.
      ++res.cases;
      ++res.failures;
      if (res.reproducers.size() < kMaxReproducers) {
        res.reproducers.push_back(std::string("exception: ") + ex.what());
      }
    }
    report.checks.push_back(std::move(res));
  }
  // Canonical report order, independent of how the checks executed.
  std::sort(report.checks.begin(), report.checks.end(),
            [](const CheckResult& a, const CheckResult& b) {
              return a.name < b.name;
            });
  return report;
}

}  // namespace nie
