#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

#include "nie/pir.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"
#include "nie/errors.hpp"

using namespace nie;

namespace {

template <typename F>
void check_fails(errc code, F&& f) {
  try {
    f();
    FAIL_CHECK("expected failure ", errc_name(code));
  } catch (const domain_error& err) {
    CHECK(errc_name(err.code()) == errc_name(code));
  }
}

std::vector<Code> all_ideals(const Alg& s) {
  std::vector<Code> found;
  auto known = [&](const Code& c) {
    return std::any_of(found.begin(), found.end(),
                       [&](const Code& k) { return k.same_code(c); });
  };
  for (const Vec& g : s->enumerate()) {
    Code c = Code::from_generators(s, {g});
    if (!known(c)) found.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Code c = Code::sum(found[i], found[j]);
      if (!known(c)) found.push_back(std::move(c));
    }
  }
  return found;
}

std::size_t brute_force_distance(const PirCode& c) {
  std::size_t best = c.length() + 1;
  for (const PirWord& w : c.enumerate()) {
    std::size_t wt = pir_weight(w);
    if (wt != 0) best = std::min(best, wt);
  }
  return best;
}

}  // namespace

TEST_CASE("product rings") {
  Pir p1 = parse_pir("F(5) x F(5)");
  CHECK(p1->s() == 2);
  CHECK(p1->size() == 25);
  CHECK(p1->spec_string() == "F(5) x F(5)");

  Pir p2 = parse_pir("Z(4)");
  CHECK(p2->s() == 1);
  CHECK(p2->size() == 4);

  Pir p3 = parse_pir("GR(4,2;mod=1,1,1) x GR(4,2)");
  CHECK(p3->s() == 2);
  CHECK(p3->size() == 256);
  CHECK(p3->component(1)->same_ring(*p3->component(2)));

  Pir p4 = parse_pir("Z(4) x F(5)");
  CHECK(p4->size() == 20);
  CHECK(p4->component(1)->spec_string() == "Z(4)");
  CHECK(p4->component(2)->spec_string() == "F(5)");
  CHECK(p4->same_pir(*parse_pir(" Z(4)   x  F(5) ")));
  CHECK_FALSE(p4->same_pir(*p1));

  check_fails(errc::index_out_of_range, [&] { (void)p4->component(0); });
  check_fails(errc::index_out_of_range, [&] { (void)p4->component(3); });
  check_fails(errc::bad_parameters, [&] { (void)make_pir({}); });
  check_fails(errc::parse_error, [&] { (void)parse_pir("Z(4) x"); });
  check_fails(errc::parse_error, [&] { (void)parse_pir("Z(4) x (") ; });
}

TEST_CASE("product-ring weight") {
  CHECK(pir_weight(PirWord{Vec{0, 1, 0}, Vec{0, 0, 0}}) == 1);
  CHECK(pir_weight(PirWord{Vec{0, 1, 0}, Vec{2, 1, 0}}) == 2);
  CHECK(pir_weight(PirWord{Vec{0, 0}, Vec{0, 0}}) == 0);
  CHECK(pir_weight(PirWord{Vec{3, 1}}) == 2);
}

TEST_CASE("Reed-Solomon components are MDS") {
  Code c = rs_component(5, 1);
  CHECK(c.length() == 4);
  CHECK(c.cardinality() == 5);
  CHECK(c.min_distance() == 4);
  CHECK(c.generators() == std::vector<Vec>{Vec{2, 4, 3, 1}});
  CHECK(c.algebra()->spec_string() == "F(5);n=4;lambda=1");

  Code c42 = rs_component(4, 2);
  CHECK(c42.length() == 3);
  CHECK(c42.cardinality() == 16);
  CHECK(c42.min_distance() == 2);

  // k = q - 1 leaves an empty root product: the full code, distance 1.
  Code cfull = rs_component(5, 4);
  CHECK(cfull.is_full());
  CHECK(cfull.min_distance() == 1);

  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    for (std::size_t k = 1; k < q; ++k) {
      if (big_pow(q, k) > BigInt(1 << 16)) continue;
      Code rs = rs_component(q, k);
      CHECK(rs.cardinality() == big_pow(q, k));
      CHECK(rs.min_distance() == q - k);
    }
  }

  check_fails(errc::bad_parameters, [&] { (void)rs_component(5, 0); });
  check_fails(errc::bad_parameters, [&] { (void)rs_component(5, 5); });
  check_fails(errc::non_prime, [&] { (void)rs_component(6, 1); });
}

TEST_CASE("Galois-ring MDS components") {
  Code c1 = galois_mds_component(2, 2, 2, 3, 1);
  CHECK(c1.length() == 3);
  CHECK(c1.cardinality() == 16);
  CHECK(c1.min_distance() == 3);
  CHECK(c1.algebra()->coeff_ring()->spec_string() == "GR(4,2;mod=1,1,1)");

  Code c2 = galois_mds_component(2, 2, 2, 3, 2);
  CHECK(c2.cardinality() == 256);
  CHECK(c2.min_distance() == 2);

  // t = 1 degenerates to the field case: a [3,1,3] code over F4.
  Code cf = galois_mds_component(2, 1, 2, 3, 1);
  CHECK(cf.cardinality() == 4);
  CHECK(cf.min_distance() == 3);

  // Z9 carries length-2 MDS codes since 2 | 3^1 - 1 fails... use GR(9,1):
  // q - 1 = 2, n = 2, k = 1.
  Code c9 = galois_mds_component(3, 2, 1, 2, 1);
  CHECK(c9.cardinality() == 9);
  CHECK(c9.min_distance() == 2);

  check_fails(errc::bad_parameters,
              [&] { (void)galois_mds_component(2, 2, 2, 5, 1); });
  check_fails(errc::bad_parameters,
              [&] { (void)galois_mds_component(2, 2, 2, 3, 0); });
  check_fails(errc::bad_parameters,
              [&] { (void)galois_mds_component(2, 2, 2, 3, 3); });
}

TEST_CASE("CRT composition round-trips and multiplies cardinalities") {
  struct Instance {
    const char* pir;
    std::vector<elem_t> lambdas;
  };
  const Instance instances[] = {
      {"F(3) x F(3)", {0, 0}},
      {"F(3) x F(3)", {1, 0}},
      {"Z(4) x F(5)", {2, 0}},
      {"Z(4) x F(5)", {2, 1}},
      {"Z(4) x F(5)", {0, 1}},
  };
  for (const auto& inst : instances) {
    Pir pr = parse_pir(inst.pir);
    for (std::size_t n : {1, 2, 3}) {
      std::vector<std::vector<Code>> menu;
      for (std::size_t t = 1; t <= pr->s(); ++t) {
        menu.push_back(
            all_ideals(make_algebra(pr->component(t), n, inst.lambdas[t - 1])));
      }
      for (const Code& a : menu[0]) {
        for (const Code& b : menu[1]) {
          PirCode c = PirCode::crt(pr, n, inst.lambdas, {a, b});
          CHECK(c.project(1).same_code(a));
          CHECK(c.project(2).same_code(b));
          CHECK(c.cardinality() == a.cardinality() * b.cardinality());

          if (c.is_zero()) {
            check_fails(errc::zero_code, [&] { (void)pir_min_distance(c); });
          } else if (c.cardinality() <= BigInt(1 << 16)) {
            CHECK(pir_min_distance(c) == brute_force_distance(c));
          }

          // Membership is componentwise.
          if (a.cardinality() <= BigInt(64) && b.cardinality() <= BigInt(64)) {
            for (const Vec& wa : a.enumerate()) {
              for (const Vec& wb : b.enumerate()) {
                CHECK(c.contains(PirWord{wa, wb}));
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("full and zero product codes") {
  Pir pr = parse_pir("Z(4) x F(5)");
  std::vector<elem_t> lambdas{2, 1};
  auto s1 = make_algebra(pr->component(1), 2, 2);
  auto s2 = make_algebra(pr->component(2), 2, 1);

  PirCode full = PirCode::crt(pr, 2, lambdas,
                              {Code::full_code(s1), Code::full_code(s2)});
  CHECK(full.is_full());
  CHECK(full.cardinality() == 400);
  CHECK(pir_min_distance(full) == 1);

  PirCode zero = PirCode::crt(pr, 2, lambdas,
                              {Code::zero_code(s1), Code::zero_code(s2)});
  CHECK(zero.is_zero());
  CHECK(zero.cardinality() == 1);
  CHECK(zero.enumerate().size() == 1);
}

TEST_CASE("optimal Reed-Solomon construction") {
  OptimalResult res = optimal_rs(5, 1, 2);
  CHECK(res.certificate.n == 4);
  CHECK(res.certificate.cardinality == 5);
  CHECK(res.certificate.distance == 4);
  CHECK(res.certificate.singleton_bound == Rational(9, 2));
  CHECK(res.certificate.optimal);
  CHECK(res.code.pir()->spec_string() == "F(5) x F(5)");
  CHECK(res.code.lambdas() == std::vector<elem_t>{1, 0});
  CHECK(res.code.project(2).is_zero());
  CHECK(res.code.project(1).cardinality() == 5);

  // The construction dodges the distance-one trap: its only component with a
  // non-invertible constant is the zero code.
  CHECK_FALSE(nie_pir_distance_check(res.code).has_value());

  // Brute force confirms the distance at product scale.
  CHECK(brute_force_distance(res.code) == 4);

  OptimalResult r723 = optimal_rs(7, 2, 3);
  CHECK(r723.certificate.n == 6);
  CHECK(r723.certificate.cardinality == 2401);
  CHECK(r723.certificate.distance == 5);
  CHECK(r723.certificate.singleton_bound == Rational(17, 3));
  CHECK(r723.certificate.optimal);

  check_fails(errc::bad_parameters, [&] { (void)optimal_rs(5, 1, 1); });
  check_fails(errc::bad_parameters, [&] { (void)optimal_rs(5, 2, 2); });
  check_fails(errc::bad_parameters, [&] { (void)optimal_rs(5, 0, 2); });
}

TEST_CASE("optimal Galois-ring construction") {
  OptimalResult res = optimal_galois_mds(2, 2, 2, 3, 1, 2);
  CHECK(res.certificate.n == 3);
  CHECK(res.certificate.cardinality == 16);
  CHECK(res.certificate.distance == 3);
  CHECK(res.certificate.singleton_bound == Rational(7, 2));
  CHECK(res.certificate.optimal);
  CHECK(res.code.pir()->spec_string() ==
        "GR(4,2;mod=1,1,1) x GR(4,2;mod=1,1,1)");
  CHECK(res.code.project(2).is_zero());
  CHECK(brute_force_distance(res.code) == 3);
  CHECK_FALSE(nie_pir_distance_check(res.code).has_value());

  check_fails(errc::bad_parameters,
              [&] { (void)optimal_galois_mds(2, 2, 2, 3, 1, 1); });
  check_fails(errc::bad_parameters,
              [&] { (void)optimal_galois_mds(2, 2, 2, 3, 2, 2); });
}

TEST_CASE("non-invertible components force distance one") {
  Pir pr = parse_pir("Z(4) x F(5)");
  auto s1 = make_algebra(pr->component(1), 2, 2);
  auto s2 = make_algebra(pr->component(2), 2, 1);
  PirCode c = PirCode::crt(
      pr, 2, {2, 1},
      {Code::from_generators(s1, {s1->x()}), Code::full_code(s2)});

  auto hit = nie_pir_distance_check(c);
  REQUIRE(hit.has_value());
  CHECK(hit->component == 1);
  CHECK(c.project(1).contains(hit->word));
  std::size_t wt = 0;
  for (elem_t x : hit->word) wt += (x != 0);
  CHECK(wt == 1);
  CHECK(pir_min_distance(c) == 1);
  CHECK(brute_force_distance(c) == 1);

  // A unit constant on the nonzero component never triggers the check.
  PirCode cu = PirCode::crt(
      pr, 2, {2, 1},
      {Code::zero_code(s1), Code::full_code(s2)});
  CHECK_FALSE(nie_pir_distance_check(cu).has_value());
}

TEST_CASE("product-code validation errors") {
  Pir pr = parse_pir("Z(4) x F(5)");
  auto s1 = make_algebra(pr->component(1), 2, 2);
  auto s2 = make_algebra(pr->component(2), 2, 1);
  Code a = Code::full_code(s1);
  Code b = Code::full_code(s2);

  check_fails(errc::component_mismatch,
              [&] { (void)PirCode::crt(pr, 2, {2, 1}, {a}); });
  check_fails(errc::component_mismatch,
              [&] { (void)PirCode::crt(pr, 2, {2}, {a, b}); });
  // Wrong shift constant on component 2.
  check_fails(errc::component_mismatch,
              [&] { (void)PirCode::crt(pr, 2, {2, 0}, {a, b}); });
  // Swapped components.
  check_fails(errc::component_mismatch,
              [&] { (void)PirCode::crt(pr, 2, {2, 1}, {b, a}); });
  // Wrong length.
  auto s1n3 = make_algebra(pr->component(1), 3, 2);
  check_fails(errc::length_mismatch, [&] {
    (void)PirCode::crt(pr, 2, {2, 1}, {Code::full_code(s1n3), b});
  });

  PirCode c = PirCode::crt(pr, 2, {2, 1}, {a, b});
  check_fails(errc::index_out_of_range, [&] { (void)c.project(0); });
  check_fails(errc::index_out_of_range, [&] { (void)c.project(3); });
  check_fails(errc::component_mismatch,
              [&] { (void)c.contains(PirWord{Vec{0, 0}}); });
}
