#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

#include "nie/duality.hpp"

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

/// Brute-force annihilator: every vector whose product with every codeword
/// vanishes.
std::set<Vec> annihilator_oracle(const Code& c) {
  const Alg& s = c.algebra();
  auto words = c.enumerate();
  std::set<Vec> out;
  for (const Vec& v : s->enumerate()) {
    bool kills = true;
    for (const Vec& w : words) {
      if (!vec_is_zero(s->mul(v, w))) {
        kills = false;
        break;
      }
    }
    if (kills) out.insert(v);
  }
  return out;
}

/// Brute-force Euclidean dual: every vector orthogonal to all codewords.
std::set<Vec> inner_product_dual_oracle(const Code& c) {
  const Alg& s = c.algebra();
  const ChainRing& r = *s->coeff_ring();
  auto words = c.enumerate();
  std::set<Vec> out;
  for (const Vec& v : s->enumerate()) {
    bool orth = true;
    for (const Vec& w : words) {
      elem_t dot = 0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        dot = r.add(dot, r.mul(v[i], w[i]));
      }
      if (dot != 0) {
        orth = false;
        break;
      }
    }
    if (orth) out.insert(v);
  }
  return out;
}

std::set<Vec> as_set(const EchelonModule& m) {
  auto words = m.enumerate();
  return std::set<Vec>(words.begin(), words.end());
}

Vec shift_by(const ChainRing& r, const Vec& b, elem_t l) {
  Vec t(b.size());
  t[0] = r.mul(l, b.back());
  std::copy(b.begin(), b.end() - 1, t.begin() + 1);
  return t;
}

std::vector<Alg> sweep_algebras() {
  std::vector<Alg> out;
  struct Row {
    const char* ring;
    std::size_t n;
    elem_t lambda;
  };
  const Row rows[] = {
      {"Z(4)", 2, 2},    {"Z(4)", 2, 0}, {"Z(4)", 3, 2},    {"Z(8)", 2, 2},
      {"Z(8)", 2, 4},    {"Z(9)", 2, 3}, {"F(4)", 3, 0},    {"F(5)", 2, 0},
      {"GR(4,2)", 2, 2}, {"FU(2,2)", 2, 2}, {"FU(2,2)", 2, 0}, {"Z(4)", 1, 2},
  };
  for (const auto& r : rows) {
    out.push_back(make_algebra(make_ring(r.ring), r.n, r.lambda));
  }
  return out;
}

}  // namespace

TEST_CASE("coordinate reversal is an involution") {
  ReversalPerm pi{4};
  CHECK(pi(0) == 3);
  CHECK(pi(3) == 0);
  CHECK(pi(pi(1)) == 1);
  CHECK(pi.apply(Vec{1, 2, 3, 4}) == Vec{4, 3, 2, 1});
  CHECK(pi.apply(pi.apply(Vec{1, 2, 3, 4})) == Vec{1, 2, 3, 4});
  check_fails(errc::index_out_of_range, [&] { (void)pi(4); });
  check_fails(errc::length_mismatch, [&] { (void)pi.apply(Vec{1, 2}); });
}

TEST_CASE("annihilator of <x> in Z4[x]/<x^2-2>") {
  auto s = make_algebra(make_ring("Z(4)"), 2, 2);
  Code c = Code::from_generators(s, {s->x()});

  Code ann = annihilator(c);
  CHECK(ann.cardinality() == 2);
  // x^3 = 2x, so A(C) = {0, 2x}.
  CHECK(ann.contains(Vec{0, 2}));
  CHECK(ann.same_code(Code::from_generators(s, {Vec{0, 2}})));

  DualReport rep = dual(c);
  CHECK(rep.dual_torsion_profile == std::vector<std::size_t>{2, 1});
  CHECK(dual_torsion_profile(c) == std::vector<std::size_t>{2, 1});
  CHECK(rep.dual.cardinality() == 2);
  CHECK(rep.dual.contains(Vec{2, 0}));
  CHECK_FALSE(rep.is_constacyclic_for.has_value());

  CHECK(dual_min_distance_check(c) == 1);

  ConstacyclicVerdict v = is_dual_constacyclic(c);
  REQUIRE_FALSE(v.power.has_value());
  // The only nonzero dual word (2,0) shifts to (0,2) for every constant,
  // and (0,2) is outside the dual.
  CHECK(v.witness == Vec{2, 0});
}

TEST_CASE("trivial annihilators and duals") {
  auto s = make_algebra(make_ring("Z(8)"), 2, 2);

  Code full = Code::full_code(s);
  CHECK(annihilator(full).is_zero());
  DualReport rf = dual(full);
  CHECK(rf.dual.is_zero_module());
  CHECK(rf.dual_torsion_profile == std::vector<std::size_t>{2, 2, 2});
  REQUIRE(rf.is_constacyclic_for.has_value());
  CHECK(*rf.is_constacyclic_for == 0);

  Code zero = Code::zero_code(s);
  CHECK(annihilator(zero).is_full());
  DualReport rz = dual(zero);
  CHECK(rz.dual.cardinality() == s->size());
  CHECK(rz.dual_torsion_profile == std::vector<std::size_t>{0, 0, 0});
  REQUIRE(rz.is_constacyclic_for.has_value());
  CHECK(*rz.is_constacyclic_for == 3);
  CHECK(dual_min_distance_check(zero) == 1);

  // gamma R^n: verdict yes with the complementary power.
  Code g1 = Code::from_generators(s, {s->from_constant(2)});
  ConstacyclicVerdict v = is_dual_constacyclic(g1);
  REQUIRE(v.power.has_value());
  CHECK(*v.power == 1);
  CHECK(dual(g1).dual.same_module(
      Code::from_generators(s, {s->from_constant(4)}).basis()));
}

TEST_CASE("dual equals the inner-product kernel on the sweep") {
  for (const auto& s : sweep_algebras()) {
    if (!s->nie() || s->size() > BigInt(512)) continue;
    for (const Code& c : all_ideals(s)) {
      DualReport rep = dual(c);

      CHECK(as_set(rep.annihilator.basis()) == annihilator_oracle(c));
      CHECK(as_set(rep.dual) == inner_product_dual_oracle(c));
      CHECK(rep.annihilator.cardinality() * c.cardinality() == s->size());

      // The annihilator is itself an ideal: closed under the shift.
      for (const Vec& a : rep.annihilator.enumerate()) {
        CHECK(rep.annihilator.contains(s->tau(a)));
      }

      // Profile formula against the directly computed torsion degrees.
      const auto& tors = c.torsional_degrees();
      const unsigned e = s->coeff_ring()->e();
      for (unsigned i = 0; i < e; ++i) {
        CHECK(rep.dual_torsion_profile[i] == s->n() - tors[e - 1 - i]);
      }
      CHECK(rep.dual_torsion_profile == rep.annihilator.torsional_degrees());
    }
  }
}

TEST_CASE("constacyclicity verdict matches the brute-force closure test") {
  for (const auto& s : sweep_algebras()) {
    if (!s->nie() || s->size() > BigInt(512)) continue;
    const ChainRing& r = *s->coeff_ring();
    for (const Code& c : all_ideals(s)) {
      DualReport rep = dual(c);
      auto dual_words = rep.dual.enumerate();

      bool closed_for_some = false;
      for (elem_t l = 0; l < static_cast<elem_t>(r.size()) && !closed_for_some;
           ++l) {
        bool closed = true;
        for (const Vec& b : dual_words) {
          if (!rep.dual.contains(shift_by(r, b, l))) {
            closed = false;
            break;
          }
        }
        closed_for_some = closed;
      }

      ConstacyclicVerdict v = is_dual_constacyclic(c);
      CHECK(v.power.has_value() == closed_for_some);
      if (v.power) {
        CHECK(c.same_code(*v.power >= r.e()
                              ? Code::zero_code(s)
                              : Code::from_generators(
                                    s, {s->from_constant(r.gamma_pow(*v.power))})));
      } else {
        // The witness lies in the dual and escapes under every constant.
        CHECK(rep.dual.contains(v.witness));
        for (elem_t l = 0; l < static_cast<elem_t>(r.size()); ++l) {
          CHECK_FALSE(rep.dual.contains(shift_by(r, v.witness, l)));
        }
      }

      if (!c.is_full()) CHECK(dual_min_distance_check(c) == 1);
    }
  }
}

TEST_CASE("field duals carry a leading identity block") {
  // C = <x^i> over F_q[x]/<x^n>: the dual generator matrix is (I_i | O) and
  // for 0 < i < n the escape witness is the unit vector at position i-1.
  for (const char* ring : {"F(2)", "F(4)", "F(5)"}) {
    auto r = make_ring(ring);
    for (std::size_t n : {2, 3, 4}) {
      auto s = make_algebra(r, n, 0);
      for (std::size_t i = 1; i < n; ++i) {
        Vec gen(n, 0);
        gen[i] = 1;
        Code c = Code::from_generators(s, {gen});
        DualReport rep = dual(c);
        REQUIRE(rep.dual.rows().size() == i);
        for (std::size_t k = 0; k < i; ++k) {
          Vec row(n, 0);
          row[k] = 1;
          CHECK(rep.dual.rows()[k].v == row);
          CHECK(rep.dual.rows()[k].col == k);
          CHECK(rep.dual.rows()[k].val == 0);
        }
        ConstacyclicVerdict v = is_dual_constacyclic(c);
        REQUIRE_FALSE(v.power.has_value());
        Vec unit(n, 0);
        unit[i - 1] = 1;
        CHECK(v.witness == unit);
      }
    }
  }
}

TEST_CASE("chain algebra duals carry the two-block gamma shape") {
  // C = <x^j> with j = kn + w inside a chain algebra: the dual is generated
  // by gamma^{e-(k+1)} I_w stacked with gamma^{e-k} I_{n-w}.
  for (const char* ring : {"Z(4)", "Z(8)", "Z(9)"}) {
    auto r = make_ring(ring);
    const unsigned e = r->e();
    for (std::size_t n : {2, 3}) {
      auto s = make_algebra(r, n, r->gamma());
      REQUIRE(s->classify().kind == AlgebraClass::chain_via_x);
      const unsigned ne = static_cast<unsigned>(n) * e;
      for (unsigned j = 1; j <= ne; ++j) {
        Vec gen = s->one();
        for (unsigned t = 0; t < j; ++t) gen = s->mul_x(gen);
        Code c = Code::from_generators(s, {gen});
        DualReport rep = dual(c);
        const unsigned k = j / static_cast<unsigned>(n);
        const unsigned w = j % static_cast<unsigned>(n);
        // The gamma^{e-k} block vanishes when k = 0, so it only contributes
        // rows for k >= 1.
        REQUIRE(rep.dual.rows().size() == w + (k >= 1 ? n - w : 0));
        std::size_t idx = 0;
        for (std::size_t col = 0; col < w; ++col, ++idx) {
          const auto& row = rep.dual.rows()[idx];
          CHECK(row.col == col);
          CHECK(row.val == e - (k + 1));
          Vec want(n, 0);
          want[col] = r->gamma_pow(e - (k + 1));
          CHECK(row.v == want);
        }
        if (k >= 1) {
          for (std::size_t col = w; col < n; ++col, ++idx) {
            const auto& row = rep.dual.rows()[idx];
            CHECK(row.col == col);
            CHECK(row.val == e - k);
            Vec want(n, 0);
            want[col] = r->gamma_pow(e - k);
            CHECK(row.v == want);
          }
        }
      }
    }
  }
}

TEST_CASE("length-one algebras always have constacyclic duals") {
  // n = 1: every ideal of R is gamma^i R, so the verdict is always yes.
  for (const char* ring : {"Z(4)", "Z(8)", "Z(9)", "FU(2,2)"}) {
    auto r = make_ring(ring);
    auto s = make_algebra(r, 1, r->gamma());
    for (const Code& c : all_ideals(s)) {
      ConstacyclicVerdict v = is_dual_constacyclic(c);
      CHECK(v.power.has_value());
    }
  }
}

TEST_CASE("duality errors") {
  auto unit = make_algebra(make_ring("F(5)"), 4, 1);
  Code c = Code::from_generators(unit, {Vec{2, 4, 3, 1}});
  check_fails(errc::not_nie, [&] { (void)annihilator(c); });
  check_fails(errc::not_nie, [&] { (void)dual(c); });
  check_fails(errc::not_nie, [&] { (void)dual_torsion_profile(c); });
  check_fails(errc::not_nie, [&] { (void)is_dual_constacyclic(c); });
  check_fails(errc::not_nie, [&] { (void)dual_min_distance_check(c); });

  auto s = make_algebra(make_ring("Z(4)"), 2, 2);
  check_fails(errc::full_code,
              [&] { (void)dual_min_distance_check(Code::full_code(s)); });
}
