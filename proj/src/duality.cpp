#include "nie/duality.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "nie/errors.hpp"

namespace nie {

namespace {

void check_nie(const Algebra& s, const char* what) {
  if (!s.nie()) {
    fail(errc::not_nie, std::string(what) +
                            " requires a non-invertible shift constant, got " +
                            s.spec_string());
  }
}

/// (l b_{n-1}, b_0, ..., b_{n-2}): the shift with an arbitrary constant l,
/// independent of the constant baked into the algebra.
Vec shifted_by(const ChainRing& r, const Vec& b, elem_t l) {
  Vec t(b.size());
  t[0] = r.mul(l, b.back());
  std::copy(b.begin(), b.end() - 1, t.begin() + 1);
  return t;
}

/// gamma^i R^n as an ideal (the x-closure of the constant gamma^i).
Code gamma_power_code(const Alg& s, unsigned i) {
  const ChainRing& r = *s->coeff_ring();
  if (i >= r.e()) return Code::zero_code(s);
  return Code::from_generators(s, {s->from_constant(r.gamma_pow(i))});
}

}  // namespace

std::size_t ReversalPerm::operator()(std::size_t i) const {
  if (i >= n) {
    fail(errc::index_out_of_range,
         "reversal index " + std::to_string(i) + " out of range for length " +
             std::to_string(n));
  }
  return n - 1 - i;
}

Vec ReversalPerm::apply(const Vec& v) const {
  if (v.size() != n) {
    fail(errc::length_mismatch,
         "reversal of length " + std::to_string(n) + " applied to a vector of length " +
             std::to_string(v.size()));
  }
  return Vec(v.rbegin(), v.rend());
}

Code annihilator(const Code& c) {
  const Alg& s = c.algebra();
  check_nie(*s, "annihilator");
  if (c.is_zero()) return Code::full_code(s);

  const std::size_t n = s->n();
  const auto& rows = c.basis().rows();

  // a annihilates C iff a * g = 0 for every basis row g (the product is
  // R-bilinear). Row j of the stacked matrix is the concatenation over the
  // basis rows g of the coefficients of x^j g, so the annihilator is exactly
  // the left kernel of that n x (n * #rows) matrix.
  std::vector<Vec> shifted;
  shifted.reserve(rows.size());
  for (const EchelonRow& row : rows) shifted.push_back(row.v);
  std::vector<Vec> a(n);
  for (std::size_t j = 0; j < n; ++j) {
    a[j].reserve(n * shifted.size());
    for (const Vec& g : shifted) a[j].insert(a[j].end(), g.begin(), g.end());
    if (j + 1 < n) {
      for (Vec& g : shifted) g = s->mul_x(g);
    }
  }

  std::vector<Vec> ker = left_kernel(s->coeff_ring(), std::move(a));
  EchelonModule plain = EchelonModule::span(s->coeff_ring(), n, ker);
  Code ann = Code::from_generators(s, std::move(ker));
  // from_generators closes under x; equality certifies the kernel set is
  // already an ideal, which the theory promises.
  if (!ann.basis().same_module(plain)) {
    throw std::logic_error("annihilator kernel is not closed under the shift");
  }
  return ann;
}

DualReport dual(const Code& c) {
  const Alg& s = c.algebra();
  check_nie(*s, "dual");
  const std::size_t n = s->n();
  const ChainRing& r = *s->coeff_ring();

  Code ann = annihilator(c);
  if (ann.cardinality() * c.cardinality() != s->size()) {
    throw std::logic_error("annihilator size violates |A(C)| |C| = |R|^n");
  }

  ReversalPerm pi{n};
  std::vector<Vec> rev;
  rev.reserve(ann.basis().rows().size());
  for (const EchelonRow& row : ann.basis().rows()) rev.push_back(pi.apply(row.v));
  EchelonModule dual_mod = EchelonModule::span(s->coeff_ring(), n, rev);
  if (dual_mod.cardinality() != ann.cardinality()) {
    throw std::logic_error("coordinate reversal changed the dual's size");
  }

  const auto& tors = c.torsional_degrees();
  std::vector<std::size_t> profile(r.e());
  for (unsigned i = 0; i < r.e(); ++i) profile[i] = n - tors[r.e() - 1 - i];
  if (profile != ann.torsional_degrees()) {
    throw std::logic_error("dual torsion profile disagrees with the annihilator");
  }

  std::optional<unsigned> marker;
  for (unsigned i = 0; i <= r.e(); ++i) {
    if (c.same_code(gamma_power_code(s, i))) {
      marker = i;
      // The dual of gamma^i R^n must be gamma^{e-i} R^n.
      if (!dual_mod.same_module(gamma_power_code(s, r.e() - i).basis())) {
        throw std::logic_error("dual of a gamma-power code has the wrong shape");
      }
      break;
    }
  }

  return DualReport{std::move(ann), std::move(dual_mod), std::move(profile),
                    marker};
}

std::vector<std::size_t> dual_torsion_profile(const Code& c) {
  return dual(c).dual_torsion_profile;
}

ConstacyclicVerdict is_dual_constacyclic(const Code& c) {
  DualReport rep = dual(c);
  if (rep.is_constacyclic_for) {
    return ConstacyclicVerdict{rep.is_constacyclic_for, Vec{}};
  }

  const Alg& s = c.algebra();
  const ChainRing& r = *s->coeff_ring();

  // Lexicographically first dual codeword all of whose shifts escape.
  std::vector<Vec> words = rep.dual.enumerate();
  std::sort(words.begin(), words.end());
  const elem_t rsize = static_cast<elem_t>(r.size());
  for (const Vec& b : words) {
    if (vec_is_zero(b)) continue;
    bool escapes_all = true;
    for (elem_t l = 0; l < rsize && escapes_all; ++l) {
      if (rep.dual.contains(shifted_by(r, b, l))) escapes_all = false;
    }
    if (escapes_all) return ConstacyclicVerdict{std::nullopt, b};
  }
  throw std::logic_error("no uniform escape witness in the dual");
}

std::size_t dual_min_distance_check(const Code& c) {
  const Alg& s = c.algebra();
  check_nie(*s, "dual_min_distance_check");
  if (c.is_full()) {
    fail(errc::full_code, "the dual of the full code is zero");
  }
  DualReport rep = dual(c);
  std::size_t best = s->n() + 1;
  rep.dual.for_each([&](const Vec& v) {
    std::size_t w = 0;
    for (elem_t x : v) w += (x != 0);
    if (w != 0 && w < best) best = w;
    return best > 1;
  });
  return best;
}

}  // namespace nie
