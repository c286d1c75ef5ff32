#include "nie/code.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "nie/errors.hpp"

namespace nie {

namespace {

void check_element(const Algebra& s, const Vec& v) {
  if (v.size() != s.n()) {
    fail(errc::length_mismatch, "vector has " + std::to_string(v.size()) +
                                    " coordinates, code length is " +
                                    std::to_string(s.n()));
  }
  const elem_t size = s.coeff_ring()->size();
  for (elem_t c : v) {
    if (c >= size) {
      fail(errc::ring_mismatch, "coordinate " + std::to_string(c) +
                                    " is not an element of " +
                                    s.coeff_ring()->spec_string());
    }
  }
}

std::size_t vec_weight(const Vec& v) {
  std::size_t w = 0;
  for (elem_t c : v) w += (c != 0);
  return w;
}

/// T_i = min over basis rows of valuation <= i of the trailing degree of the
/// row's exact gamma^val quotient, read in the residue field; n when no row
/// qualifies. Valid because every entry of a row has valuation >= the pivot
/// valuation, so the quotient is exact and its residue generates the row's
/// torsion contribution.
std::vector<std::size_t> torsion_degrees_of(const Algebra& s,
                                            const EchelonModule& basis) {
  const ChainRing& R = *s.coeff_ring();
  const unsigned e = R.e();
  const std::size_t n = s.n();
  std::vector<std::size_t> tors(e, n);
  for (const EchelonRow& row : basis.rows()) {
    std::size_t trail = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (R.residue(gamma_shift_down(R, row.v[i], row.val)) != 0) {
        trail = i;
        break;
      }
    }
    assert(trail < n);  // the pivot entry divides down to a unit
    for (unsigned i = row.val; i < e; ++i) tors[i] = std::min(tors[i], trail);
  }
  return tors;
}

std::vector<Vec> representation_of(const Code& c);

}  // namespace

Code::Code(Alg alg, std::vector<Vec> gens, EchelonModule basis)
    : alg_(std::move(alg)), gens_(std::move(gens)), basis_(std::move(basis)) {
  if (alg_->nie()) {
    tors_ = torsion_degrees_of(*alg_, basis_);
    // Both cardinality formulas count |C|; a mismatch means a broken basis.
    BigInt by_torsion = 1;
    std::size_t total = 0;
    for (std::size_t t : tors_) total += alg_->n() - t;
    by_torsion = big_pow(alg_->coeff_ring()->q(), total);
    if (by_torsion != basis_.cardinality()) {
      throw std::logic_error("torsion degrees disagree with the basis size");
    }
  }
}

Code Code::from_generators(Alg alg, std::vector<Vec> gens) {
  if (!alg) fail(errc::bad_parameters, "null algebra");
  std::vector<Vec> kept;
  for (const Vec& g : gens) {
    check_element(*alg, g);
    if (!vec_is_zero(g)) kept.push_back(g);
  }
  // The R-span of {x^k g : 0 <= k < n} is already an ideal: multiplying the
  // last shift by x wraps around to lambda * g, which the span contains.
  std::vector<Vec> rows;
  rows.reserve(kept.size() * alg->n());
  for (const Vec& g : kept) {
    Vec v = g;
    for (std::size_t k = 0; k < alg->n(); ++k) {
      rows.push_back(v);
      v = alg->mul_x(v);
    }
  }
  EchelonModule basis =
      EchelonModule::span(alg->coeff_ring(), alg->n(), rows);
  // Ideal-closure tripwire: every basis row shifts back into the module.
  for (const EchelonRow& row : basis.rows()) {
    if (!basis.contains(alg->mul_x(row.v))) {
      throw std::logic_error("span is not closed under the constacyclic shift");
    }
  }
  return Code(std::move(alg), std::move(kept), std::move(basis));
}

Code Code::zero_code(Alg alg) { return from_generators(std::move(alg), {}); }

Code Code::full_code(Alg alg) {
  Vec one = alg->one();
  return from_generators(std::move(alg), {std::move(one)});
}

Code Code::sum(const Code& a, const Code& b) {
  a.alg_->check_same(*b.alg_);
  std::vector<Vec> gens;
  for (const EchelonRow& row : a.basis_.rows()) gens.push_back(row.v);
  for (const EchelonRow& row : b.basis_.rows()) gens.push_back(row.v);
  return from_generators(a.alg_, std::move(gens));
}

bool Code::is_full() const { return cardinality() == alg_->size(); }

bool Code::contains(const Vec& v) const {
  check_element(*alg_, v);
  return basis_.contains(v);
}

bool Code::same_code(const Code& o) const {
  alg_->check_same(*o.alg_);
  return basis_.same_module(o.basis_);
}

BigInt Code::cardinality() const {
  // The torsion formula and the pivot product agree (checked at
  // construction); the pivot product also covers invertible lambda.
  return basis_.cardinality();
}

const std::vector<std::size_t>& Code::torsional_degrees() const {
  if (!alg_->nie()) {
    fail(errc::not_nie, "torsion codes need a non-invertible shift constant");
  }
  return tors_;
}

TorsionCode Code::torsion_code(unsigned i) const {
  const auto& tors = torsional_degrees();
  if (i >= tors.size()) {
    fail(errc::index_out_of_range,
         "torsion index " + std::to_string(i) + " out of range [0, " +
             std::to_string(tors.size()) + ")");
  }
  return TorsionCode{tors[i], alg_->coeff_ring()->residue_field()};
}

bool Code::torsion_commutes(unsigned j, unsigned i) const {
  const auto& tors = torsional_degrees();
  if (j < 1 || j > tors.size() || i >= j) {
    fail(errc::index_out_of_range,
         "need 0 <= i < j <= e, got i=" + std::to_string(i) +
             ", j=" + std::to_string(j));
  }
  Code cq = project_to_quotient(j);
  return tors[i] == cq.torsional_degrees()[i];
}

Code Code::project_to_quotient(unsigned j) const {
  auto q = alg_->quotient(j);
  std::vector<Vec> gens;
  gens.reserve(basis_.rows().size());
  for (const EchelonRow& row : basis_.rows()) gens.push_back(q.project(row.v));
  return from_generators(q.alg, std::move(gens));
}

const std::vector<Vec>& Code::canonical_representation() const {
  if (!alg_->nie()) {
    fail(errc::not_nie,
         "the representation tuple needs a non-invertible shift constant");
  }
  std::call_once(repr_->once, [&] { repr_->value = representation_of(*this); });
  return repr_->value;
}

std::vector<Vec> Code::enumerate() const { return basis_.enumerate(); }

std::size_t Code::min_distance() const {
  const std::size_t n = alg_->n();
  if (is_zero()) return n + 1;
  if (cardinality() > BigInt(enumeration_cap())) {
    fail(errc::too_large, "minimum distance needs codeword enumeration");
  }
  std::size_t best = n;
  basis_.for_each([&](const Vec& v) {
    std::size_t w = vec_weight(v);
    if (w > 0 && w < best) best = w;
    return best > 1;
  });
  return best;
}

Vec Code::weight_one_witness() const {
  if (!alg_->nie()) {
    fail(errc::not_nie, "the weight-one recipe needs a nilpotent shift");
  }
  if (is_zero()) fail(errc::zero_code, "the zero code has no codewords");
  const ChainRing& R = *alg_->coeff_ring();
  const std::size_t n = alg_->n();
  Vec c = basis_.rows()[0].v;
  if (alg_->lambda() != 0) {
    // Scale a minimal-valuation codeword into the top gamma layer; only the
    // minimal-valuation coordinates survive.
    unsigned l = R.e();
    for (elem_t x : c)
      if (x != 0) l = std::min(l, R.gamma_val(x));
    c = vec_scaled(R, R.gamma_pow(R.e() - 1 - l), c);
  }
  std::size_t t = 0;
  while (t < n && c[t] == 0) ++t;
  assert(t < n);
  // Shifting n-1-t times parks coordinate t at the end; every wrapped
  // coordinate picks up a factor lambda and dies in the top layer.
  for (std::size_t k = 0; k + t + 1 < n; ++k) c = alg_->mul_x(c);
  if (vec_weight(c) != 1 || !basis_.contains(c)) {
    throw std::logic_error("weight-one recipe failed");
  }
  return c;
}

namespace {

/// The inductive construction behind the representation tuple: recurse on
/// mu_{e-1}(C), lift, fix the top gamma layer by the unique Teichmuller
/// correction supported below T_{e-1}, then cancel the remaining top-layer
/// support at degrees >= T_{e-1} with a multiple of gamma^{e-1} x^{T_{e-1}}.
std::vector<Vec> representation_of(const Code& c) {
  const Alg& s = c.algebra();
  const ChainRing& R = *s->coeff_ring();
  const unsigned e = R.e();
  const std::size_t n = s->n();
  std::vector<Vec> f(e, Vec(n, 0));
  if (c.is_zero()) return f;
  const auto& tors = c.torsional_degrees();
  if (e == 1) {
    assert(tors[0] < n);
    f[0][tors[0]] = 1;
    return f;
  }
  const std::size_t te = tors[e - 1];
  assert(te < n);  // a nonzero code has a nonzero top torsion
  f[e - 1][te] = R.gamma_pow(e - 1);
  if (!c.contains(f[e - 1])) {
    throw std::logic_error("top torsion monomial escaped the code");
  }

  Code cq = c.project_to_quotient(e - 1);
  const std::vector<Vec> sub = cq.canonical_representation();
  const auto& teich = R.teichmuller();
  const elem_t gtop = R.gamma_pow(e - 1);

  for (unsigned i = 0; i + 1 < e; ++i) {
    if (vec_is_zero(sub[i])) continue;  // Tor_i(C) = 0, f_i = 0
    Vec w = s->lift_from_quotient(*cq.algebra(), sub[i]);
    // Exactly one Teichmuller correction z supported below T_{e-1} puts
    // w + gamma^{e-1} z into C: solutions form a coset of Tor_{e-1} and the
    // truncation below its degree is a bijection onto representatives.
    std::vector<std::size_t> dig(te, 0);
    bool found = false;
    Vec fi;
    while (true) {
      Vec cand = w;
      for (std::size_t k = 0; k < te; ++k) {
        if (dig[k] != 0) {
          cand[k] = R.add(cand[k], R.mul(gtop, teich[dig[k]]));
        }
      }
      if (c.contains(cand)) {
        fi = std::move(cand);
        found = true;
        break;
      }
      std::size_t k = 0;
      while (k < te && ++dig[k] == R.q()) dig[k++] = 0;
      if (k == te) break;
    }
    if (!found) throw std::logic_error("no top-layer correction found");

    // Clear top-layer support at degrees >= T_{e-1}: those digits match a
    // Teichmuller multiple of f_{e-1} exactly, with no wraparound.
    Vec ht(n, 0);
    bool any = false;
    for (std::size_t k = te; k < n; ++k) {
      elem_t d = R.gamma_digits(fi[k])[e - 1];
      if (d != 0) {
        ht[k - te] = d;
        any = true;
      }
    }
    if (any) fi = s->sub(fi, s->mul(ht, f[e - 1]));
    f[i] = std::move(fi);
  }
  return f;
}

}  // namespace

bool canonical_shape_ok(const Algebra& s, const std::vector<std::size_t>& tors,
                        unsigned i, const Vec& fi) {
  const std::size_t n = s.n();
  if (i >= tors.size()) return false;
  if (tors[i] == n) return vec_is_zero(fi);
  auto layers = s.gamma_x_decompose(fi);
  for (unsigned j = 0; j < i; ++j) {
    if (!vec_is_zero(layers[j].h)) return false;
  }
  // Layer i must be the bare monomial x^{T_i}.
  if (vec_is_zero(layers[i].h) || layers[i].t != tors[i]) return false;
  if (layers[i].h[0] != 1) return false;
  for (std::size_t k = 1; k < n; ++k) {
    if (layers[i].h[k] != 0) return false;
  }
  for (unsigned j = i + 1; j < layers.size(); ++j) {
    if (vec_is_zero(layers[j].h)) continue;
    std::size_t deg = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (layers[j].h[k] != 0) deg = k;
    }
    if (layers[j].t + deg >= tors[j]) return false;
  }
  return true;
}

}  // namespace nie
