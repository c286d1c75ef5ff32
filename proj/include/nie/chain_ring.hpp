#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "nie/errors.hpp"

namespace nie {

/// Canonical element code. Every ring element is a dense code in [0, size()):
///   Z(p^e)        the integer itself
///   F(p^m)        base-p packing of coefficients, constant term least significant
///   GR(p^t,m)     base-p^t packing of coefficients, constant term least significant
///   FU(p^m,e)     base-q packing of the u-coefficients (each an F_q code), u^0 first
using elem_t = std::uint64_t;

class ChainRing;
using Ring = std::shared_ptr<const ChainRing>;

enum class RingFamily {
  int_mod_prime_power,  // Z_{p^e}
  finite_field,         // F_{p^m}
  galois_ring,          // GR(p^t, m)
  eisenstein,           // F_q[u] / <u^e>
};

const char* family_name(RingFamily f);

/// Structural description of a finite chain ring. Two rings are "the same"
/// exactly when their specs compare equal, so separately constructed copies
/// interoperate.
struct ChainRingSpec {
  RingFamily family = RingFamily::int_mod_prime_power;
  std::uint64_t p = 2;  // prime
  unsigned e = 1;       // nilpotency index of gamma (t for Galois rings)
  unsigned m = 1;       // residue degree: residue field is F_{p^m}
  // Monic degree-m polynomial, constant term first, basic irreducible.
  // Empty for the Z_{p^e} family. For the Eisenstein family this is the
  // modulus of the coefficient field F_q.
  std::vector<elem_t> modulus;

  bool operator==(const ChainRingSpec&) const = default;
};

/// Global cap on element/codeword enumeration sizes (default 2^20).
std::size_t enumeration_cap();
void set_enumeration_cap(std::size_t cap);

/// A finite chain ring R with maximal ideal <gamma>, gamma^e = 0, residue
/// field F_q. Immutable after construction; all element operations are pure
/// and work on canonical codes. Lazy caches are internally synchronized.
class ChainRing : public std::enable_shared_from_this<ChainRing> {
 public:
  static Ring make(const ChainRingSpec& spec);
  static Ring make_zpe(std::uint64_t p, unsigned e);
  static Ring make_field(std::uint64_t p, unsigned m, std::vector<elem_t> modulus = {});
  static Ring make_galois(std::uint64_t p, unsigned t, unsigned m,
                          std::vector<elem_t> modulus = {});
  static Ring make_eisenstein(std::uint64_t p, unsigned m, unsigned e,
                              std::vector<elem_t> modulus = {});

  const ChainRingSpec& spec() const { return spec_; }
  RingFamily family() const { return spec_.family; }
  std::uint64_t p() const { return spec_.p; }
  unsigned e() const { return spec_.e; }
  unsigned m() const { return spec_.m; }
  std::uint64_t q() const { return q_; }
  std::uint64_t size() const { return size_; }
  std::uint64_t characteristic() const { return char_; }

  bool same_ring(const ChainRing& o) const { return spec_ == o.spec_; }

  /// gamma, a fixed generator of the maximal ideal (0 in a field).
  elem_t gamma() const { return gamma_; }
  /// gamma^l as an element code (gamma_pow(e) == 0).
  elem_t gamma_pow(unsigned l) const;
  /// zeta, a Teichmuller element of multiplicative order q - 1.
  elem_t zeta() const { return zeta_; }
  /// The Teichmuller set {0, 1, zeta, zeta^2, ..., zeta^{q-2}}, in that order.
  const std::vector<elem_t>& teichmuller() const { return teich_; }

  // --- element arithmetic -------------------------------------------------
  elem_t add(elem_t a, elem_t b) const;
  elem_t sub(elem_t a, elem_t b) const;
  elem_t neg(elem_t a) const;
  elem_t mul(elem_t a, elem_t b) const;
  elem_t pow(elem_t a, std::uint64_t k) const;
  bool is_unit(elem_t a) const;
  /// Multiplicative inverse; throws not_a_unit otherwise.
  elem_t invert(elem_t a) const;
  /// Minimal k >= 1 with a^k = 0 for a non-unit (the index of 0 is 1).
  unsigned nilpotency_index(elem_t a) const;

  // --- gamma-adic structure ------------------------------------------------
  /// Largest l with a in gamma^l R (e for a = 0).
  unsigned gamma_val(elem_t a) const;
  /// The unique digits (a_0, ..., a_{e-1}) in the Teichmuller set with
  /// a = sum a_i gamma^i.
  std::vector<elem_t> gamma_digits(elem_t a) const;
  elem_t from_gamma_digits(std::span<const elem_t> digits) const;
  /// For nonzero a = gamma^v * u: the canonical unit part u.
  elem_t unit_part(elem_t a) const;
  /// Canonical b with gamma * b = a; requires gamma_val(a) >= 1.
  elem_t div_gamma(elem_t a) const;

  // --- residue field and quotients ----------------------------------------
  /// The residue field R / gamma R as a ring (the ring itself when e = 1).
  Ring residue_field() const;
  /// Canonical projection R -> residue field, on codes.
  elem_t residue(elem_t a) const;
  /// Teichmuller lift: the unique (q-1)-torsion preimage of a residue code.
  elem_t teich_lift(elem_t residue_code) const;

  /// The quotient chain ring R_j = R / gamma^j R together with the natural
  /// projection mu_j and the residue-field identification phi_j.
  struct Quotient {
    Ring parent;
    Ring ring;  // R_j
    unsigned j = 0;
    /// mu_j on codes.
    elem_t project(elem_t a) const;
    /// phi_j: residue field of R_j -> residue field of R. The two residue
    /// fields are constructed with identical specs, so this is the identity
    /// on codes; kept explicit because callers reason through it.
    elem_t phi(elem_t residue_code) const;
  };
  Quotient quotient(unsigned j) const;  // 1 <= j <= e
  elem_t project_to_quotient(unsigned j, elem_t a) const;
  /// Digit-wise Teichmuller section of mu_j: lifts an R_j code to R
  /// preserving gamma-adic digits (top digits zero).
  elem_t lift_from_quotient(const ChainRing& rj, elem_t a) const;

  /// All element codes in ascending order; throws too_large above the cap.
  std::vector<elem_t> enumerate() const;

  std::string to_string(elem_t a) const;
  /// Canonical parseable ring spec text, e.g. "GR(4,2;mod=1,1,1)".
  std::string spec_string() const;

 private:
  struct Key {};  // make() only

 public:
  ChainRing(Key, ChainRingSpec spec);

 private:
  elem_t add_impl(elem_t, elem_t) const;
  elem_t neg_impl(elem_t) const;
  elem_t mul_impl(elem_t, elem_t) const;
  elem_t residue_impl(elem_t) const;
  elem_t embed_residue(elem_t) const;  // naive section of residue()
  elem_t div_gamma_impl(elem_t) const;
  void build_teichmuller();
  void build_tables();

  ChainRingSpec spec_;
  std::uint64_t q_ = 0, size_ = 0, char_ = 0;
  elem_t gamma_ = 0, zeta_ = 0;
  std::vector<elem_t> gamma_pows_;  // gamma^0 .. gamma^{e-1}
  std::vector<elem_t> teich_;
  std::vector<elem_t> lift_by_residue_;  // residue code -> Teichmuller rep
  Ring resfield_;                        // null when e == 1
  Ring fq_;                              // coefficient field (eisenstein only)

  // Dense op tables for small rings; empty above the threshold.
  std::vector<std::uint32_t> add_t_, mul_t_, inv_t_;
  std::vector<std::uint8_t> val_t_;
  std::vector<std::uint32_t> res_t_, upart_t_, divg_t_;

  mutable std::mutex quot_mu_;
  mutable std::map<unsigned, Quotient> quot_cache_;
};

/// Element paired with its ring, for API boundaries where the ring is not
/// implied by context. Equality is structural.
struct RingElem {
  Ring ring;
  elem_t code = 0;
  friend bool operator==(const RingElem& a, const RingElem& b) {
    return a.ring && b.ring && a.ring->same_ring(*b.ring) && a.code == b.code;
  }
};

/// Parses ring spec text: Z(8) | F(p^m)[;mod=c0,c1,...] | GR(p^t,m;mod=...)
/// | FU(p^m,e;mod=...). Moduli are constant-term-first integer lists; when
/// omitted, the smallest basic irreducible polynomial (by packed code) is
/// chosen.
ChainRingSpec parse_ring_spec(const std::string& text);
Ring make_ring(const std::string& spec_text);

}  // namespace nie
