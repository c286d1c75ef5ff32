#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "nie/algebra.hpp"
#include "nie/bigint.hpp"
#include "nie/linalg.hpp"

namespace nie {

/// The i-th torsion code Tor_i(C) = {residue(v) : gamma^i v in C}, always of
/// the form <x^degree> inside F_q[x]/<x^n>; degree == n means the zero code.
struct TorsionCode {
  std::size_t degree = 0;
  Ring field;
};

/// A lambda-constacyclic code: an ideal of S = R[x]/<x^n - lambda>, stored as
/// a gamma-echelon R-module basis of codeword vectors. Construction closes
/// the generators under multiplication by x and verifies the closure.
/// Immutable and cheap to copy; the canonical representation is memoized
/// behind a once-flag shared across copies.
class Code {
 public:
  static Code from_generators(Alg alg, std::vector<Vec> gens);
  static Code zero_code(Alg alg);
  static Code full_code(Alg alg);
  /// The sum C + D, again an ideal.
  static Code sum(const Code& a, const Code& b);

  const Alg& algebra() const { return alg_; }
  /// The generators the code was built from (zero generators dropped).
  const std::vector<Vec>& generators() const { return gens_; }
  const EchelonModule& basis() const { return basis_; }
  std::size_t length() const { return alg_->n(); }

  bool is_zero() const { return basis_.is_zero_module(); }
  bool is_full() const;
  bool contains(const Vec& v) const;
  bool same_code(const Code& o) const;

  /// |C|: q^{en - sum T_i} in the non-invertible case, the echelon pivot
  /// product otherwise (both agree with exhaustive counting).
  BigInt cardinality() const;

  /// T_0 >= T_1 >= ... >= T_{e-1}, each in [0, n]. Non-invertible lambda only.
  const std::vector<std::size_t>& torsional_degrees() const;
  TorsionCode torsion_code(unsigned i) const;  // 0 <= i < e
  /// Checks Tor_i(C) == Tor_i(mu_j(C)) as ideals of F_q[x]/<x^n>; the torsion
  /// functor commutes with the quotient map whenever i < j <= e.
  bool torsion_commutes(unsigned j, unsigned i) const;

  /// mu_j(C): the image code over S_j = R_j[x]/<x^n - mu_j(lambda)>.
  Code project_to_quotient(unsigned j) const;  // 1 <= j <= e

  /// The unique generator tuple (f_0, ..., f_{e-1}) with f_i = 0 when
  /// Tor_i(C) = 0 and otherwise f_i = gamma^i x^{T_i} + higher-gamma layers
  /// of x-degree below the matching torsional degree. Non-invertible lambda
  /// only; cached after the first call.
  const std::vector<Vec>& canonical_representation() const;

  std::vector<Vec> enumerate() const;
  /// Brute-force minimum Hamming distance; n + 1 for the zero code.
  std::size_t min_distance() const;
  /// A weight-1 codeword built by the constructive recipe: gamma-scale a
  /// minimal-valuation codeword to the top layer, then shift its lowest
  /// surviving coordinate to the end. Non-invertible lambda, nonzero code.
  Vec weight_one_witness() const;

 private:
  struct ReprMemo {
    std::once_flag once;
    std::vector<Vec> value;
  };

  Code(Alg alg, std::vector<Vec> gens, EchelonModule basis);

  Alg alg_;
  std::vector<Vec> gens_;
  EchelonModule basis_;
  std::vector<std::size_t> tors_;  // filled for non-invertible lambda
  std::shared_ptr<ReprMemo> repr_ = std::make_shared<ReprMemo>();
};

/// Checks the canonical-shape constraints of the representation tuple entry
/// f_i against torsional degrees T: zero when T_i = n; otherwise gamma layers
/// below i vanish, layer i is exactly x^{T_i}, and every layer j > i is zero
/// or tops out strictly below degree T_j.
bool canonical_shape_ok(const Algebra& s, const std::vector<std::size_t>& tors,
                        unsigned i, const Vec& fi);

}  // namespace nie
