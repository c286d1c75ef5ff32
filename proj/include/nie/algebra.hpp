#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nie/bigint.hpp"
#include "nie/chain_ring.hpp"
#include "nie/linalg.hpp"

namespace nie {

class Algebra;
using Alg = std::shared_ptr<const Algebra>;

/// Structure of S = R[x]/<x^n - lambda> for non-invertible lambda, by the
/// shape of the maximal ideal <gamma, x>.
enum class AlgebraClass {
  field_quotient,   // e = 1: S = F_q[x]/<x^n>, ideals <x^i>
  chain_via_gamma,  // n = 1: S = R, chain through gamma
  chain_via_x,      // e > 1, n > 1, lambda in gamma R minus gamma^2 R: chain through x
  local_non_chain,  // e > 1, n > 1, lambda in gamma^2 R: local but not a chain ring
};

const char* algebra_class_name(AlgebraClass c);

struct Classification {
  AlgebraClass kind = AlgebraClass::field_quotient;
  /// Nilpotency index of the maximal ideal generator x in the chain_via_x
  /// case (n * e); 0 otherwise.
  unsigned nilpotency = 0;
};

/// One gamma layer of the x-factored decomposition a = sum_j gamma^j x^t_j
/// h_j(x): h has Teichmuller coefficients and a unit constant term, or is the
/// zero polynomial with t = n - 1.
struct GammaXLayer {
  unsigned t = 0;
  Vec h;
};

/// The quotient algebra S = R[x]/<x^n - lambda>. Elements are dense
/// coefficient vectors of length n (Vec), coefficient of x^i at index i.
/// Immutable; all operations are pure.
class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  static Alg make(Ring ring, std::size_t n, elem_t lambda);

  const Ring& coeff_ring() const { return ring_; }
  std::size_t n() const { return n_; }
  elem_t lambda() const { return lambda_; }
  /// True iff lambda is non-invertible (the NIE case).
  bool nie() const { return nie_; }
  /// e': the nilpotency index of lambda (1 for lambda = 0). NIE only.
  unsigned lambda_nilpotency() const;
  /// N = n * e', the nilpotency index of x in S. NIE only.
  unsigned x_nilpotency() const;
  /// |S| = |R|^n.
  BigInt size() const;

  bool same_algebra(const Algebra& o) const;
  /// Throws algebra_mismatch unless o is structurally the same algebra.
  void check_same(const Algebra& o) const;

  // --- element construction and arithmetic --------------------------------
  Vec zero() const { return Vec(n_, 0); }
  Vec one() const;
  Vec x() const;
  Vec from_constant(elem_t c) const;
  Vec add(Vec a, const Vec& b) const;
  Vec sub(Vec a, const Vec& b) const;
  Vec neg(Vec a) const;
  Vec scaled(elem_t c, const Vec& a) const;
  Vec mul(const Vec& a, const Vec& b) const;
  Vec pow(Vec a, std::uint64_t k) const;
  /// Multiplication by x: the lambda-constacyclic shift
  /// (lambda a_{n-1}, a_0, ..., a_{n-2}).
  Vec mul_x(const Vec& a) const;
  Vec tau(const Vec& a) const { return mul_x(a); }

  /// Unit test by the constant coefficient; valid precisely because x is
  /// nilpotent, hence guarded by the NIE flag.
  bool is_unit(const Vec& a) const;
  /// Geometric-series inverse a0^{-1} (1 + sum A^i), A = -a0^{-1}(a - a0),
  /// with early exit once A^i vanishes. NIE only.
  Vec invert(const Vec& a) const;

  /// Which of the four maximal-ideal shapes S has. NIE only.
  Classification classify() const;

  /// Per-gamma-layer x-factored decomposition; reassembles exactly.
  std::vector<GammaXLayer> gamma_x_decompose(const Vec& a) const;
  Vec gamma_x_reassemble(const std::vector<GammaXLayer>& layers) const;

  /// S_j = R_j[x]/<x^n - mu_j(lambda)> with the coefficientwise projection.
  struct QuotientAlg {
    Alg parent;
    Alg alg;
    unsigned j = 0;
    Vec project(const Vec& a) const;
  };
  QuotientAlg quotient(unsigned j) const;  // 1 <= j <= e
  /// Coefficientwise digit lift; a section of the projection.
  Vec lift_from_quotient(const Algebra& sj, const Vec& a) const;

  /// All |R|^n coefficient vectors, deterministic order (coordinate 0 least
  /// significant); throws too_large beyond the enumeration cap.
  std::vector<Vec> enumerate() const;

  /// Canonical parseable algebra text, e.g. "Z(8);n=2;lambda=2".
  std::string spec_string() const;
  std::string to_string(const Vec& a) const;

 private:
  struct Key {};

 public:
  Algebra(Key, Ring ring, std::size_t n, elem_t lambda);

 private:
  Ring ring_;
  std::size_t n_ = 1;
  elem_t lambda_ = 0;
  bool nie_ = false;
  unsigned eprime_ = 0;  // valid when nie_
};

Alg make_algebra(Ring ring, std::size_t n, elem_t lambda);
/// Parses "<ring-spec>;n=<int>;lambda=<element-code>".
Alg parse_algebra(const std::string& text);
/// Parses "[c0,c1,...]" into a coefficient vector of length alg.n(),
/// zero-padding short inputs.
Vec parse_poly(const Algebra& alg, const std::string& text);
std::string poly_text(const Vec& a);

}  // namespace nie
