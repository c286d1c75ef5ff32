#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nie/code.hpp"

namespace nie {

class PirRing;
using Pir = std::shared_ptr<const PirRing>;

/// A finite principal ideal ring, represented directly as a product of chain
/// rings. Elements are tuples with componentwise arithmetic, so the
/// decomposition map is the identity on the representation.
class PirRing {
 public:
  static Pir make(std::vector<Ring> components);

  std::size_t s() const { return comps_.size(); }
  /// Component index t is 1-based throughout the product-ring interface.
  const Ring& component(std::size_t t) const;
  const std::vector<Ring>& components() const { return comps_; }
  BigInt size() const;
  bool same_pir(const PirRing& o) const;
  /// "Z(4) x F(5)" style.
  std::string spec_string() const;

 private:
  struct Key {};

 public:
  PirRing(Key, std::vector<Ring> comps) : comps_(std::move(comps)) {}

 private:
  std::vector<Ring> comps_;
};

Pir make_pir(std::vector<Ring> components);
/// Parses "Z(4) x F(5) x GR(4,2;mod=1,1,1)".
Pir parse_pir(const std::string& text);

/// A length-n word over the product ring: one length-n coefficient vector
/// per component.
using PirWord = std::vector<Vec>;

/// Hamming weight over the product ring: a coordinate counts when any
/// component is nonzero there.
std::size_t pir_weight(const PirWord& w);

/// A constacyclic code over a product ring, stored through its component
/// ideals: a word belongs to the code exactly when every component
/// projection belongs to the matching component code.
class PirCode {
 public:
  static PirCode crt(Pir ring, std::size_t n, std::vector<elem_t> lambdas,
                     std::vector<Code> components);

  const Pir& pir() const { return ring_; }
  std::size_t length() const { return n_; }
  const std::vector<elem_t>& lambdas() const { return lambdas_; }
  const std::vector<Code>& components() const { return comps_; }
  /// The t-th component code, 1 <= t <= s.
  const Code& project(std::size_t t) const;

  BigInt cardinality() const;
  bool is_zero() const;
  bool is_full() const;
  bool contains(const PirWord& w) const;
  std::vector<PirWord> enumerate() const;

 private:
  PirCode(Pir ring, std::size_t n, std::vector<elem_t> lambdas,
          std::vector<Code> comps);

  Pir ring_;
  std::size_t n_ = 1;
  std::vector<elem_t> lambdas_;
  std::vector<Code> comps_;
};

/// min over the nonzero component distances (the zero code's n+1 convention
/// keeps zero components out of the minimum automatically).
std::size_t pir_min_distance(const PirCode& c);

/// A weight-one codeword located inside one component.
struct PirWitness {
  std::size_t component = 0;  // 1-based
  Vec word;
};

/// When some component pairs a non-invertible shift constant with a nonzero
/// component code, the distance is forced to 1; returns the witness, or
/// nothing when no component qualifies.
std::optional<PirWitness> nie_pir_distance_check(const PirCode& c);

/// The [q-1, k, q-k] Reed-Solomon code over F_q, generated by
/// prod_{i=0}^{q-2-k} (x - alpha^i) for the canonical primitive element.
Code rs_component(std::uint64_t q, std::size_t k);

/// The [n, k, n-k+1] MDS cyclic code over GR(p^t, m) for n | p^m - 1,
/// generated from alpha = zeta^{(p^m-1)/n} of multiplicative order n.
Code galois_mds_component(std::uint64_t p, unsigned t, unsigned m,
                          std::size_t n, std::size_t k);

struct OptimalityCertificate {
  std::size_t n = 0;
  BigInt cardinality;
  std::size_t distance = 0;
  /// n + 1 - log_{|ring|}|C|, exact.
  Rational singleton_bound;
  bool optimal = false;
};

struct OptimalResult {
  PirCode code;
  OptimalityCertificate certificate;
};

/// CRT(C0, ..., C0, 0) over s copies of F_q with shift constants
/// (1, ..., 1, 0), C0 the Reed-Solomon component; optimal for 0 < k < min(s, q).
OptimalResult optimal_rs(std::uint64_t q, std::size_t k, std::size_t s);

/// The same construction over s copies of GR(p^t, m) with the MDS component;
/// optimal for 0 < k < min(s, n).
OptimalResult optimal_galois_mds(std::uint64_t p, unsigned t, unsigned m,
                                 std::size_t n, std::size_t k, std::size_t s);

}  // namespace nie
