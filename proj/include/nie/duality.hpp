#pragma once

#include <optional>
#include <vector>

#include "nie/code.hpp"

namespace nie {

/// Coordinate reversal i -> n-1-i; an involution on index vectors.
struct ReversalPerm {
  std::size_t n = 0;

  std::size_t operator()(std::size_t i) const;
  Vec apply(const Vec& v) const;
};

/// Everything the dual-side analysis of a code produces in one pass.
struct DualReport {
  /// A(C) = {a : c(x) a(x) = 0 for all c in C}, an ideal of the same algebra.
  Code annihilator;
  /// C-perp as a plain linear code over R: the coordinate reversal of the
  /// annihilator. Usually not an ideal of any quotient algebra.
  EchelonModule dual;
  /// W_i = n - T_{e-1-i}; always equals the torsional degrees of A(C).
  std::vector<std::size_t> dual_torsion_profile;
  /// Engaged with i exactly when C = gamma^i R^n, in which case the dual is
  /// constacyclic for every shift constant; otherwise it is constacyclic for
  /// none of them.
  std::optional<unsigned> is_constacyclic_for;
};

/// Outcome of the dual-constacyclicity test.
struct ConstacyclicVerdict {
  /// Engaged: C = gamma^power R^n and the dual is gamma^{e-power} R^n.
  std::optional<unsigned> power;
  /// Disengaged: the lexicographically first dual codeword whose shift by
  /// every candidate constant lands outside the dual.
  Vec witness;
};

/// The annihilator ideal A(C). Requires a non-invertible shift constant.
Code annihilator(const Code& c);

/// Annihilator, reversed dual, torsion profile, and constacyclicity marker.
DualReport dual(const Code& c);

/// W_i = n - T_{e-1-i}, cross-checked against the annihilator's own
/// torsional degrees.
std::vector<std::size_t> dual_torsion_profile(const Code& c);

/// Decides whether the dual is itself a constacyclic code for some (then
/// every) shift constant; produces a constructive witness otherwise.
ConstacyclicVerdict is_dual_constacyclic(const Code& c);

/// Brute-force minimum distance of the dual of a proper ideal (always 1).
std::size_t dual_min_distance_check(const Code& c);

}  // namespace nie
