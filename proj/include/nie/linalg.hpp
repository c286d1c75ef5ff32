#pragma once

#include <functional>
#include <span>
#include <vector>

#include "nie/bigint.hpp"
#include "nie/chain_ring.hpp"

namespace nie {

using Vec = std::vector<elem_t>;

bool vec_is_zero(const Vec& v);
Vec vec_scaled(const ChainRing& r, elem_t c, const Vec& v);
/// target -= c * src, componentwise.
void vec_sub_scaled(const ChainRing& r, Vec& target, elem_t c, const Vec& src);
/// Drops the k lowest gamma digits of a: sum_{i >= k} d_i gamma^{i-k}.
/// Exact division by gamma^k whenever gamma_val(a) >= k.
elem_t gamma_shift_down(const ChainRing& r, elem_t a, unsigned k);

/// One row of a gamma-echelon basis. The pivot entry v[col] is exactly
/// gamma^val and every entry of v has valuation >= val, so v = gamma^val * w
/// for an exactly recoverable w (gamma_shift_down).
struct EchelonRow {
  Vec v;
  std::size_t col = 0;
  unsigned val = 0;
};

/// A finitely generated R-submodule of R^n held in gamma-echelon normal form
/// with globally minimal-valuation pivots: at most one pivot per column,
/// pivot entries normalized to exact gamma powers, every entry of a row of
/// valuation at least the row's pivot valuation, later rows exactly zero at
/// earlier pivot columns, and all other entries at a pivot column reduced
/// below that pivot's gamma power. Reduction against the rows in stored
/// (valuation, pivot column) order decides membership exactly.
class EchelonModule {
 public:
  /// The zero submodule of R^n.
  EchelonModule(Ring r, std::size_t n);
  static EchelonModule span(Ring r, std::size_t n, std::span<const Vec> gens);

  const Ring& ring() const { return ring_; }
  std::size_t length() const { return n_; }
  const std::vector<EchelonRow>& rows() const { return rows_; }
  bool is_zero_module() const { return rows_.empty(); }

  /// Residual of v after echelon reduction; zero iff v is in the module.
  Vec reduce(Vec v) const;
  bool contains(std::span<const elem_t> v) const;
  bool contains_module(const EchelonModule& o) const;
  bool same_module(const EchelonModule& o) const;

  /// Exact element count: prod over pivots of q^{e - val}.
  BigInt cardinality() const;

  EchelonModule joined(std::span<const Vec> extra_gens) const;
  EchelonModule joined(const EchelonModule& o) const;

  /// Visits every element exactly once in a fixed deterministic order
  /// (starting with the zero vector); stop early by returning false.
  void for_each(const std::function<bool(const Vec&)>& f) const;
  /// Materializes all elements; throws too_large beyond the enumeration cap.
  std::vector<Vec> enumerate() const;

 private:
  Ring ring_;
  std::size_t n_ = 0;
  std::vector<EchelonRow> rows_;
  std::vector<std::size_t> row_by_col_;  // column -> index into rows_, npos if none

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  void index_rows();
};

/// Generators of the left kernel {x in R^m : x A = 0} of an m x N matrix,
/// computed by gamma-power diagonalization with tracked row operations.
std::vector<Vec> left_kernel(const Ring& r, std::vector<Vec> a);

}  // namespace nie
