#include "nie/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace nie {

bool vec_is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](elem_t x) { return x == 0; });
}

Vec vec_scaled(const ChainRing& r, elem_t c, const Vec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = r.mul(c, v[i]);
  return out;
}

void vec_sub_scaled(const ChainRing& r, Vec& target, elem_t c, const Vec& src) {
  for (std::size_t i = 0; i < target.size(); ++i)
    target[i] = r.sub(target[i], r.mul(c, src[i]));
}

elem_t gamma_shift_down(const ChainRing& r, elem_t a, unsigned k) {
  if (k == 0) return a;
  if (k >= r.e()) return 0;
  auto ds = r.gamma_digits(a);
  return r.from_gamma_digits(std::span<const elem_t>(ds).subspan(k));
}

EchelonModule::EchelonModule(Ring r, std::size_t n) : ring_(std::move(r)), n_(n) {
  index_rows();
}

void EchelonModule::index_rows() {
  row_by_col_.assign(n_, npos);
  for (std::size_t i = 0; i < rows_.size(); ++i) row_by_col_[rows_[i].col] = i;
}

EchelonModule EchelonModule::span(Ring r, std::size_t n, std::span<const Vec> gens) {
  const ChainRing& R = *r;
  const unsigned e = R.e();

  std::vector<Vec> work;
  for (const Vec& g : gens) {
    if (g.size() != n)
      fail(errc::length_mismatch, "generator has length " + std::to_string(g.size()) +
                                      ", expected " + std::to_string(n));
    if (!vec_is_zero(g)) work.push_back(g);
  }

  std::vector<EchelonRow> out;
  while (!work.empty()) {
    // Global minimal-valuation pivot: the chosen entry is minimal over the
    // whole remaining matrix, so every entry of the pivot row has valuation
    // >= the pivot valuation. Row-local torsion extraction and the exactness
    // of reduction both rest on that property.
    std::size_t bi = work.size(), bc = n;
    unsigned bv = e;
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t i = 0; i < work.size(); ++i)
        if (work[i][c] != 0) {
          unsigned v = R.gamma_val(work[i][c]);
          if (v < bv) {
            bv = v;
            bi = i;
            bc = c;
          }
        }
    assert(bi < work.size());

    Vec p = std::move(work[bi]);
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(bi));
    elem_t u = R.unit_part(p[bc]);
    if (u != 1) {
      elem_t ui = R.invert(u);
      for (elem_t& x : p) x = R.mul(ui, x);
    }
    // Every work entry at the pivot column has valuation >= bv, so the
    // elimination is exact: the column zeroes out across all of work.
    for (Vec& w : work)
      if (w[bc] != 0) vec_sub_scaled(R, w, gamma_shift_down(R, w[bc], bv), p);
    std::erase_if(work, vec_is_zero);
    out.push_back(EchelonRow{std::move(p), bc, bv});
  }

  // Pivots arrive in (valuation, column) lexicographic order already; the
  // sort documents and enforces the stored-order invariant.
  std::stable_sort(out.begin(), out.end(), [](const EchelonRow& a, const EchelonRow& b) {
    if (a.val != b.val) return a.val < b.val;
    return a.col < b.col;
  });

  // Back-substitution: clear the digits >= piv.val that a row carries at
  // another pivot's column. Rows processed later are exactly zero at earlier
  // pivot columns, so passes never disturb finished entries.
  for (EchelonRow& row : out)
    for (const EchelonRow& piv : out) {
      if (&piv == &row) continue;
      elem_t t = gamma_shift_down(R, row.v[piv.col], piv.val);
      if (t != 0) vec_sub_scaled(R, row.v, t, piv.v);
    }

  EchelonModule m(std::move(r), n);
  m.rows_ = std::move(out);
  m.index_rows();
  return m;
}

Vec EchelonModule::reduce(Vec v) const {
  if (v.size() != n_)
    fail(errc::length_mismatch, "vector has length " + std::to_string(v.size()) +
                                    ", expected " + std::to_string(n_));
  // One pass in stored (valuation, column) order clears the digits >= val at
  // every pivot column; the result is the unique coset representative with
  // truncated pivot entries, so it vanishes exactly on module members.
  const ChainRing& R = *ring_;
  for (const EchelonRow& p : rows_) {
    elem_t t = gamma_shift_down(R, v[p.col], p.val);
    if (t != 0) vec_sub_scaled(R, v, t, p.v);
  }
  return v;
}

bool EchelonModule::contains(std::span<const elem_t> v) const {
  return vec_is_zero(reduce(Vec(v.begin(), v.end())));
}

bool EchelonModule::contains_module(const EchelonModule& o) const {
  if (!ring_->same_ring(*o.ring_) || n_ != o.n_)
    fail(errc::length_mismatch, "modules live in different ambient spaces");
  for (const EchelonRow& row : o.rows_)
    if (!contains(row.v)) return false;
  return true;
}

bool EchelonModule::same_module(const EchelonModule& o) const {
  return cardinality() == o.cardinality() && contains_module(o);
}

BigInt EchelonModule::cardinality() const {
  BigInt total = 1;
  for (const EchelonRow& row : rows_) total *= big_pow(ring_->q(), ring_->e() - row.val);
  return total;
}

EchelonModule EchelonModule::joined(std::span<const Vec> extra_gens) const {
  std::vector<Vec> gens;
  gens.reserve(rows_.size() + extra_gens.size());
  for (const EchelonRow& row : rows_) gens.push_back(row.v);
  for (const Vec& g : extra_gens) gens.push_back(g);
  return span(ring_, n_, gens);
}

EchelonModule EchelonModule::joined(const EchelonModule& o) const {
  if (!ring_->same_ring(*o.ring_) || n_ != o.n_)
    fail(errc::length_mismatch, "modules live in different ambient spaces");
  std::vector<Vec> gens;
  for (const EchelonRow& row : o.rows_) gens.push_back(row.v);
  return joined(gens);
}

void EchelonModule::for_each(const std::function<bool(const Vec&)>& f) const {
  const ChainRing& R = *ring_;
  const unsigned e = R.e();
  const auto& teich = R.teichmuller();
  const std::size_t m = rows_.size();

  // Coefficient of row k ranges over sums of gamma digits below e - val_k;
  // distinct digit tuples give distinct module elements, so an odometer over
  // all digit tuples visits each element exactly once.
  std::vector<std::vector<std::size_t>> dig(m);
  for (std::size_t k = 0; k < m; ++k) dig[k].assign(e - rows_[k].val, 0);

  std::vector<Vec> partial(m + 1, Vec(n_, 0));
  auto rebuild_from = [&](std::size_t k) {
    for (std::size_t j = k; j < m; ++j) {
      elem_t c = 0;
      for (std::size_t i = 0; i < dig[j].size(); ++i)
        c = R.add(c, R.mul(teich[dig[j][i]], R.gamma_pow(static_cast<unsigned>(i))));
      partial[j + 1] = partial[j];
      if (c != 0)
        for (std::size_t col = 0; col < n_; ++col)
          partial[j + 1][col] = R.add(partial[j + 1][col], R.mul(c, rows_[j].v[col]));
    }
  };
  rebuild_from(0);

  while (true) {
    if (!f(partial[m])) return;
    std::size_t k = m;
    bool done = true;
    while (k-- > 0) {
      bool carried = true;
      for (std::size_t i = 0; i < dig[k].size() && carried; ++i) {
        if (++dig[k][i] < R.q())
          carried = false;
        else
          dig[k][i] = 0;
      }
      if (!carried) {
        rebuild_from(k);
        done = false;
        break;
      }
    }
    if (done) return;
  }
}

std::vector<Vec> EchelonModule::enumerate() const {
  if (cardinality() > BigInt(enumeration_cap()))
    fail(errc::too_large, "module enumeration exceeds the enumeration cap");
  std::vector<Vec> out;
  for_each([&](const Vec& v) {
    out.push_back(v);
    return true;
  });
  return out;
}

std::vector<Vec> left_kernel(const Ring& r, std::vector<Vec> a) {
  const ChainRing& R = *r;
  const unsigned e = R.e();
  const std::size_t m = a.size();
  const std::size_t N = m ? a[0].size() : 0;
  for (const Vec& row : a)
    if (row.size() != N) fail(errc::length_mismatch, "ragged matrix");

  // Row operations are mirrored on E so that E * A_original = A throughout;
  // column operations leave the left kernel untouched.
  std::vector<Vec> E(m, Vec(m, 0));
  for (std::size_t i = 0; i < m; ++i) E[i][i] = 1;

  std::vector<unsigned> vals;
  for (std::size_t k = 0; k < std::min(m, N); ++k) {
    std::size_t bi = m, bj = N;
    unsigned bv = e;
    for (std::size_t i = k; i < m; ++i)
      for (std::size_t j = k; j < N; ++j)
        if (a[i][j] != 0) {
          unsigned v = R.gamma_val(a[i][j]);
          if (v < bv) {
            bv = v;
            bi = i;
            bj = j;
          }
        }
    if (bi == m) break;
    std::swap(a[k], a[bi]);
    std::swap(E[k], E[bi]);
    if (bj != k)
      for (std::size_t i = 0; i < m; ++i) std::swap(a[i][k], a[i][bj]);

    elem_t u = R.unit_part(a[k][k]);
    if (u != 1) {
      elem_t ui = R.invert(u);
      for (elem_t& x : a[k]) x = R.mul(ui, x);
      for (elem_t& x : E[k]) x = R.mul(ui, x);
    }
    // Every remaining entry has valuation >= bv, so elimination is exact.
    for (std::size_t i = k + 1; i < m; ++i)
      if (a[i][k] != 0) {
        elem_t t = gamma_shift_down(R, a[i][k], bv);
        vec_sub_scaled(R, a[i], t, a[k]);
        vec_sub_scaled(R, E[i], t, E[k]);
      }
    for (std::size_t j = k + 1; j < N; ++j)
      if (a[k][j] != 0) {
        elem_t t = gamma_shift_down(R, a[k][j], bv);
        for (std::size_t i = 0; i < m; ++i) a[i][j] = R.sub(a[i][j], R.mul(t, a[i][k]));
      }
    vals.push_back(bv);
  }

  // Left kernel of the diagonal form: gamma^{e-v} at pivot rows with v > 0,
  // free at zero rows; pulled back through the tracked row operations.
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < m; ++i) {
    if (i < vals.size()) {
      if (vals[i] == 0) continue;
      gens.push_back(vec_scaled(R, R.gamma_pow(e - vals[i]), E[i]));
    } else {
      gens.push_back(E[i]);
    }
  }
  return gens;
}

}  // namespace nie
