#include "nie/chain_ring.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cctype>
#include <optional>
#include <sstream>

namespace nie {

namespace {

std::atomic<std::size_t> g_enum_cap{std::size_t{1} << 20};

// Dense op tables are built for rings up to this size; the verify sweeps cap
// rings at 512 elements, so everything hot is table-driven.
constexpr std::uint64_t kTableLimit = 1024;
constexpr std::uint64_t kMaxRingSize = std::uint64_t{1} << 40;
constexpr std::uint64_t kMaxResidueField = std::uint64_t{1} << 22;
constexpr std::uint32_t kNoInverse = 0xFFFFFFFFu;

bool is_prime_u64(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// v = p^k with p prime, k >= 1.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t v) {
  if (v < 2) return std::nullopt;
  std::uint64_t p = v;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) {
      p = d;
      break;
    }
  unsigned k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  if (v != 1) return std::nullopt;
  return std::make_pair(p, k);
}

std::uint64_t ipow_checked(std::uint64_t b, unsigned k, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (b != 0 && r > limit / b) fail(errc::too_large, "ring size exceeds supported range");
    r *= b;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> fs;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) {
      fs.push_back(d);
      while (v % d == 0) v /= d;
    }
  if (v > 1) fs.push_back(v);
  return fs;
}

// ---- dense polynomials over F_p, constant term first ----------------------

using Poly = std::vector<std::uint64_t>;

void ptrim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
  // Fermat; p prime, a != 0 mod p.
  std::uint64_t r = 1, b = a % p, k = p - 2;
  while (k) {
    if (k & 1) r = r * b % p;
    b = b * b % p;
    k >>= 1;
  }
  return r;
}

Poly pmul_mod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  // f monic of degree deg(f) = f.size()-1
  std::size_t m = f.size() - 1;
  for (std::size_t i = c.size(); i-- > m;) {
    std::uint64_t t = c[i] % p;
    if (!t) continue;
    for (std::size_t j = 0; j < m; ++j) c[i - m + j] = (c[i - m + j] + t * (p - f[j] % p)) % p;
    c[i] = 0;
  }
  c.resize(m);
  ptrim(c);
  return c;
}

Poly ppow_p(Poly base, std::uint64_t k, const Poly& f, std::uint64_t p) {
  Poly r{1};
  while (k) {
    if (k & 1) r = pmul_mod(r, base, f, p);
    base = pmul_mod(base, base, f, p);
    k >>= 1;
  }
  return r;
}

Poly pmod(Poly a, const Poly& b, std::uint64_t p) {
  ptrim(a);
  std::size_t db = b.size() - 1;
  std::uint64_t inv = fp_inv(b.back(), p);
  while (a.size() > db) {
    std::uint64_t t = a.back() % p * inv % p;
    std::size_t shift = a.size() - 1 - db;
    if (t)
      for (std::size_t j = 0; j < b.size(); ++j)
        a[shift + j] = (a[shift + j] + t * (p - b[j] % p)) % p;
    a.pop_back();
    ptrim(a);
    if (a.empty()) break;
  }
  return a;
}

Poly pgcd(Poly a, Poly b, std::uint64_t p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    Poly r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin irreducibility test for monic f of degree m over F_p.
bool irreducible_mod_p(const Poly& f, std::uint64_t p) {
  std::size_t m = f.size() - 1;
  if (m == 0) return false;
  if (m == 1) return true;
  // h = x^(p^m) mod f must equal x
  Poly h{0, 1};
  for (std::size_t i = 0; i < m; ++i) h = ppow_p(h, p, f, p);
  Poly x{0, 1};
  if (h != x) return false;
  for (std::uint64_t l : prime_factors(m)) {
    Poly g{0, 1};
    for (std::size_t i = 0; i < m / l; ++i) g = ppow_p(g, p, f, p);
    // gcd(g - x, f) must be 1
    Poly d = g;
    if (d.size() < 2) d.resize(2, 0);
    d[1] = (d[1] + p - 1) % p;
    ptrim(d);
    Poly gc = pgcd(f, d, p);
    if (gc.size() != 1) return false;
  }
  return true;
}

// Smallest (by packed code of the non-leading coefficients) monic basic
// irreducible polynomial of degree m over F_p.
Poly default_irreducible(std::uint64_t p, unsigned m) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < m; ++i) count *= p;
  for (std::uint64_t pack = 0; pack < count; ++pack) {
    Poly f(m + 1, 0);
    std::uint64_t v = pack;
    for (unsigned i = 0; i < m; ++i) {
      f[i] = v % p;
      v /= p;
    }
    f[m] = 1;
    if (irreducible_mod_p(f, p)) return f;
  }
  fail(errc::bad_parameters, "no irreducible polynomial found");  // unreachable
}

}  // namespace

std::size_t enumeration_cap() { return g_enum_cap.load(); }
void set_enumeration_cap(std::size_t cap) { g_enum_cap.store(cap); }

const char* family_name(RingFamily f) {
  switch (f) {
    case RingFamily::int_mod_prime_power: return "int_mod_prime_power";
    case RingFamily::finite_field: return "finite_field";
    case RingFamily::galois_ring: return "galois_ring";
    case RingFamily::eisenstein: return "eisenstein";
  }
  return "unknown";
}

// ---- construction ----------------------------------------------------------

Ring ChainRing::make(const ChainRingSpec& in) {
  ChainRingSpec spec = in;
  // Degenerate extension degrees collapse to the field family so that
  // structurally equal rings compare equal.
  if (spec.family == RingFamily::galois_ring && spec.e == 1) {
    spec.family = RingFamily::finite_field;
    for (auto& c : spec.modulus) c %= spec.p;
  }
  if (spec.family == RingFamily::eisenstein && spec.e == 1)
    spec.family = RingFamily::finite_field;
  return std::make_shared<ChainRing>(Key{}, std::move(spec));
}

Ring ChainRing::make_zpe(std::uint64_t p, unsigned e) {
  return make({RingFamily::int_mod_prime_power, p, e, 1, {}});
}
Ring ChainRing::make_field(std::uint64_t p, unsigned m, std::vector<elem_t> modulus) {
  return make({RingFamily::finite_field, p, 1, m, std::move(modulus)});
}
Ring ChainRing::make_galois(std::uint64_t p, unsigned t, unsigned m,
                            std::vector<elem_t> modulus) {
  return make({RingFamily::galois_ring, p, t, m, std::move(modulus)});
}
Ring ChainRing::make_eisenstein(std::uint64_t p, unsigned m, unsigned e,
                                std::vector<elem_t> modulus) {
  return make({RingFamily::eisenstein, p, e, m, std::move(modulus)});
}

ChainRing::ChainRing(Key, ChainRingSpec spec) : spec_(std::move(spec)) {
  auto& s = spec_;
  if (!is_prime_u64(s.p)) fail(errc::non_prime, "p = " + std::to_string(s.p) + " is not prime");
  if (s.e < 1 || s.m < 1) fail(errc::bad_parameters, "nilpotency and residue degree must be >= 1");

  switch (s.family) {
    case RingFamily::int_mod_prime_power:
      if (s.m != 1) fail(errc::bad_parameters, "Z(p^e) has residue degree 1");
      s.modulus.clear();
      char_ = ipow_checked(s.p, s.e, kMaxRingSize);
      break;
    case RingFamily::finite_field:
      if (s.e != 1) fail(errc::bad_parameters, "a finite field has nilpotency 1");
      char_ = s.p;
      break;
    case RingFamily::galois_ring:
      char_ = ipow_checked(s.p, s.e, kMaxRingSize);
      break;
    case RingFamily::eisenstein:
      char_ = s.p;
      break;
  }
  q_ = ipow_checked(s.p, s.m, kMaxResidueField);
  size_ = ipow_checked(q_, s.e, kMaxRingSize);

  // Normalize / default the modulus.
  if (s.family != RingFamily::int_mod_prime_power) {
    std::uint64_t coeff_mod =
        (s.family == RingFamily::galois_ring) ? char_ : s.p;
    if (s.modulus.empty()) {
      s.modulus = default_irreducible(s.p, s.m);
    } else {
      if (s.modulus.size() != s.m + 1)
        fail(errc::degree_mismatch,
             "modulus must have degree " + std::to_string(s.m) + " (" +
                 std::to_string(s.m + 1) + " coefficients)");
      for (auto& c : s.modulus) c %= coeff_mod;
      if (s.modulus.back() != 1) fail(errc::bad_parameters, "modulus must be monic");
    }
    Poly fbar(s.modulus.begin(), s.modulus.end());
    for (auto& c : fbar) c %= s.p;
    if (!irreducible_mod_p(fbar, s.p))
      fail(errc::reducible_modulus, "modulus is reducible modulo p");
  }

  switch (s.family) {
    case RingFamily::int_mod_prime_power: gamma_ = s.p % size_; break;
    case RingFamily::finite_field: gamma_ = 0; break;
    case RingFamily::galois_ring: gamma_ = s.p; break;
    case RingFamily::eisenstein: gamma_ = q_; break;  // code of u
  }

  if (s.family == RingFamily::eisenstein) {
    fq_ = make_field(s.p, s.m, s.modulus);
  }
  if (s.e >= 2) {
    switch (s.family) {
      case RingFamily::int_mod_prime_power: resfield_ = make_zpe(s.p, 1); break;
      case RingFamily::galois_ring: {
        std::vector<elem_t> mp = s.modulus;
        for (auto& c : mp) c %= s.p;
        resfield_ = make_field(s.p, s.m, std::move(mp));
        break;
      }
      case RingFamily::eisenstein: resfield_ = fq_; break;
      default: break;
    }
  }

  gamma_pows_.resize(s.e);
  gamma_pows_[0] = 1 % size_;
  for (unsigned i = 1; i < s.e; ++i) gamma_pows_[i] = mul_impl(gamma_pows_[i - 1], gamma_);

  build_teichmuller();
  build_tables();
}

// ---- raw family arithmetic -------------------------------------------------

elem_t ChainRing::add_impl(elem_t a, elem_t b) const {
  switch (spec_.family) {
    case RingFamily::int_mod_prime_power: return (a + b) % size_;
    case RingFamily::finite_field:
    case RingFamily::galois_ring: {
      elem_t r = 0, mul = 1;
      for (unsigned i = 0; i < spec_.m; ++i) {
        r += (a % char_ + b % char_) % char_ * mul;
        a /= char_;
        b /= char_;
        mul *= char_;
      }
      return r;
    }
    case RingFamily::eisenstein: {
      elem_t r = 0, mul = 1;
      for (unsigned i = 0; i < spec_.e; ++i) {
        r += fq_->add(a % q_, b % q_) * mul;
        a /= q_;
        b /= q_;
        mul *= q_;
      }
      return r;
    }
  }
  return 0;
}

elem_t ChainRing::neg_impl(elem_t a) const {
  switch (spec_.family) {
    case RingFamily::int_mod_prime_power: return (size_ - a) % size_;
    case RingFamily::finite_field:
    case RingFamily::galois_ring: {
      elem_t r = 0, mul = 1;
      for (unsigned i = 0; i < spec_.m; ++i) {
        r += (char_ - a % char_) % char_ * mul;
        a /= char_;
        mul *= char_;
      }
      return r;
    }
    case RingFamily::eisenstein: {
      elem_t r = 0, mul = 1;
      for (unsigned i = 0; i < spec_.e; ++i) {
        r += fq_->neg(a % q_) * mul;
        a /= q_;
        mul *= q_;
      }
      return r;
    }
  }
  return 0;
}

elem_t ChainRing::mul_impl(elem_t a, elem_t b) const {
  switch (spec_.family) {
    case RingFamily::int_mod_prime_power:
      return static_cast<elem_t>(static_cast<unsigned __int128>(a) * b % size_);
    case RingFamily::finite_field:
    case RingFamily::galois_ring: {
      unsigned m = spec_.m;
      std::uint64_t ca[64], cb[64], cc[128] = {0};
      for (unsigned i = 0; i < m; ++i) {
        ca[i] = a % char_;
        a /= char_;
        cb[i] = b % char_;
        b /= char_;
      }
      for (unsigned i = 0; i < m; ++i)
        if (ca[i])
          for (unsigned j = 0; j < m; ++j) cc[i + j] = (cc[i + j] + ca[i] * cb[j]) % char_;
      // reduce by the monic modulus
      for (unsigned i = 2 * m - 1; i-- > m;) {
        std::uint64_t t = cc[i];
        if (!t) continue;
        for (unsigned j = 0; j < m; ++j)
          cc[i - m + j] = (cc[i - m + j] + t * (char_ - spec_.modulus[j])) % char_;
        cc[i] = 0;
      }
      elem_t r = 0, mul = 1;
      for (unsigned i = 0; i < m; ++i) {
        r += cc[i] * mul;
        mul *= char_;
      }
      return r;
    }
    case RingFamily::eisenstein: {
      unsigned e = spec_.e;
      std::uint64_t ca[64], cb[64], cc[64] = {0};
      for (unsigned i = 0; i < e; ++i) {
        ca[i] = a % q_;
        a /= q_;
        cb[i] = b % q_;
        b /= q_;
      }
      for (unsigned i = 0; i < e; ++i)
        if (ca[i])
          for (unsigned j = 0; i + j < e; ++j)
            cc[i + j] = fq_->add(cc[i + j], fq_->mul(ca[i], cb[j]));
      elem_t r = 0, mul = 1;
      for (unsigned i = 0; i < e; ++i) {
        r += cc[i] * mul;
        mul *= q_;
      }
      return r;
    }
  }
  return 0;
}

elem_t ChainRing::residue_impl(elem_t a) const {
  switch (spec_.family) {
    case RingFamily::int_mod_prime_power: return a % spec_.p;
    case RingFamily::finite_field: return a;
    case RingFamily::galois_ring: {
      elem_t r = 0, mul = 1;
      for (unsigned i = 0; i < spec_.m; ++i) {
        r += a % char_ % spec_.p * mul;
        a /= char_;
        mul *= spec_.p;
      }
      return r;
    }
    case RingFamily::eisenstein: return a % q_;
  }
  return 0;
}

elem_t ChainRing::embed_residue(elem_t r) const {
  switch (spec_.family) {
    case RingFamily::int_mod_prime_power:
    case RingFamily::finite_field: return r;
    case RingFamily::galois_ring: {
      elem_t out = 0, mul = 1;
      for (unsigned i = 0; i < spec_.m; ++i) {
        out += r % spec_.p * mul;
        r /= spec_.p;
        mul *= char_;
      }
      return out;
    }
    case RingFamily::eisenstein: return r;
  }
  return 0;
}

elem_t ChainRing::div_gamma_impl(elem_t a) const {
  switch (spec_.family) {
    case RingFamily::int_mod_prime_power: return a / spec_.p;
    case RingFamily::finite_field: return 0;  // gamma R = 0, only a = 0 arrives
    case RingFamily::galois_ring: {
      elem_t r = 0, mul = 1;
      for (unsigned i = 0; i < spec_.m; ++i) {
        r += a % char_ / spec_.p * mul;
        a /= char_;
        mul *= char_;
      }
      return r;
    }
    case RingFamily::eisenstein: return a / q_;
  }
  return 0;
}

// ---- Teichmuller structure --------------------------------------------------

void ChainRing::build_teichmuller() {
  if (spec_.e == 1) {
    // Smallest-code multiplicative generator of the field itself.
    auto fs = prime_factors(q_ - 1);
    zeta_ = 1;
    for (elem_t a = 1; a < size_; ++a) {
      bool gen = true;
      for (auto l : fs)
        if (pow(a, (q_ - 1) / l) == 1) {
          gen = false;
          break;
        }
      if (gen) {
        zeta_ = a;
        break;
      }
    }
  } else {
    // Frobenius fixpoint of a lift of the residue-field generator: the unique
    // (q-1)-torsion lift.
    elem_t a = embed_residue(resfield_->zeta());
    for (unsigned it = 0; it < 4 * spec_.e + 8; ++it) {
      elem_t b = pow(a, q_);
      if (b == a) break;
      a = b;
    }
    zeta_ = a;
    assert(pow(zeta_, q_) == zeta_);
  }

  teich_.assign(q_, 0);
  elem_t t = 1 % size_;
  for (std::uint64_t i = 1; i < q_; ++i) {
    teich_[i] = t;
    t = mul(t, zeta_);
  }
  assert(t == 1 % size_);  // zeta^{q-1} = 1

  lift_by_residue_.assign(q_, 0);
  std::vector<bool> seen(q_, false);
  for (elem_t u : teich_) {
    elem_t r = residue_impl(u);
    assert(!seen[r]);
    seen[r] = true;
    lift_by_residue_[r] = u;
  }
}

void ChainRing::build_tables() {
  if (size_ > kTableLimit) return;
  std::size_t n = static_cast<std::size_t>(size_);

  std::vector<std::uint32_t> addt(n * n), mult(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      addt[a * n + b] = static_cast<std::uint32_t>(add_impl(a, b));
      mult[a * n + b] = static_cast<std::uint32_t>(mul_impl(a, b));
    }
  add_t_ = std::move(addt);
  mul_t_ = std::move(mult);

  std::vector<std::uint8_t> valt(n);
  std::vector<std::uint32_t> rest(n), upt(n), dgt(n), invt(n, kNoInverse);
  for (std::size_t a = 0; a < n; ++a) {
    rest[a] = static_cast<std::uint32_t>(residue_impl(a));
    auto ds = gamma_digits(a);
    unsigned v = spec_.e;
    for (unsigned i = 0; i < spec_.e; ++i)
      if (ds[i]) {
        v = i;
        break;
      }
    valt[a] = static_cast<std::uint8_t>(v);
    if (a != 0 && v < spec_.e) {
      std::vector<elem_t> shifted(ds.begin() + v, ds.end());
      shifted.resize(spec_.e, 0);
      upt[a] = static_cast<std::uint32_t>(from_gamma_digits(shifted));
    }
    if (v >= 1) dgt[a] = static_cast<std::uint32_t>(div_gamma_impl(a));
  }
  for (std::size_t a = 0; a < n; ++a)
    if (rest[a] != 0) {
      std::uint64_t ord = ipow_checked(q_, spec_.e - 1, kMaxRingSize) * (q_ - 1);
      invt[a] = static_cast<std::uint32_t>(pow(a, ord - 1));
    }
  val_t_ = std::move(valt);
  res_t_ = std::move(rest);
  upart_t_ = std::move(upt);
  divg_t_ = std::move(dgt);
  inv_t_ = std::move(invt);
}

// ---- public element ops -----------------------------------------------------

elem_t ChainRing::add(elem_t a, elem_t b) const {
  if (!add_t_.empty()) return add_t_[a * size_ + b];
  return add_impl(a, b);
}
elem_t ChainRing::sub(elem_t a, elem_t b) const { return add(a, neg(b)); }
elem_t ChainRing::neg(elem_t a) const { return neg_impl(a); }
elem_t ChainRing::mul(elem_t a, elem_t b) const {
  if (!mul_t_.empty()) return mul_t_[a * size_ + b];
  return mul_impl(a, b);
}

elem_t ChainRing::pow(elem_t a, std::uint64_t k) const {
  elem_t r = 1 % size_, b = a;
  while (k) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

bool ChainRing::is_unit(elem_t a) const { return residue(a) != 0; }

elem_t ChainRing::invert(elem_t a) const {
  if (!is_unit(a)) fail(errc::not_a_unit, "element " + std::to_string(a) + " is not a unit");
  if (!inv_t_.empty()) return inv_t_[a];
  std::uint64_t ord = ipow_checked(q_, spec_.e - 1, kMaxRingSize) * (q_ - 1);
  return pow(a, ord - 1);
}

unsigned ChainRing::nilpotency_index(elem_t a) const {
  if (is_unit(a)) fail(errc::bad_parameters, "units have no nilpotency index");
  if (a == 0) return 1;
  unsigned v = gamma_val(a);
  return (spec_.e + v - 1) / v;  // ceil(e / v)
}

elem_t ChainRing::gamma_pow(unsigned l) const {
  if (l >= spec_.e) return 0;
  return gamma_pows_[l];
}

unsigned ChainRing::gamma_val(elem_t a) const {
  if (!val_t_.empty()) return val_t_[a];
  unsigned v = 0;
  elem_t cur = a;
  while (v < spec_.e) {
    if (residue(cur) != 0) return v;
    if (cur == 0) return spec_.e;
    cur = div_gamma_impl(cur);
    ++v;
  }
  return spec_.e;
}

std::vector<elem_t> ChainRing::gamma_digits(elem_t a) const {
  std::vector<elem_t> ds(spec_.e, 0);
  elem_t cur = a;
  for (unsigned i = 0; i < spec_.e; ++i) {
    elem_t d = teich_lift(residue(cur));
    ds[i] = d;
    cur = div_gamma_impl(sub(cur, d));
  }
  return ds;
}

elem_t ChainRing::from_gamma_digits(std::span<const elem_t> digits) const {
  elem_t r = 0;
  for (std::size_t i = 0; i < digits.size() && i < spec_.e; ++i)
    r = add(r, mul(digits[i], gamma_pows_[i]));
  return r;
}

elem_t ChainRing::unit_part(elem_t a) const {
  if (a == 0) fail(errc::bad_parameters, "zero has no unit part");
  if (!upart_t_.empty()) return upart_t_[a];
  unsigned v = gamma_val(a);
  auto ds = gamma_digits(a);
  std::vector<elem_t> shifted(ds.begin() + v, ds.end());
  return from_gamma_digits(shifted);
}

elem_t ChainRing::div_gamma(elem_t a) const {
  if (gamma_val(a) < 1) fail(errc::bad_parameters, "element is not divisible by gamma");
  if (!divg_t_.empty()) return divg_t_[a];
  return div_gamma_impl(a);
}

Ring ChainRing::residue_field() const {
  if (spec_.e == 1) return shared_from_this();
  return resfield_;
}

elem_t ChainRing::residue(elem_t a) const {
  if (!res_t_.empty()) return res_t_[a];
  return residue_impl(a);
}

elem_t ChainRing::teich_lift(elem_t residue_code) const {
  if (residue_code >= q_) fail(errc::index_out_of_range, "residue code out of range");
  return lift_by_residue_[residue_code];
}

// ---- quotients ---------------------------------------------------------------

elem_t ChainRing::Quotient::project(elem_t a) const { return parent->project_to_quotient(j, a); }

elem_t ChainRing::Quotient::phi(elem_t residue_code) const {
  if (residue_code >= ring->q()) fail(errc::index_out_of_range, "residue code out of range");
  return residue_code;
}

ChainRing::Quotient ChainRing::quotient(unsigned j) const {
  if (j < 1 || j > spec_.e)
    fail(errc::index_out_of_range, "quotient index must be in [1, e]");
  std::lock_guard<std::mutex> lk(quot_mu_);
  auto it = quot_cache_.find(j);
  if (it != quot_cache_.end()) return it->second;

  Quotient qt;
  qt.parent = shared_from_this();
  qt.j = j;
  if (j == spec_.e) {
    qt.ring = shared_from_this();
  } else {
    switch (spec_.family) {
      case RingFamily::int_mod_prime_power: qt.ring = make_zpe(spec_.p, j); break;
      case RingFamily::finite_field: qt.ring = shared_from_this(); break;  // j == e == 1
      case RingFamily::galois_ring: {
        std::uint64_t pj = ipow_checked(spec_.p, j, kMaxRingSize);
        std::vector<elem_t> mj = spec_.modulus;
        for (auto& c : mj) c %= pj;
        qt.ring = (j == 1) ? make_field(spec_.p, spec_.m, std::move(mj))
                           : make_galois(spec_.p, j, spec_.m, std::move(mj));
        break;
      }
      case RingFamily::eisenstein:
        qt.ring = (j == 1) ? fq_ : make_eisenstein(spec_.p, spec_.m, j, spec_.modulus);
        break;
    }
  }
  quot_cache_[j] = qt;
  return qt;
}

elem_t ChainRing::project_to_quotient(unsigned j, elem_t a) const {
  if (j < 1 || j > spec_.e)
    fail(errc::index_out_of_range, "quotient index must be in [1, e]");
  if (j == spec_.e) return a;
  switch (spec_.family) {
    case RingFamily::int_mod_prime_power: return a % ipow_checked(spec_.p, j, kMaxRingSize);
    case RingFamily::finite_field: return a;
    case RingFamily::galois_ring: {
      std::uint64_t pj = ipow_checked(spec_.p, j, kMaxRingSize);
      elem_t r = 0, mul = 1;
      elem_t cur = a;
      for (unsigned i = 0; i < spec_.m; ++i) {
        r += cur % char_ % pj * mul;
        cur /= char_;
        mul *= pj;
      }
      return r;
    }
    case RingFamily::eisenstein: return a % ipow_checked(q_, j, kMaxRingSize);
  }
  return 0;
}

elem_t ChainRing::lift_from_quotient(const ChainRing& rj, elem_t a) const {
  if (rj.e() > spec_.e)
    fail(errc::ring_mismatch, "ring is not the expected quotient of this ring");
  Quotient qt = quotient(rj.e());
  if (!qt.ring->same_ring(rj))
    fail(errc::ring_mismatch, "ring is not the expected quotient of this ring");
  auto ds = rj.gamma_digits(a);
  std::vector<elem_t> lifted(spec_.e, 0);
  for (unsigned i = 0; i < rj.e(); ++i) lifted[i] = teich_lift(rj.residue(ds[i]));
  return from_gamma_digits(lifted);
}

std::vector<elem_t> ChainRing::enumerate() const {
  if (size_ > enumeration_cap())
    fail(errc::too_large, "ring enumeration exceeds the enumeration cap");
  std::vector<elem_t> out(static_cast<std::size_t>(size_));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

// ---- formatting and parsing ----------------------------------------------------

std::string ChainRing::to_string(elem_t a) const {
  switch (spec_.family) {
    case RingFamily::int_mod_prime_power: return std::to_string(a);
    case RingFamily::finite_field:
    case RingFamily::galois_ring: {
      if (spec_.m == 1) return std::to_string(a);
      std::ostringstream os;
      bool first = true;
      elem_t cur = a;
      for (unsigned i = 0; i < spec_.m; ++i) {
        elem_t c = cur % char_;
        cur /= char_;
        if (!c) continue;
        if (!first) os << "+";
        if (i == 0)
          os << c;
        else {
          if (c != 1) os << c << "*";
          os << "z";
          if (i > 1) os << "^" << i;
        }
        first = false;
      }
      if (first) os << "0";
      return os.str();
    }
    case RingFamily::eisenstein: {
      std::ostringstream os;
      bool first = true;
      elem_t cur = a;
      for (unsigned i = 0; i < spec_.e; ++i) {
        elem_t c = cur % q_;
        cur /= q_;
        if (!c) continue;
        if (!first) os << "+";
        if (i == 0)
          os << "(" << fq_->to_string(c) << ")";
        else {
          os << "(" << fq_->to_string(c) << ")*u";
          if (i > 1) os << "^" << i;
        }
        first = false;
      }
      if (first) os << "0";
      return os.str();
    }
  }
  return "?";
}

namespace {
std::string mod_suffix(const std::vector<elem_t>& mod) {
  std::string s = ";mod=";
  for (std::size_t i = 0; i < mod.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(mod[i]);
  }
  return s;
}
}  // namespace

std::string ChainRing::spec_string() const {
  switch (spec_.family) {
    case RingFamily::int_mod_prime_power: return "Z(" + std::to_string(char_) + ")";
    case RingFamily::finite_field:
      if (spec_.m == 1) return "F(" + std::to_string(spec_.p) + ")";
      return "F(" + std::to_string(q_) + mod_suffix(spec_.modulus) + ")";
    case RingFamily::galois_ring:
      return "GR(" + std::to_string(char_) + "," + std::to_string(spec_.m) +
             mod_suffix(spec_.modulus) + ")";
    case RingFamily::eisenstein:
      return "FU(" + std::to_string(q_) + "," + std::to_string(spec_.e) +
             mod_suffix(spec_.modulus) + ")";
  }
  return "?";
}

namespace {

std::string strip_ws(const std::string& s) {
  std::string r;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) r += c;
  return r;
}

std::uint64_t parse_u64(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    fail(errc::parse_error, "expected an integer, got '" + s + "'");
  return std::stoull(s);
}

// "8" -> (2,3); "2^3" -> (2,3)
std::pair<std::uint64_t, unsigned> parse_prime_power(const std::string& s) {
  auto caret = s.find('^');
  if (caret != std::string::npos) {
    std::uint64_t p = parse_u64(s.substr(0, caret));
    unsigned k = static_cast<unsigned>(parse_u64(s.substr(caret + 1)));
    if (!is_prime_u64(p)) fail(errc::non_prime, "'" + s + "': base is not prime");
    if (k < 1) fail(errc::bad_parameters, "'" + s + "': exponent must be >= 1");
    return {p, k};
  }
  auto pp = prime_power(parse_u64(s));
  if (!pp) fail(errc::non_prime, "'" + s + "' is not a prime power");
  return *pp;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

}  // namespace

ChainRingSpec parse_ring_spec(const std::string& text) {
  std::string s = strip_ws(text);
  auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    fail(errc::parse_error, "ring spec '" + text + "' is not of the form NAME(...)");
  std::string head = s.substr(0, open);
  std::string body = s.substr(open + 1, s.size() - open - 2);

  auto sections = split(body, ';');
  auto args = split(sections[0], ',');
  std::vector<elem_t> modulus;
  for (std::size_t i = 1; i < sections.size(); ++i) {
    const std::string& sec = sections[i];
    if (sec.rfind("mod=", 0) == 0) {
      for (auto& c : split(sec.substr(4), ',')) modulus.push_back(parse_u64(c));
    } else {
      fail(errc::parse_error, "unknown ring spec section '" + sec + "'");
    }
  }

  ChainRingSpec spec;
  spec.modulus = std::move(modulus);
  if (head == "Z") {
    if (args.size() != 1) fail(errc::parse_error, "Z takes one argument");
    auto [p, e] = parse_prime_power(args[0]);
    spec.family = RingFamily::int_mod_prime_power;
    spec.p = p;
    spec.e = e;
    spec.m = 1;
  } else if (head == "F") {
    if (args.size() != 1) fail(errc::parse_error, "F takes one argument");
    auto [p, m] = parse_prime_power(args[0]);
    spec.family = RingFamily::finite_field;
    spec.p = p;
    spec.e = 1;
    spec.m = m;
  } else if (head == "GR") {
    if (args.size() != 2) fail(errc::parse_error, "GR takes two arguments");
    auto [p, t] = parse_prime_power(args[0]);
    spec.family = RingFamily::galois_ring;
    spec.p = p;
    spec.e = t;
    spec.m = static_cast<unsigned>(parse_u64(args[1]));
  } else if (head == "FU") {
    if (args.size() != 2) fail(errc::parse_error, "FU takes two arguments");
    auto [p, m] = parse_prime_power(args[0]);
    spec.family = RingFamily::eisenstein;
    spec.p = p;
    spec.m = m;
    spec.e = static_cast<unsigned>(parse_u64(args[1]));
  } else {
    fail(errc::parse_error, "unknown ring family '" + head + "'");
  }
  return spec;
}

Ring make_ring(const std::string& spec_text) { return ChainRing::make(parse_ring_spec(spec_text)); }

}  // namespace nie
