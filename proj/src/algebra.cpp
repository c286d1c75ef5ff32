#include "nie/algebra.hpp"

#include <algorithm>
#include <sstream>

#include "nie/errors.hpp"

namespace nie {

namespace {

void check_length(const Algebra& s, const Vec& a) {
  if (a.size() != s.n()) {
    fail(errc::length_mismatch, "polynomial has " + std::to_string(a.size()) +
                                    " coefficients, algebra needs " +
                                    std::to_string(s.n()));
  }
}

/// Splits on ';' at paren depth zero, so ring specs like "GR(4,2;mod=1,1,1)"
/// survive intact.
std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ';' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

std::uint64_t parse_number(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    fail(errc::parse_error, std::string("expected a number for ") + what +
                                ", got \"" + s + "\"");
  }
  if (s.size() > 19) fail(errc::too_large, std::string(what) + " out of range");
  return std::stoull(s);
}

}  // namespace

const char* algebra_class_name(AlgebraClass c) {
  switch (c) {
    case AlgebraClass::field_quotient: return "FieldQuotient";
    case AlgebraClass::chain_via_gamma: return "ChainViaGamma";
    case AlgebraClass::chain_via_x: return "ChainViaX";
    case AlgebraClass::local_non_chain: return "LocalNonChain";
  }
  return "?";
}

Algebra::Algebra(Key, Ring ring, std::size_t n, elem_t lambda)
    : ring_(std::move(ring)), n_(n), lambda_(lambda) {
  nie_ = !ring_->is_unit(lambda_);
  eprime_ = nie_ ? ring_->nilpotency_index(lambda_) : 0;
}

Alg Algebra::make(Ring ring, std::size_t n, elem_t lambda) {
  if (!ring) fail(errc::bad_parameters, "null coefficient ring");
  if (n < 1) fail(errc::bad_parameters, "length n must be at least 1");
  if (lambda >= ring->size()) {
    fail(errc::ring_mismatch,
         "shift constant " + std::to_string(lambda) +
             " is not an element of " + ring->spec_string());
  }
  return std::make_shared<Algebra>(Key{}, std::move(ring), n, lambda);
}

unsigned Algebra::lambda_nilpotency() const {
  if (!nie_) {
    fail(errc::not_nie, "shift constant is a unit; no nilpotency index");
  }
  return eprime_;
}

unsigned Algebra::x_nilpotency() const {
  return static_cast<unsigned>(n_) * lambda_nilpotency();
}

BigInt Algebra::size() const {
  BigInt out = 1;
  for (std::size_t i = 0; i < n_; ++i) out *= BigInt(ring_->size());
  return out;
}

bool Algebra::same_algebra(const Algebra& o) const {
  return ring_->same_ring(*o.ring_) && n_ == o.n_ && lambda_ == o.lambda_;
}

void Algebra::check_same(const Algebra& o) const {
  if (!same_algebra(o)) {
    fail(errc::algebra_mismatch,
         "algebras differ: " + spec_string() + " vs " + o.spec_string());
  }
}

Vec Algebra::one() const {
  Vec v(n_, 0);
  v[0] = 1;
  return v;
}

Vec Algebra::x() const {
  // For n = 1 the class of x is the constant lambda.
  if (n_ == 1) return Vec{lambda_};
  Vec v(n_, 0);
  v[1] = 1;
  return v;
}

Vec Algebra::from_constant(elem_t c) const {
  Vec v(n_, 0);
  v[0] = c;
  return v;
}

Vec Algebra::add(Vec a, const Vec& b) const {
  check_length(*this, a);
  check_length(*this, b);
  for (std::size_t i = 0; i < n_; ++i) a[i] = ring_->add(a[i], b[i]);
  return a;
}

Vec Algebra::sub(Vec a, const Vec& b) const {
  check_length(*this, a);
  check_length(*this, b);
  for (std::size_t i = 0; i < n_; ++i) a[i] = ring_->sub(a[i], b[i]);
  return a;
}

Vec Algebra::neg(Vec a) const {
  check_length(*this, a);
  for (auto& c : a) c = ring_->neg(c);
  return a;
}

Vec Algebra::scaled(elem_t c, const Vec& a) const {
  check_length(*this, a);
  return vec_scaled(*ring_, c, a);
}

Vec Algebra::mul(const Vec& a, const Vec& b) const {
  check_length(*this, a);
  check_length(*this, b);
  // Schoolbook product, then one reduction pass x^n -> lambda.
  std::vector<elem_t> full(2 * n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (b[j] == 0) continue;
      full[i + j] = ring_->add(full[i + j], ring_->mul(a[i], b[j]));
    }
  }
  Vec out(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(n_));
  for (std::size_t k = 2 * n_ - 1; k >= n_; --k) {
    if (full[k] == 0) continue;
    out[k - n_] = ring_->add(out[k - n_], ring_->mul(lambda_, full[k]));
  }
  return out;
}

Vec Algebra::pow(Vec a, std::uint64_t k) const {
  check_length(*this, a);
  Vec out = one();
  while (k > 0) {
    if (k & 1) out = mul(out, a);
    a = mul(a, a);
    k >>= 1;
  }
  return out;
}

Vec Algebra::mul_x(const Vec& a) const {
  check_length(*this, a);
  Vec out(n_, 0);
  out[0] = ring_->mul(lambda_, a[n_ - 1]);
  for (std::size_t i = 1; i < n_; ++i) out[i] = a[i - 1];
  return out;
}

bool Algebra::is_unit(const Vec& a) const {
  check_length(*this, a);
  if (!nie_) {
    fail(errc::not_nie,
         "unit test by the constant coefficient needs a nilpotent x");
  }
  return ring_->is_unit(a[0]);
}

Vec Algebra::invert(const Vec& a) const {
  if (!is_unit(a)) {
    fail(errc::not_a_unit, "constant coefficient is not invertible");
  }
  const elem_t a0_inv = ring_->invert(a[0]);
  // A = -a0^{-1} (a - a0) lies in the ideal <x>, so A^N = 0.
  Vec tail = a;
  tail[0] = 0;
  Vec big_a = scaled(ring_->neg(a0_inv), tail);
  Vec sum = one();
  Vec term = big_a;
  const unsigned cap = x_nilpotency();
  for (unsigned i = 1; i < cap && !vec_is_zero(term); ++i) {
    sum = add(std::move(sum), term);
    term = mul(term, big_a);
  }
  return scaled(a0_inv, sum);
}

Classification Algebra::classify() const {
  if (!nie_) {
    fail(errc::not_nie, "classification covers non-invertible shifts only");
  }
  Classification out;
  const unsigned e = ring_->e();
  if (e == 1) {
    out.kind = AlgebraClass::field_quotient;
  } else if (n_ == 1) {
    out.kind = AlgebraClass::chain_via_gamma;
  } else if (ring_->gamma_val(lambda_) == 1) {
    out.kind = AlgebraClass::chain_via_x;
    out.nilpotency = static_cast<unsigned>(n_) * e;
  } else {
    out.kind = AlgebraClass::local_non_chain;
  }
  return out;
}

std::vector<GammaXLayer> Algebra::gamma_x_decompose(const Vec& a) const {
  check_length(*this, a);
  const unsigned e = ring_->e();
  std::vector<GammaXLayer> layers(e);
  for (unsigned j = 0; j < e; ++j) {
    Vec layer(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      if (a[i] == 0) continue;
      auto digits = ring_->gamma_digits(a[i]);
      if (j < digits.size()) layer[i] = digits[j];
    }
    std::size_t t = 0;
    while (t < n_ && layer[t] == 0) ++t;
    if (t == n_) {
      layers[j].t = static_cast<unsigned>(n_ - 1);
      layers[j].h = Vec(n_, 0);
      continue;
    }
    layers[j].t = static_cast<unsigned>(t);
    Vec h(n_, 0);
    for (std::size_t i = t; i < n_; ++i) h[i - t] = layer[i];
    layers[j].h = std::move(h);
  }
  return layers;
}

Vec Algebra::gamma_x_reassemble(const std::vector<GammaXLayer>& layers) const {
  Vec out(n_, 0);
  for (unsigned j = 0; j < layers.size(); ++j) {
    const auto& ly = layers[j];
    check_length(*this, ly.h);
    const elem_t gj = ring_->gamma_pow(j);
    for (std::size_t i = 0; i + ly.t < n_; ++i) {
      if (ly.h[i] == 0) continue;
      out[i + ly.t] = ring_->add(out[i + ly.t], ring_->mul(gj, ly.h[i]));
    }
  }
  return out;
}

Algebra::QuotientAlg Algebra::quotient(unsigned j) const {
  auto rq = ring_->quotient(j);
  QuotientAlg out;
  out.parent = shared_from_this();
  out.alg = Algebra::make(rq.ring, n_, rq.project(lambda_));
  out.j = j;
  return out;
}

Vec Algebra::QuotientAlg::project(const Vec& a) const {
  check_length(*parent, a);
  Vec out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = parent->coeff_ring()->project_to_quotient(j, a[i]);
  }
  return out;
}

Vec Algebra::lift_from_quotient(const Algebra& sj, const Vec& a) const {
  const unsigned j = sj.coeff_ring()->e();
  auto q = quotient(j);
  q.alg->check_same(sj);
  check_length(sj, a);
  Vec out(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    out[i] = ring_->lift_from_quotient(*sj.coeff_ring(), a[i]);
  }
  return out;
}

std::vector<Vec> Algebra::enumerate() const {
  if (size() > BigInt(enumeration_cap())) {
    fail(errc::too_large, "algebra larger than the enumeration cap");
  }
  const std::size_t total = static_cast<std::size_t>(size());
  std::vector<Vec> out;
  out.reserve(total);
  Vec cur(n_, 0);
  out.push_back(cur);
  const elem_t last = ring_->size() - 1;
  for (std::size_t count = 1; count < total; ++count) {
    std::size_t k = 0;
    while (cur[k] == last) {
      cur[k] = 0;
      ++k;
    }
    ++cur[k];
    out.push_back(cur);
  }
  return out;
}

std::string Algebra::spec_string() const {
  return ring_->spec_string() + ";n=" + std::to_string(n_) +
         ";lambda=" + std::to_string(lambda_);
}

std::string Algebra::to_string(const Vec& a) const {
  check_length(*this, a);
  std::string out;
  for (std::size_t i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    std::string coeff = ring_->to_string(a[i]);
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += coeff;
      continue;
    }
    if (coeff.find('+') != std::string::npos) coeff = "(" + coeff + ")";
    if (coeff != "1") out += coeff + "*";
    out += (i == 1) ? "x" : "x^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

Alg make_algebra(Ring ring, std::size_t n, elem_t lambda) {
  return Algebra::make(std::move(ring), n, lambda);
}

Alg parse_algebra(const std::string& text) {
  auto parts = split_top_level(strip(text));
  if (parts.empty()) fail(errc::parse_error, "empty algebra spec");
  // The ring spec may itself carry a ";mod=..." section; collect every part
  // that is not n= or lambda= back into it, preserving order.
  std::string ring_text;
  std::string n_text;
  std::string lambda_text;
  for (const auto& part : parts) {
    if (part.rfind("n=", 0) == 0) {
      n_text = part.substr(2);
    } else if (part.rfind("lambda=", 0) == 0) {
      lambda_text = part.substr(7);
    } else {
      if (!ring_text.empty()) ring_text += ";";
      ring_text += part;
    }
  }
  if (ring_text.empty()) fail(errc::parse_error, "missing ring spec");
  if (n_text.empty()) fail(errc::parse_error, "missing n= in algebra spec");
  if (lambda_text.empty()) {
    fail(errc::parse_error, "missing lambda= in algebra spec");
  }
  Ring ring = make_ring(ring_text);
  std::uint64_t n = parse_number(n_text, "n");
  std::uint64_t lambda = parse_number(lambda_text, "lambda");
  if (n == 0) fail(errc::bad_parameters, "length n must be at least 1");
  return make_algebra(std::move(ring), static_cast<std::size_t>(n), lambda);
}

Vec parse_poly(const Algebra& alg, const std::string& text) {
  std::string s = strip(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    fail(errc::parse_error, "polynomial must look like [c0,c1,...]");
  }
  s = s.substr(1, s.size() - 2);
  Vec out(alg.n(), 0);
  if (s.empty()) return out;
  std::size_t idx = 0;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (idx >= alg.n()) {
      fail(errc::length_mismatch,
           "more than " + std::to_string(alg.n()) + " coefficients");
    }
    elem_t c = parse_number(item, "coefficient");
    if (c >= alg.coeff_ring()->size()) {
      fail(errc::ring_mismatch, "coefficient " + item + " is not an element of " +
                                    alg.coeff_ring()->spec_string());
    }
    out[idx++] = c;
  }
  return out;
}

std::string poly_text(const Vec& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(a[i]);
  }
  return out + "]";
}

}  // namespace nie
