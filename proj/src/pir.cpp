#include "nie/pir.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "nie/errors.hpp"

namespace nie {

namespace {

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exp; ++i) out *= base;
  return out;
}

/// prod_{i=0}^{count-1} (x - alpha^i) inside S.
Vec root_product(const Alg& s, elem_t alpha, std::size_t count) {
  const ChainRing& r = *s->coeff_ring();
  Vec g = s->one();
  elem_t ai = 1;
  for (std::size_t i = 0; i < count; ++i) {
    g = s->mul(g, s->sub(s->x(), s->from_constant(ai)));
    ai = r.mul(ai, alpha);
  }
  return g;
}

OptimalResult certify(PirCode code, std::size_t k, std::size_t s) {
  const PirRing& pr = *code.pir();
  const std::size_t n = code.length();

  // All components share one chain ring, so |C| must be |R0|^{k(s-1)}.
  const BigInt b(pr.component(1)->size());
  const BigInt card = code.cardinality();
  if (card != boost::multiprecision::pow(
                  b, static_cast<unsigned>(k * (s - 1)))) {
    throw std::logic_error("construction cardinality is off the design value");
  }

  // Singleton over the product ring: n + 1 - log_{|ring|}|C|, and the log is
  // exactly k(s-1)/s because |ring| = |R0|^s.
  Rational bound(n + 1);
  bound -= Rational(static_cast<unsigned long>(k * (s - 1)),
                    static_cast<unsigned long>(s));

  const std::size_t dist = pir_min_distance(code);
  if (BigInt(dist) != rational_floor(bound)) {
    throw std::logic_error("construction distance misses the Singleton floor");
  }

  Rational slack(static_cast<unsigned long>(k), static_cast<unsigned long>(s));
  OptimalityCertificate cert{n, card, dist, bound,
                             slack > 0 && slack < 1};
  return OptimalResult{std::move(code), std::move(cert)};
}

}  // namespace

Pir PirRing::make(std::vector<Ring> components) {
  if (components.empty()) {
    fail(errc::bad_parameters, "a product ring needs at least one component");
  }
  for (const Ring& r : components) {
    if (!r) fail(errc::bad_parameters, "null component ring");
  }
  return std::make_shared<const PirRing>(Key{}, std::move(components));
}

const Ring& PirRing::component(std::size_t t) const {
  if (t < 1 || t > comps_.size()) {
    fail(errc::index_out_of_range,
         "component " + std::to_string(t) + " of a product of " +
             std::to_string(comps_.size()));
  }
  return comps_[t - 1];
}

BigInt PirRing::size() const {
  BigInt out = 1;
  for (const Ring& r : comps_) out *= r->size();
  return out;
}

bool PirRing::same_pir(const PirRing& o) const {
  if (comps_.size() != o.comps_.size()) return false;
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (!comps_[i]->same_ring(*o.comps_[i])) return false;
  }
  return true;
}

std::string PirRing::spec_string() const {
  std::string out;
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (i) out += " x ";
    out += comps_[i]->spec_string();
  }
  return out;
}

Pir make_pir(std::vector<Ring> components) {
  return PirRing::make(std::move(components));
}

Pir parse_pir(const std::string& text) {
  std::vector<Ring> comps;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == 'x' && depth == 0) {
      comps.push_back(make_ring(strip(cur)));
      cur.clear();
      continue;
    }
    cur += ch;
  }
  if (depth != 0) fail(errc::parse_error, "unbalanced parentheses: " + text);
  if (strip(cur).empty()) {
    fail(errc::parse_error, "empty product-ring component in: " + text);
  }
  comps.push_back(make_ring(strip(cur)));
  return PirRing::make(std::move(comps));
}

std::size_t pir_weight(const PirWord& w) {
  if (w.empty()) return 0;
  std::size_t out = 0;
  for (std::size_t i = 0; i < w[0].size(); ++i) {
    for (const Vec& comp : w) {
      if (i < comp.size() && comp[i] != 0) {
        ++out;
        break;
      }
    }
  }
  return out;
}

PirCode::PirCode(Pir ring, std::size_t n, std::vector<elem_t> lambdas,
                 std::vector<Code> comps)
    : ring_(std::move(ring)),
      n_(n),
      lambdas_(std::move(lambdas)),
      comps_(std::move(comps)) {}

PirCode PirCode::crt(Pir ring, std::size_t n, std::vector<elem_t> lambdas,
                     std::vector<Code> components) {
  if (!ring) fail(errc::bad_parameters, "null product ring");
  const std::size_t s = ring->s();
  if (lambdas.size() != s || components.size() != s) {
    fail(errc::component_mismatch,
         "expected " + std::to_string(s) + " shift constants and codes, got " +
             std::to_string(lambdas.size()) + " and " +
             std::to_string(components.size()));
  }
  for (std::size_t t = 0; t < s; ++t) {
    if (components[t].length() != n) {
      fail(errc::length_mismatch,
           "component " + std::to_string(t + 1) + " has length " +
               std::to_string(components[t].length()) + ", expected " +
               std::to_string(n));
    }
    Alg expected = make_algebra(ring->component(t + 1), n, lambdas[t]);
    if (!components[t].algebra()->same_algebra(*expected)) {
      fail(errc::component_mismatch,
           "component " + std::to_string(t + 1) + " lives over " +
               components[t].algebra()->spec_string() + ", expected " +
               expected->spec_string());
    }
  }
  return PirCode(std::move(ring), n, std::move(lambdas),
                 std::move(components));
}

const Code& PirCode::project(std::size_t t) const {
  if (t < 1 || t > comps_.size()) {
    fail(errc::index_out_of_range,
         "component " + std::to_string(t) + " of a product of " +
             std::to_string(comps_.size()));
  }
  return comps_[t - 1];
}

BigInt PirCode::cardinality() const {
  BigInt out = 1;
  for (const Code& c : comps_) out *= c.cardinality();
  return out;
}

bool PirCode::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(),
                     [](const Code& c) { return c.is_zero(); });
}

bool PirCode::is_full() const {
  return std::all_of(comps_.begin(), comps_.end(),
                     [](const Code& c) { return c.is_full(); });
}

bool PirCode::contains(const PirWord& w) const {
  if (w.size() != comps_.size()) {
    fail(errc::component_mismatch,
         "word has " + std::to_string(w.size()) + " components, expected " +
             std::to_string(comps_.size()));
  }
  for (std::size_t t = 0; t < comps_.size(); ++t) {
    if (!comps_[t].contains(w[t])) return false;
  }
  return true;
}

std::vector<PirWord> PirCode::enumerate() const {
  if (cardinality() > BigInt(enumeration_cap())) {
    fail(errc::too_large, "product-code enumeration exceeds the cap");
  }
  std::vector<std::vector<Vec>> per_comp;
  per_comp.reserve(comps_.size());
  for (const Code& c : comps_) per_comp.push_back(c.enumerate());

  std::vector<PirWord> out;
  PirWord cur(comps_.size());
  std::vector<std::size_t> idx(comps_.size(), 0);
  for (;;) {
    for (std::size_t t = 0; t < comps_.size(); ++t) cur[t] = per_comp[t][idx[t]];
    out.push_back(cur);
    std::size_t t = 0;
    while (t < idx.size() && ++idx[t] == per_comp[t].size()) {
      idx[t] = 0;
      ++t;
    }
    if (t == idx.size()) break;
  }
  return out;
}

std::size_t pir_min_distance(const PirCode& c) {
  if (c.is_zero()) {
    fail(errc::zero_code, "minimum distance of the zero code");
  }
  std::size_t best = c.length() + 1;
  for (const Code& comp : c.components()) {
    best = std::min(best, comp.min_distance());
  }
  return best;
}

std::optional<PirWitness> nie_pir_distance_check(const PirCode& c) {
  for (std::size_t t = 0; t < c.components().size(); ++t) {
    const Code& comp = c.components()[t];
    const Ring& r = comp.algebra()->coeff_ring();
    if (!r->is_unit(c.lambdas()[t]) && !comp.is_zero()) {
      return PirWitness{t + 1, comp.weight_one_witness()};
    }
  }
  return std::nullopt;
}

Code rs_component(std::uint64_t q, std::size_t k) {
  if (k == 0 || k >= q) {
    fail(errc::bad_parameters,
         "Reed-Solomon dimension k must satisfy 0 < k < q");
  }
  Ring r = make_ring("F(" + std::to_string(q) + ")");
  const std::size_t n = static_cast<std::size_t>(q) - 1;
  Alg s = make_algebra(r, n, 1);
  return Code::from_generators(s, {root_product(s, r->zeta(), n - k)});
}

Code galois_mds_component(std::uint64_t p, unsigned t, unsigned m,
                          std::size_t n, std::size_t k) {
  Ring r = make_ring("GR(" + std::to_string(pow_u64(p, t)) + "," +
                     std::to_string(m) + ")");
  const std::uint64_t q = r->q();
  if (n == 0 || (q - 1) % n != 0) {
    fail(errc::bad_parameters,
         "length " + std::to_string(n) + " must divide q - 1 = " +
             std::to_string(q - 1));
  }
  if (k == 0 || k >= n) {
    fail(errc::bad_parameters, "dimension k must satisfy 0 < k < n");
  }
  elem_t alpha = r->pow(r->zeta(), (q - 1) / n);
  Alg s = make_algebra(r, n, 1);
  return Code::from_generators(s, {root_product(s, alpha, n - k)});
}

OptimalResult optimal_rs(std::uint64_t q, std::size_t k, std::size_t s) {
  if (s < 2 || k == 0 || k >= std::min<std::uint64_t>(s, q)) {
    fail(errc::bad_parameters,
         "the construction needs 0 < k < min(s, q) with s >= 2");
  }
  Code c0 = rs_component(q, k);
  const Alg& a0 = c0.algebra();
  const Ring& r0 = a0->coeff_ring();
  const std::size_t n = a0->n();

  std::vector<Ring> rings(s, r0);
  std::vector<elem_t> lambdas(s, 1);
  lambdas.back() = 0;
  std::vector<Code> comps(s - 1, c0);
  comps.push_back(Code::zero_code(make_algebra(r0, n, 0)));
  return certify(PirCode::crt(make_pir(std::move(rings)), n,
                              std::move(lambdas), std::move(comps)),
                 k, s);
}

OptimalResult optimal_galois_mds(std::uint64_t p, unsigned t, unsigned m,
                                 std::size_t n, std::size_t k, std::size_t s) {
  if (s < 2 || k == 0 || k >= std::min<std::size_t>(s, n)) {
    fail(errc::bad_parameters,
         "the construction needs 0 < k < min(s, n) with s >= 2");
  }
  Code c0 = galois_mds_component(p, t, m, n, k);
  const Alg& a0 = c0.algebra();
  const Ring& r0 = a0->coeff_ring();

  std::vector<Ring> rings(s, r0);
  std::vector<elem_t> lambdas(s, 1);
  lambdas.back() = 0;
  std::vector<Code> comps(s - 1, c0);
  comps.push_back(Code::zero_code(make_algebra(r0, n, 0)));
  return certify(PirCode::crt(make_pir(std::move(rings)), n,
                              std::move(lambdas), std::move(comps)),
                 k, s);
}

}  // namespace nie
