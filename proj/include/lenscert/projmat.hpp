#pragma once

// PSL(2, F) for F = F_p or F_{p^2}: determinant-one matrices up to sign,
// stored as a sign-normalized representative.

#include <array>
#include <bit>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lenscert/detail/text.hpp"
#include "lenscert/error.hpp"
#include "lenscert/galois.hpp"
#include "lenscert/group.hpp"

namespace lenscert {

/// Tallies for verification cost accounting. A 2x2 product is one matrix
/// multiplication and 12 field operations (8 products, 4 sums).
struct OpCounter {
  std::size_t mat_mults = 0;
  std::size_t field_ops = 0;
};

class ProjMatrix {
 public:
  /// Throws DomainError unless ad - bc = 1.
  ProjMatrix(FieldElement a, FieldElement b, FieldElement c, FieldElement d)
      : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {
    if (!(det() == FieldElement(spec(), 1))) throw DomainError("matrix determinant is not 1");
    normalize();
  }

  static std::optional<ProjMatrix> try_make(FieldElement a, FieldElement b, FieldElement c,
                                            FieldElement d) {
    if (!(a * d - b * c).is_one()) return std::nullopt;
    return ProjMatrix(std::move(a), std::move(b), std::move(c), std::move(d));
  }

  static ProjMatrix identity(const FieldSpec& spec) {
    FieldElement one(spec, 1), zero(spec, 0);
    return ProjMatrix(one, zero, zero, one);
  }

  const FieldSpec& spec() const { return e_[0].spec(); }
  const FieldElement& a() const { return e_[0]; }
  const FieldElement& b() const { return e_[1]; }
  const FieldElement& c() const { return e_[2]; }
  const FieldElement& d() const { return e_[3]; }
  const std::array<FieldElement, 4>& entries() const { return e_; }

  FieldElement det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
  FieldElement trace() const { return e_[0] + e_[3]; }
  bool is_identity() const { return *this == identity(spec()); }

  ProjMatrix mul(const ProjMatrix& o, OpCounter* counter = nullptr) const {
    if (!(spec() == o.spec())) throw DomainError("field mismatch in matrix product");
    if (counter) {
      counter->mat_mults += 1;
      counter->field_ops += 12;
    }
    return ProjMatrix(e_[0] * o.e_[0] + e_[1] * o.e_[2], e_[0] * o.e_[1] + e_[1] * o.e_[3],
                      e_[2] * o.e_[0] + e_[3] * o.e_[2], e_[2] * o.e_[1] + e_[3] * o.e_[3],
                      Trusted{});
  }

  friend ProjMatrix operator*(const ProjMatrix& x, const ProjMatrix& y) { return x.mul(y); }

  ProjMatrix inverse() const { return ProjMatrix(e_[3], -e_[1], -e_[2], e_[0], Trusted{}); }

  ProjMatrix pow(u128 k) const {
    ProjMatrix result = identity(spec());
    ProjMatrix base = *this;
    while (k) {
      if (k & 1) result = result * base;
      base = base * base;
      k >>= 1;
    }
    return result;
  }

  /// "[[a,b],[c,d]]".
  std::string str() const {
    return "[[" + e_[0].str() + "," + e_[1].str() + "],[" + e_[2].str() + "," + e_[3].str() + "]]";
  }

  friend bool operator==(const ProjMatrix& x, const ProjMatrix& y) { return x.e_ == y.e_; }

 private:
  struct Trusted {};

  ProjMatrix(FieldElement a, FieldElement b, FieldElement c, FieldElement d, Trusted)
      : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {
    normalize();
  }

  // The first nonzero entry's first nonzero coordinate lands in
  // [1, (p-1)/2]; p is odd, so exactly one of M, -M qualifies.
  void normalize() {
    const u64 half = (spec().p - 1) / 2;
    for (const auto& x : e_) {
      if (x.is_zero()) continue;
      u64 lead = x.a() != 0 ? x.a() : x.b();
      if (lead > half)
        for (auto& y : e_) y = -y;
      return;
    }
  }

  std::array<FieldElement, 4> e_;
};

namespace detail {

/// Reads "[[a,b],[c,d]]"; the representative must already be normalized.
inline ProjMatrix parse_proj_matrix(LineScanner& sc, const FieldSpec& spec) {
  auto col = sc.column();
  std::array<FieldElement, 4> e;
  sc.expect("[");
  for (int row = 0; row < 2; ++row) {
    if (row) sc.expect(",");
    sc.expect("[");
    e[2 * row] = parse_field_element(sc, spec);
    sc.expect(",");
    e[2 * row + 1] = parse_field_element(sc, spec);
    sc.expect("]");
  }
  sc.expect("]");
  auto m = ProjMatrix::try_make(e[0], e[1], e[2], e[3]);
  if (!m) throw ParseError("matrix determinant is not 1", sc.line_number(), col);
  if (m->entries() != e)
    throw ParseError("matrix is not sign-normalized", sc.line_number(), col);
  return *m;
}

}  // namespace detail

/// Least k >= 1 with M^k = identity in PSL(2, F). Every element order
/// divides p * (q - 1) * (q + 1), q = |F|, so the search strips prime
/// factors from that multiple. Throws ArithmeticError above `ceiling`.
inline u64 projective_order(const ProjMatrix& m, u64 ceiling) {
  if (ceiling < 1) throw DomainError("order ceiling must be positive");
  const FieldSpec& spec = m.spec();
  const u64 p = spec.p;
  std::map<u64, int> fac;
  fac[p] += 1;
  // q - 1 and q + 1 are (p - 1)(p + 1) and p^2 + 1 when q = p^2.
  for (auto [q, e] : factorize(p - 1)) fac[q] += e;
  for (auto [q, e] : factorize(p + 1)) fac[q] += e;
  if (spec.degree == 2)
    for (auto [q, e] : factorize(p * p + 1)) fac[q] += e;

  auto power_of = [&](const std::map<u64, int>& f) {
    ProjMatrix x = m;
    for (auto [q, e] : f)
      for (int i = 0; i < e; ++i) x = x.pow(q);
    return x;
  };
  if (!power_of(fac).is_identity()) throw ArithmeticError("matrix order does not divide the group exponent");

  for (auto it = fac.begin(); it != fac.end(); ++it) {
    while (it->second > 0) {
      --it->second;
      if (power_of(fac).is_identity()) continue;
      ++it->second;
      break;
    }
  }
  u128 k = 1;
  for (auto [q, e] : fac)
    for (int i = 0; i < e; ++i) k *= q;
  if (k > ceiling) throw ArithmeticError("matrix order exceeds ceiling " + std::to_string(ceiling));
  return static_cast<u64>(k);
}

/// Left-to-right product of generator images, inverses for negative
/// letters. Each letter costs one counted multiplication, starting from the
/// identity.
inline ProjMatrix evaluate_word(const FieldSpec& spec, const std::vector<ProjMatrix>& images,
                                const Word& w, OpCounter* counter = nullptr) {
  ProjMatrix acc = ProjMatrix::identity(spec);
  for (const auto& l : w.letters()) {
    if (l.gen >= images.size())
      throw DomainError("generator " + std::to_string(l.gen) + " has no image");
    acc = acc.mul(l.exp > 0 ? images[l.gen] : images[l.gen].inverse(), counter);
  }
  return acc;
}

/// 4 * degree * ceil(log2(p - 1)) bits.
inline std::size_t bit_size(const FieldSpec& spec) {
  return 4 * static_cast<std::size_t>(spec.degree) * std::bit_width(spec.p - 2);
}

inline std::size_t bit_size(const ProjMatrix& m) { return bit_size(m.spec()); }

}  // namespace lenscert
