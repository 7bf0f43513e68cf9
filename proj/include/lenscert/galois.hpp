#pragma once

// Word-size number theory (Miller-Rabin, Pollard-Brent, primes in a
// progression, primitive roots) and arithmetic in F_p and F_p[w]/(w^2 - s).

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lenscert/detail/text.hpp"
#include "lenscert/error.hpp"

namespace lenscert {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Largest prime modulus accepted by FieldSpec. Keeps p^2 + 1 in 64 bits so
/// projective orders over F_{p^2} can be factored with word arithmetic.
inline constexpr u64 kMaxModulus = (u64{1} << 32) - 1;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128{a} * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Deterministic for all 64-bit n (bases 2..37 suffice below 3.3e24).
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 q : kBases) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kBases) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s && composite; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    constexpr u64 m = 128;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(u64 n, std::map<u64, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (u64 q : {2, 3, 5, 7, 11, 13}) {
    if (n % q == 0) {
      ++out[q];
      factor_into(n / q, out);
      return;
    }
  }
  u64 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization as (prime, exponent), ascending.
inline std::map<u64, int> factorize(u64 n) {
  if (n == 0) throw ArithmeticError("cannot factor 0");
  std::map<u64, int> out;
  detail::factor_into(n, out);
  return out;
}

inline u64 euler_phi(u64 n) {
  if (n == 0) throw ArithmeticError("phi(0) is undefined");
  u64 phi = n;
  for (auto [q, e] : factorize(n)) phi = phi / q * (q - 1);
  return phi;
}

struct PrimeSearchResult {
  u64 p = 0;
  double linnik_ratio = 0;  // p / ell^5.18, informational only
};

/// Smallest prime p = 1 (mod ell), scanning 1 + k*ell upward. Throws
/// ArithmeticError once candidates pass `ceiling`.
inline PrimeSearchResult smallest_prime_in_progression(u64 ell, u64 ceiling = 1'000'000'000) {
  if (ell < 2) throw DomainError("modulus of the progression must be at least 2");
  for (u64 p = ell + 1; p <= ceiling; p += ell) {
    if (is_prime(p))
      return {p, static_cast<double>(p) / std::pow(static_cast<double>(ell), 5.18)};
    if (p > ceiling - ell) break;
  }
  throw ArithmeticError("no prime = 1 mod " + std::to_string(ell) + " below " +
                        std::to_string(ceiling));
}

inline bool is_quadratic_residue(u64 a, u64 p) {
  a %= p;
  return a == 0 || powmod(a, (p - 1) / 2, p) == 1;
}

inline u64 smallest_nonresidue(u64 p) {
  if (p < 3 || !is_prime(p)) throw ArithmeticError("modulus must be an odd prime");
  for (u64 s = 2;; ++s)
    if (!is_quadratic_residue(s, p)) return s;
}

/// Smallest generator of F_p^*.
inline u64 primitive_root(u64 p) {
  if (!is_prime(p)) throw ArithmeticError(std::to_string(p) + " is not prime");
  if (p == 2) return 1;
  auto fac = factorize(p - 1);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (auto [q, e] : fac)
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
}

/// Tonelli-Shanks; returns the smaller of the two roots.
inline std::optional<u64> sqrt_mod(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (!is_quadratic_residue(a, p)) return std::nullopt;
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = smallest_nonresidue(p);
  u64 m = static_cast<u64>(s);
  u64 c = powmod(z, q, p);
  u64 t = powmod(a, q, p);
  u64 r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0;
    for (u64 tt = t; tt != 1; tt = mulmod(tt, tt, p)) ++i;
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return std::min(r, p - r);
}

/// F_p (degree 1) or F_p[w]/(w^2 - s) with s a nonresidue (degree 2).
struct FieldSpec {
  u64 p = 0;
  int degree = 1;
  u64 s = 0;  // 0 when degree == 1

  /// Canonical spec: degree 2 adjoins the square root of the smallest
  /// nonresidue.
  static FieldSpec make(u64 p, int degree = 1) {
    FieldSpec f{p, degree, 0};
    if (p < 3 || p > kMaxModulus || !is_prime(p))
      throw ArithmeticError("field modulus must be an odd prime below 2^32, got " +
                            std::to_string(p));
    if (degree == 2) f.s = smallest_nonresidue(p);
    f.check();
    return f;
  }

  void check() const {
    if (p < 3 || p > kMaxModulus || !is_prime(p))
      throw ArithmeticError("field modulus must be an odd prime below 2^32");
    if (degree == 1 && s != 0) throw ArithmeticError("degree-1 field carries no nonresidue");
    if (degree == 2 && (s == 0 || s >= p || is_quadratic_residue(s, p)))
      throw ArithmeticError(std::to_string(s) + " is not a nonresidue mod " + std::to_string(p));
    if (degree != 1 && degree != 2) throw ArithmeticError("field degree must be 1 or 2");
  }

  /// Field size p^degree as a 128-bit value.
  u128 order() const { return degree == 1 ? u128{p} : u128{p} * p; }

  std::string str() const {
    return "p=" + std::to_string(p) + " deg=" + std::to_string(degree) +
           " s=" + std::to_string(s);
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// a + b*w with w^2 = s; b is always 0 in degree 1.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const FieldSpec& spec, u64 a, u64 b = 0) : spec_(spec), a_(a % spec.p), b_(b % spec.p) {
    if (spec.degree == 1 && b_ != 0) throw DomainError("w-coordinate in a prime field");
  }
  static FieldElement from_int(const FieldSpec& spec, long long v) {
    long long m = static_cast<long long>(spec.p);
    long long r = v % m;
    return FieldElement(spec, static_cast<u64>(r < 0 ? r + m : r));
  }

  const FieldSpec& spec() const { return spec_; }
  u64 a() const { return a_; }
  u64 b() const { return b_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_one() const { return a_ == 1 && b_ == 0; }

  FieldElement operator-() const {
    const u64 p = spec_.p;
    return FieldElement(spec_, a_ ? p - a_ : 0, b_ ? p - b_ : 0);
  }

  friend FieldElement operator+(const FieldElement& x, const FieldElement& y) {
    same(x, y);
    const u64 p = x.spec_.p;
    return FieldElement(x.spec_, (x.a_ + y.a_) % p, (x.b_ + y.b_) % p);
  }
  friend FieldElement operator-(const FieldElement& x, const FieldElement& y) { return x + (-y); }

  friend FieldElement operator*(const FieldElement& x, const FieldElement& y) {
    same(x, y);
    const u64 p = x.spec_.p;
    if (x.spec_.degree == 1) return FieldElement(x.spec_, mulmod(x.a_, y.a_, p));
    u64 a = (mulmod(x.a_, y.a_, p) + mulmod(mulmod(x.b_, y.b_, p), x.spec_.s, p)) % p;
    u64 b = (mulmod(x.a_, y.b_, p) + mulmod(x.b_, y.a_, p)) % p;
    return FieldElement(x.spec_, a, b);
  }

  FieldElement& operator+=(const FieldElement& y) { return *this = *this + y; }
  FieldElement& operator-=(const FieldElement& y) { return *this = *this - y; }
  FieldElement& operator*=(const FieldElement& y) { return *this = *this * y; }

  FieldElement inverse() const {
    if (is_zero()) throw ArithmeticError("division by zero in F_" + std::to_string(spec_.p));
    const u64 p = spec_.p;
    // (a + bw)^-1 = (a - bw) / (a^2 - s b^2); the norm is nonzero since s is
    // a nonresidue.
    u64 norm = (mulmod(a_, a_, p) + p - mulmod(mulmod(b_, b_, p), spec_.s, p)) % p;
    u64 ninv = powmod(norm, p - 2, p);
    return FieldElement(spec_, mulmod(a_, ninv, p), mulmod(b_ ? p - b_ : 0, ninv, p));
  }

  friend FieldElement operator/(const FieldElement& x, const FieldElement& y) {
    return x * y.inverse();
  }

  FieldElement pow(u128 e) const {
    FieldElement result(spec_, 1);
    FieldElement base = *this;
    while (e) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  /// "a" or "a+b*w".
  std::string str() const {
    if (b_ == 0) return std::to_string(a_);
    return std::to_string(a_) + "+" + std::to_string(b_) + "*w";
  }

  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    return x.spec_ == y.spec_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  static void same(const FieldElement& x, const FieldElement& y) {
    if (!(x.spec_ == y.spec_)) throw DomainError("field mismatch");
  }

  FieldSpec spec_;
  u64 a_ = 0;
  u64 b_ = 0;
};

namespace detail {

/// Reads "a" or "a+b*w" with coordinates already reduced.
inline FieldElement parse_field_element(LineScanner& sc, const FieldSpec& spec) {
  auto col = sc.column();
  u64 a = sc.number();
  u64 b = 0;
  if (sc.accept("+")) {
    b = sc.number();
    sc.expect("*");
    sc.expect("w");
    if (spec.degree == 1) throw ParseError("w-coordinate in a prime field", sc.line_number(), col);
    if (b == 0) throw ParseError("zero w-coordinate must be omitted", sc.line_number(), col);
  }
  if (a >= spec.p || b >= spec.p)
    throw ParseError("coordinate not reduced mod " + std::to_string(spec.p), sc.line_number(), col);
  return FieldElement(spec, a, b);
}

}  // namespace detail

/// Square root in a prime field, smaller root first; nullopt for nonresidues.
inline std::optional<FieldElement> sqrt_mod_p(const FieldElement& x) {
  if (x.spec().degree != 1) throw DomainError("sqrt_mod_p expects a prime-field element");
  auto r = sqrt_mod(x.a(), x.spec().p);
  if (!r) return std::nullopt;
  return FieldElement(x.spec(), *r);
}

/// g^((p-1)/ell) for the smallest primitive root g, with its order checked.
inline FieldElement root_of_unity(u64 p, u64 ell) {
  if (ell == 0 || (p - 1) % ell != 0)
    throw DomainError(std::to_string(ell) + " does not divide " + std::to_string(p) + " - 1");
  auto spec = FieldSpec::make(p);
  FieldElement zeta(spec, powmod(primitive_root(p), (p - 1) / ell, p));
  if (!zeta.pow(ell).is_one()) throw ArithmeticError("root of unity order check failed");
  for (auto [q, e] : factorize(ell == 1 ? 1 : ell))
    if (zeta.pow(ell / q).is_one()) throw ArithmeticError("root of unity order check failed");
  return zeta;
}

/// Factorization of p^degree - 1.
inline std::map<u64, int> multiplicative_group_factors(const FieldSpec& spec) {
  auto fac = factorize(spec.p - 1);
  if (spec.degree == 2)
    for (auto [q, e] : factorize(spec.p + 1)) fac[q] += e;
  return fac;
}

/// Exact multiplicative order.
inline u128 element_order(const FieldElement& x) {
  if (x.is_zero()) throw ArithmeticError("zero has no multiplicative order");
  const auto fac = multiplicative_group_factors(x.spec());
  u128 n = x.spec().order() - 1;
  for (auto [q, e] : fac)
    for (int i = 0; i < e && x.pow(n / q).is_one(); ++i) n /= q;
  return n;
}

inline std::string u128_str(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace lenscert
