#pragma once

// Triangle groups T(n1,n2,n3) = <x, y | x^n1, y^n2, (xy)^n3> and explicit
// finite quotients: the reduction of the standard hyperbolic
// representation at a prime p = 1 (mod l), abelian quotients when the n_k
// share a factor, and small PSL(2, q) images for the remaining cases.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lenscert/certificate.hpp"
#include "lenscert/error.hpp"
#include "lenscert/galois.hpp"
#include "lenscert/group.hpp"
#include "lenscert/int_matrix.hpp"
#include "lenscert/projmat.hpp"

namespace lenscert {

enum class Curvature { Hyperbolic, Euclidean, Spherical };

inline const char* curvature_name(Curvature c) {
  switch (c) {
    case Curvature::Hyperbolic: return "hyperbolic";
    case Curvature::Euclidean: return "euclidean";
    case Curvature::Spherical: return "spherical";
  }
  return "?";
}

struct TriangleType {
  std::array<u64, 3> n{};  // ascending
  u64 ell = 0;             // 2 * lcm
  u64 d = 0;               // gcd
  Curvature curvature = Curvature::Hyperbolic;

  friend bool operator==(const TriangleType&, const TriangleType&) = default;
};

inline TriangleType classify(u64 n1, u64 n2, u64 n3) {
  if (n1 < 2 || n2 < 2 || n3 < 2) throw DomainError("triangle group orders must be at least 2");
  TriangleType t;
  t.n = {n1, n2, n3};
  std::sort(t.n.begin(), t.n.end());
  auto [a, b, c] = t.n;
  t.ell = 2 * std::lcm(std::lcm(a, b), c);
  t.d = std::gcd(std::gcd(a, b), c);
  // Sign of 1/a + 1/b + 1/c - 1, exactly.
  u128 lhs = u128{a} * b + u128{b} * c + u128{a} * c;
  u128 rhs = u128{a} * b * c;
  t.curvature = lhs < rhs ? Curvature::Hyperbolic : lhs == rhs ? Curvature::Euclidean : Curvature::Spherical;
  return t;
}

struct ReducedCosines {
  FieldElement zeta;  // order ell
  std::array<FieldElement, 3> C;
};

/// C_k = zeta^(ell/2n_k) + zeta^(-ell/2n_k) for a given zeta of order ell.
inline ReducedCosines reduced_cosines(const TriangleType& t, const FieldElement& zeta) {
  const u64 p = zeta.spec().p;
  if (zeta.spec().degree != 1 || (p - 1) % t.ell != 0)
    throw DomainError("prime must be 1 mod " + std::to_string(t.ell));
  if (element_order(zeta) != t.ell) throw ArithmeticError("root of unity has the wrong order");
  ReducedCosines rc{zeta, {}};
  for (int k = 0; k < 3; ++k) {
    auto z = zeta.pow(t.ell / (2 * t.n[k]));
    rc.C[k] = z + z.inverse();
  }
  return rc;
}

/// Same, with zeta from the smallest primitive root of F_p.
inline ReducedCosines reduced_cosines(u64 p, const TriangleType& t) {
  return reduced_cosines(t, root_of_unity(p, t.ell));
}

/// Embeds a prime-field element into an extension of the same prime.
inline FieldElement lift(const FieldElement& x, const FieldSpec& to) {
  if (x.spec().p != to.p) throw DomainError("cannot lift across characteristics");
  return FieldElement(to, x.a(), x.b());
}

struct SquareRoot {
  FieldSpec spec;  // F_p, or F_{p^2} when the value is a nonresidue
  FieldElement root;
  bool in_base = true;
};

/// Square root of a prime-field element, adjoining sqrt(s) when needed:
/// for a nonresidue v, v/s is a residue and sqrt(v) = sqrt(v/s) * w.
inline SquareRoot square_root_upgrading(const FieldElement& v) {
  if (auto r = sqrt_mod_p(v)) return {v.spec(), *r, true};
  auto ext = FieldSpec::make(v.spec().p, 2);
  FieldElement s(v.spec(), ext.s);
  auto half = sqrt_mod_p(v / s);
  if (!half) throw ArithmeticError("quotient of nonresidues is not a residue");
  return {ext, FieldElement(ext, 0, half->a()), false};
}

struct RootSolution {
  FieldSpec spec;
  FieldElement r;
  FieldElement discriminant;  // in the base field
  bool discriminant_square = true;
};

/// Root of r^2 + r(C1 - C2) + (2 - C1 C2 - C3) = 0, taking the +sqrt(D)
/// branch with the canonical square root.
inline RootSolution solve_r(const FieldElement& C1, const FieldElement& C2, const FieldElement& C3) {
  const auto& base = C1.spec();
  if (base.degree != 1) throw DomainError("solve_r expects prime-field cosines");
  FieldElement two(base, 2), four(base, 4);
  auto B = C1 - C2;
  auto D = B * B - four * (two - C1 * C2 - C3);
  auto sq = square_root_upgrading(D);
  auto r = (-lift(B, sq.spec) + sq.root) / FieldElement(sq.spec, 2);
  return {sq.spec, r, D, sq.in_base};
}

struct ReducedRepData {
  TriangleType type;
  FieldSpec spec;
  FieldElement zeta;  // in F_p
  std::array<FieldElement, 3> C;  // in spec
  FieldElement r;
  bool discriminant_square = true;
  ProjMatrix x;
  ProjMatrix y;
  double linnik_ratio = 0;
};

inline ProjMatrix rotation_matrix(const FieldElement& C) {
  const auto& f = C.spec();
  return ProjMatrix(C, FieldElement(f, 1), -FieldElement(f, 1), FieldElement(f, 0));
}

/// x -> [[C1, 1], [-1, 0]], y -> T M2 T^-1 with T = [[1, r], [0, 1]].
/// Orders and non-commutativity are checked before returning; a failure
/// here is a bug, not a property of the input.
inline ReducedRepData build_hyperbolic_rep(const TriangleType& t, std::optional<FieldElement> zeta = std::nullopt,
                                           u64 ceiling = 1'000'000'000) {
  if (t.curvature != Curvature::Hyperbolic || t.d != 1)
    throw DomainError("expected a hyperbolic triple with coprime orders");
  if (!zeta) zeta = root_of_unity(smallest_prime_in_progression(t.ell, ceiling).p, t.ell);
  const u64 p = zeta->spec().p;
  auto rc = reduced_cosines(t, *zeta);
  auto sol = solve_r(rc.C[0], rc.C[1], rc.C[2]);
  const auto& f = sol.spec;
  std::array<FieldElement, 3> C{lift(rc.C[0], f), lift(rc.C[1], f), lift(rc.C[2], f)};

  FieldElement one(f, 1), zero(f, 0);
  ProjMatrix T(one, sol.r, zero, one);
  ProjMatrix x = rotation_matrix(C[0]);
  ProjMatrix y = T * rotation_matrix(C[1]) * T.inverse();

  auto quad = sol.r * sol.r + sol.r * (C[0] - C[1]) + (FieldElement(f, 2) - C[0] * C[1] - C[2]);
  if (!quad.is_zero()) throw Error("internal: r does not satisfy its quadratic");
  auto xy = x * y;
  if (!(xy.trace() == C[2] || xy.trace() == -C[2])) throw Error("internal: trace of xy is not +-C3");
  const u64 cap = u64{1} << 62;
  if (projective_order(x, cap) != t.n[0] || projective_order(y, cap) != t.n[1] ||
      projective_order(xy, cap) != t.n[2])
    throw Error("internal: generator orders do not match the triangle type");
  if (xy == y * x) throw Error("internal: image is abelian");

  double ratio = static_cast<double>(p) / std::pow(static_cast<double>(t.ell), 5.18);
  return {t, f, rc.zeta, C, sol.r, sol.discriminant_square, x, y, ratio};
}

inline Certificate rep_certificate(const TriangleType& t, const FieldSpec& f, const ProjMatrix& x,
                                   const ProjMatrix& y) {
  Certificate c;
  c.kind = CertificateKind::NonAbelianRep;
  c.orbifold_level = true;
  c.presentation = triangle_group_presentation(static_cast<long long>(t.n[0]), static_cast<long long>(t.n[1]),
                                               static_cast<long long>(t.n[2]));
  c.field = f;
  c.image_names = {"x", "y"};
  c.matrices = {x, y};
  c.witness_left = Word({{0, 1}, {1, 1}});
  c.witness_right = Word({{1, 1}, {0, 1}});
  return c;
}

inline Certificate hyperbolic_certificate(const ReducedRepData& rep) {
  return rep_certificate(rep.type, rep.spec, rep.x, rep.y);
}

/// x -> (1,0), y -> (0,1) in (Z/d)^2, valid whenever d divides every n_k.
inline Certificate abelian_triangle_certificate(const TriangleType& t) {
  if (t.d < 2) throw DomainError("abelian certificate needs a common factor");
  Certificate c;
  c.kind = CertificateKind::NonCyclicAbelian;
  c.orbifold_level = true;
  c.presentation = triangle_group_presentation(static_cast<long long>(t.n[0]), static_cast<long long>(t.n[1]),
                                               static_cast<long long>(t.n[2]));
  c.target = {t.d, t.d};
  c.vectors = {{1, 0}, {0, 1}};
  return c;
}

namespace detail {

/// All elements of PSL(2, spec) in a fixed order.
inline std::vector<ProjMatrix> enumerate_psl2(const FieldSpec& spec) {
  std::vector<FieldElement> field;
  for (u64 b = 0; b < (spec.degree == 2 ? spec.p : 1); ++b)
    for (u64 a = 0; a < spec.p; ++a) field.emplace_back(spec, a, b);
  std::vector<ProjMatrix> out;
  std::set<std::string> seen;
  for (const auto& a : field)
    for (const auto& b : field)
      for (const auto& c : field)
        for (const auto& d : field) {
          auto m = ProjMatrix::try_make(a, b, c, d);
          if (m && seen.insert(m->str()).second) out.push_back(*m);
        }
  return out;
}

inline u64 small_order(const ProjMatrix& m, u64 cap) {
  ProjMatrix acc = m;
  for (u64 k = 1; k <= cap; ++k) {
    if (acc.is_identity()) return k;
    acc = acc * m;
  }
  return 0;
}

}  // namespace detail

/// First pair (A, B) in PSL(2, q), q in {3, 5, 7, 9}, with projective
/// orders n1, n2, order(AB) = n3 and AB != BA.
inline std::optional<Certificate> spherical_search(const TriangleType& t) {
  const std::array<std::pair<u64, int>, 4> fields{{{3, 1}, {5, 1}, {7, 1}, {3, 2}}};
  for (auto [p, deg] : fields) {
    auto spec = FieldSpec::make(p, deg);
    auto elems = detail::enumerate_psl2(spec);
    std::vector<u64> order(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) order[i] = detail::small_order(elems[i], 16);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (order[i] != t.n[0]) continue;
      for (std::size_t j = 0; j < elems.size(); ++j) {
        if (order[j] != t.n[1]) continue;
        auto ab = elems[i] * elems[j];
        if (detail::small_order(ab, 16) != t.n[2]) continue;
        if (ab == elems[j] * elems[i]) continue;
        return rep_certificate(t, spec, elems[i], elems[j]);
      }
    }
  }
  return std::nullopt;
}

inline u64 smallest_prime_factor(u64 m) { return factorize(m).begin()->first; }

/// Certificates for the triples outside build_hyperbolic_rep's range:
/// common factor d > 1, the spherical (2,3,k), (2,3,6), and (2,2,m) odd m.
inline Certificate build_nonhyperbolic_cert(const TriangleType& t) {
  if (t.d > 1) return abelian_triangle_certificate(t);
  if (t.curvature == Curvature::Hyperbolic)
    throw DomainError("hyperbolic triple with coprime orders; use build_hyperbolic_rep");
  const auto [n1, n2, n3] = t.n;

  if (n1 == 2 && n2 == 3 && n3 == 6) {
    // (xy)^3 = 1 already forces (xy)^6 = 1.
    auto base = spherical_search(classify(2, 3, 3));
    if (!base) throw Error("internal: no (2,3,3) image found");
    auto c = rep_certificate(t, base->field, base->matrices[0], base->matrices[1]);
    return c;
  }
  if (n1 == 2 && n2 == 2) {
    // n3 odd here, otherwise d > 1.
    u64 p = smallest_prime_factor(n3);
    auto i = square_root_upgrading(FieldElement::from_int(FieldSpec::make(p), -1));
    const auto& f = i.spec;
    FieldElement zero(f, 0);
    ProjMatrix x(i.root, zero, zero, -i.root);
    ProjMatrix y(i.root, i.root, zero, -i.root);
    return rep_certificate(t, f, x, y);
  }
  if (n1 == 2 && n2 == 3 && n3 <= 5) {
    auto c = spherical_search(t);
    if (!c) throw Error("internal: spherical search exhausted");
    return *c;
  }
  throw DomainError("no construction for this triple");
}

/// Any triple: the reduced hyperbolic representation when it applies,
/// otherwise the case list above.
inline Certificate triangle_certificate(const TriangleType& t, u64 ceiling = 1'000'000'000) {
  if (t.curvature == Curvature::Hyperbolic && t.d == 1) return hyperbolic_certificate(build_hyperbolic_rep(t, std::nullopt, ceiling));
  return build_nonhyperbolic_cert(t);
}

// ---------------------------------------------------------------------------
// Cyclotomic values and cosine norms.

enum class NormVariant { Plain, MinusTwo };

/// p if n is a power of the prime p (n > 1), else 0.
inline u64 prime_power_base(u64 n) {
  if (n < 2) return 0;
  auto f = factorize(n);
  return f.size() == 1 ? f.begin()->first : 0;
}

/// |N(2cos(pi/n))| and |N(2cos(pi/n) - 2)| over Q(zeta_2n), closed forms.
inline u64 cosine_norm(u64 n, NormVariant v) {
  if (n <= 2) throw DomainError("cosine_norm needs n > 2");
  if (v == NormVariant::Plain) {
    if (n % 2 != 0) return 1;
    u64 q = prime_power_base(n / 2);
    return q ? q * q : 1;
  }
  return std::has_single_bit(n) ? 4 : 1;
}

/// Product over 1 <= l < 2n, gcd(l, 2n) = 1, of |2cos(2 pi l / 2n) - shift|.
inline double cosine_norm_numeric(u64 n, double shift) {
  double prod = 1;
  for (u64 l = 1; l < 2 * n; ++l)
    if (std::gcd(l, 2 * n) == 1)
      prod *= std::fabs(2 * std::cos(std::numbers::pi * static_cast<double>(l) / static_cast<double>(n)) - shift);
  return prod;
}

/// Integer coefficients, constant term first.
using IntPoly = std::vector<BigInt>;

/// Phi_k by exact division of x^k - 1 by Phi_d for the proper divisors d
/// of k, building Phi_d for each divisor in ascending order.
inline IntPoly cyclotomic_polynomial(u64 k) {
  if (k < 1) throw DomainError("cyclotomic index must be positive");
  std::vector<u64> divisors;
  for (u64 d = 1; d <= k; ++d)
    if (k % d == 0) divisors.push_back(d);
  std::map<u64, IntPoly> phi;
  for (u64 m : divisors) {
    IntPoly num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (const auto& [d, den] : phi) {
      if (m % d) continue;
      // den is monic, so the quotient stays integral.
      std::size_t dn = den.size() - 1;
      IntPoly q(num.size() - dn, 0);
      for (std::size_t i = num.size(); i-- > dn;) {
        BigInt coef = num[i];
        q[i - dn] = coef;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= coef * den[j];
      }
      for (const auto& r : num)
        if (r != 0) throw Error("internal: cyclotomic division left a remainder");
      num = std::move(q);
    }
    phi.emplace(m, std::move(num));
  }
  return phi.at(k);
}

inline BigInt evaluate_poly(const IntPoly& f, long long at) {
  BigInt acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * at + f[i];
  return acc;
}

/// Phi_k(at) for at = +1 or -1, by exact polynomial evaluation.
inline BigInt cyclotomic_eval(u64 k, int at) {
  if (at != 1 && at != -1) throw DomainError("cyclotomic_eval evaluates at +1 or -1 only");
  return evaluate_poly(cyclotomic_polynomial(k), at);
}

/// Closed forms: Phi_k(1) is 0 for k = 1, p for k a power of p, else 1;
/// Phi_k(-1) is -2 for k = 1, 0 for k = 2, p for k = 2 p^e, else 1.
inline long long cyclotomic_closed_form(u64 k, int at) {
  if (k < 1) throw DomainError("cyclotomic index must be positive");
  if (at == 1) {
    if (k == 1) return 0;
    u64 q = prime_power_base(k);
    return q ? static_cast<long long>(q) : 1;
  }
  if (k == 1) return -2;
  if (k == 2) return 0;
  if (k % 2 == 0) {
    u64 q = prime_power_base(k / 2);
    if (q) return static_cast<long long>(q);
  }
  return 1;
}

// ---------------------------------------------------------------------------
// Reports.

enum class DegreeVerdict { Full, HalfPossible, Undetermined };

inline const char* verdict_name(DegreeVerdict v) {
  switch (v) {
    case DegreeVerdict::Full: return "phi";
    case DegreeVerdict::HalfPossible: return "phi/2-possible";
    case DegreeVerdict::Undetermined: return "undetermined";
  }
  return "?";
}

struct FieldDegreeReport {
  TriangleType type;
  u64 phi_ell = 0;
  u64 trace_degree = 0;  // phi(ell) / 2
  DegreeVerdict verdict = DegreeVerdict::Undetermined;
  std::optional<u64> witness;  // first l clearing the margin
  double witness_value = 0;
  // Same scan with cosines indexed (n1, n2) in the square, as in the
  // discriminant condition; true when its verdict differs.
  DegreeVerdict discriminant_verdict = DegreeVerdict::Undetermined;
  std::optional<u64> discriminant_witness;
  bool variants_disagree = false;

  u64 degree() const { return verdict == DegreeVerdict::Full ? phi_ell : trace_degree; }
};

namespace detail {

struct ScanResult {
  DegreeVerdict verdict = DegreeVerdict::Undetermined;
  std::optional<u64> witness;
  double value = 0;
};

// Looks for l coprime to ell with (cos(pi l/i) + cos(pi l/j))^2 + 2cos(pi l/k) < 2.
inline ScanResult embedding_scan(u64 ell, u64 i, u64 j, u64 k, double margin) {
  auto c = [](u64 l, u64 n) {
    return std::cos(2 * std::numbers::pi * static_cast<double>(l) / (2 * static_cast<double>(n)));
  };
  ScanResult res;
  bool all_above = true;
  for (u64 l = 1; l < ell; ++l) {
    if (std::gcd(l, ell) != 1) continue;
    double s = c(l, i) + c(l, j);
    double v = s * s + 2 * c(l, k);
    if (v < 2 - margin) {
      res.verdict = DegreeVerdict::Full;
      res.witness = l;
      res.value = v;
      return res;
    }
    if (!(v > 2 + margin)) all_above = false;
  }
  res.verdict = all_above ? DegreeVerdict::HalfPossible : DegreeVerdict::Undetermined;
  return res;
}

}  // namespace detail

inline FieldDegreeReport field_degree_report(const TriangleType& t, double margin = 1e-9) {
  if (t.curvature != Curvature::Hyperbolic) throw DomainError("degree report needs a hyperbolic triple");
  FieldDegreeReport rep;
  rep.type = t;
  rep.phi_ell = euler_phi(t.ell);
  rep.trace_degree = rep.phi_ell / 2;
  auto [n1, n2, n3] = t.n;
  auto verbatim = detail::embedding_scan(t.ell, n2, n3, n3, margin);
  rep.verdict = verbatim.verdict;
  rep.witness = verbatim.witness;
  rep.witness_value = verbatim.value;
  auto disc = detail::embedding_scan(t.ell, n1, n2, n3, margin);
  rep.discriminant_verdict = disc.verdict;
  rep.discriminant_witness = disc.witness;
  rep.variants_disagree = disc.verdict != verbatim.verdict;
  return rep;
}

struct BoundReport {
  TriangleType type;
  u64 phi_ell = 0;
  std::optional<u64> tetrahedra;
  BigInt ell_bound;              // 2^(2t) 3^(12t)
  bool ell_within_bound = false;
  BigInt degree_bound;           // 2^(t-1) 3^(6t)
  bool phi_within_degree_bound = false;
  std::optional<BigInt> field_size;
  BigInt ell_pow10;
  bool field_below_ell_pow10 = false;
  double field_ratio = 0;   // |F| / ell^10
  double linnik_ratio = 0;  // p / ell^5.18
};

/// Evaluates the inequalities; callers decide what to assert.
inline BoundReport bound_report(const TriangleType& t, std::optional<u64> tetrahedra,
                                const ReducedRepData* rep) {
  using boost::multiprecision::pow;
  BoundReport b;
  b.type = t;
  b.phi_ell = euler_phi(t.ell);
  b.tetrahedra = tetrahedra;
  if (tetrahedra) {
    const auto n = static_cast<unsigned>(*tetrahedra);
    b.ell_bound = pow(BigInt(2), 2 * n) * pow(BigInt(3), 12 * n);
    b.ell_within_bound = BigInt(t.ell) <= b.ell_bound;
    b.degree_bound = n == 0 ? BigInt(0) : pow(BigInt(2), n - 1) * pow(BigInt(3), 6 * n);
    b.phi_within_degree_bound = BigInt(b.phi_ell) <= b.degree_bound;
  }
  b.ell_pow10 = pow(BigInt(t.ell), 10);
  if (rep) {
    BigInt q = BigInt(rep->spec.p);
    if (rep->spec.degree == 2) q *= rep->spec.p;
    b.field_size = q;
    b.field_below_ell_pow10 = q < b.ell_pow10;
    b.field_ratio = static_cast<double>(q) / static_cast<double>(b.ell_pow10);
    b.linnik_ratio = static_cast<double>(rep->spec.p) / std::pow(static_cast<double>(t.ell), 5.18);
  }
  return b;
}

}  // namespace lenscert
