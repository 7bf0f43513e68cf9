#pragma once

// End-to-end certificate construction for a triangulated small Seifert
// fiber space: first try a non-cyclic abelian quotient of H_1, then fall
// back to a finite image of the base triangle group, pulled back along a
// caller-supplied surjection when one is given.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lenscert/certificate.hpp"
#include "lenscert/error.hpp"
#include "lenscert/group.hpp"
#include "lenscert/orientation.hpp"
#include "lenscert/presentation.hpp"
#include "lenscert/smith.hpp"
#include "lenscert/trianglerep.hpp"
#include "lenscert/triangulation.hpp"
#include "lenscert/validation.hpp"

namespace lenscert {

/// Reads `gen <name> -> <word in x, y>` lines, one per generator of `pres`
/// in order.
inline std::vector<Word> parse_surjection(std::string_view text, const GroupPresentation& pres) {
  const std::map<std::string, std::size_t> target{{"x", 0}, {"y", 1}};
  detail::Lines lines(text);
  std::vector<Word> out;
  for (std::size_t i = 0; i < pres.generators; ++i) {
    auto sc = lines.next("a surjection line");
    sc.expect("gen");
    auto col = sc.column();
    if (sc.identifier() != pres.label(i))
      throw ParseError("expected image of generator '" + pres.label(i) + "'", sc.line_number(), col);
    sc.expect("->");
    out.push_back(detail::parse_word(sc, target));
    if (!sc.at_end()) sc.fail("trailing characters after word");
  }
  if (!lines.done()) lines.next("end of input").fail("unexpected trailing line");
  return out;
}

/// Non-cyclic abelian certificate read off the Smith form of the exponent
/// matrix, or nullopt when H_1 is cyclic. With N = U A V, generator k
/// maps to row k of V in the invariant-factor coordinates.
inline std::optional<Certificate> abelian_certificate(const GroupPresentation& pres) {
  const auto A = exponent_matrix(pres);
  auto snf = smith_normal_form(A, true);
  const auto& V = *snf.V;
  const std::size_t g = pres.generators;

  std::vector<std::size_t> torsion, free;
  for (std::size_t i = 0; i < g; ++i) {
    BigInt n = i < snf.diag.size() ? snf.diag[i] : BigInt(0);
    if (n == 0)
      free.push_back(i);
    else if (n > 1)
      torsion.push_back(i);
  }

  std::array<std::size_t, 2> coord{};
  std::array<u64, 2> mod{};
  auto diag_at = [&](std::size_t i) { return static_cast<u64>(snf.diag[i]); };
  if (torsion.size() >= 2) {
    coord = {torsion[0], torsion[1]};
    mod = {diag_at(torsion[0]), diag_at(torsion[1])};
  } else if (torsion.size() == 1 && !free.empty()) {
    coord = {torsion[0], free[0]};
    mod = {diag_at(torsion[0]), diag_at(torsion[0])};
  } else if (free.size() >= 2) {
    coord = {free[0], free[1]};
    mod = {2, 2};
  } else {
    return std::nullopt;
  }

  Certificate c;
  c.kind = CertificateKind::NonCyclicAbelian;
  c.presentation = pres;
  c.target = mod;
  for (std::size_t k = 0; k < g; ++k) {
    std::array<u64, 2> v{};
    for (int j = 0; j < 2; ++j) {
      BigInt r = V(k, coord[j]) % mod[j];
      if (r < 0) r += mod[j];
      v[j] = static_cast<u64>(r);
    }
    c.vectors.push_back(v);
  }
  return c;
}

namespace detail {

/// Pulls a triangle-group certificate back to `pres` along `surj`.
inline Certificate pull_back(const Certificate& tri_cert, const GroupPresentation& pres,
                             const std::vector<Word>& surj) {
  Certificate c = tri_cert;
  c.orbifold_level = false;
  c.presentation = pres;
  if (tri_cert.kind == CertificateKind::NonCyclicAbelian) {
    c.vectors.clear();
    for (const auto& w : surj) {
      std::array<long long, 2> v{0, 0};
      for (const auto& l : w.letters())
        for (int j = 0; j < 2; ++j) v[j] += l.exp * static_cast<long long>(tri_cert.vectors[l.gen][j]);
      std::array<u64, 2> r{};
      for (int j = 0; j < 2; ++j) {
        long long m = static_cast<long long>(c.target[j]);
        r[j] = static_cast<u64>(((v[j] % m) + m) % m);
      }
      c.vectors.push_back(r);
    }
    return c;
  }

  c.surjection = surj;
  std::vector<ProjMatrix> images;
  for (const auto& w : surj) images.push_back(evaluate_word(c.field, c.matrices, w));
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (!(images[i] * images[j] == images[j] * images[i])) {
        c.witness_left = Word({{i, 1}, {j, 1}});
        c.witness_right = Word({{j, 1}, {i, 1}});
        return c;
      }
  throw DomainError("the pulled-back image is abelian; the map is not onto the triangle group");
}

}  // namespace detail

struct PipelineResult {
  AbelianGroup homology;
  int step = 1;  // 1: abelian quotient of H_1, 2: triangle group image
  std::optional<TriangleType> type;
  std::optional<ReducedRepData> rep;
  Certificate certificate;
};

/// Validates and orients `tri`, then builds a certificate. `base` is the
/// caller's claim about the base orbifold; it is not checked. Without a
/// surjection the step-2 certificate is orbifold-level unless
/// `require_manifold_level` is set, in which case that is an error.
inline PipelineResult pipeline(const Triangulation& tri, std::optional<std::array<u64, 3>> base,
                               const std::optional<std::vector<Word>>& surjection,
                               bool require_manifold_level = false, u64 ceiling = 1'000'000'000) {
  auto report = validate(tri);
  if (!report.ok()) throw TriangulationError("not a closed 3-manifold: " + report.failure());
  if (!orientation_check(tri).orientable) throw DomainError("triangulation is non-orientable");

  PipelineResult out;
  const auto pres = fundamental_group(tri);
  out.homology = abelianization(pres);
  if (auto c = abelian_certificate(pres)) {
    out.certificate = std::move(*c);
  } else {
    if (!base) throw DomainError("H_1 is cyclic; a base orbifold triple is required");
    out.step = 2;
    out.type = classify((*base)[0], (*base)[1], (*base)[2]);
    Certificate tri_cert;
    if (out.type->curvature == Curvature::Hyperbolic && out.type->d == 1) {
      out.rep = build_hyperbolic_rep(*out.type, std::nullopt, ceiling);
      tri_cert = hyperbolic_certificate(*out.rep);
    } else {
      tri_cert = build_nonhyperbolic_cert(*out.type);
    }
    if (surjection) {
      if (surjection->size() != pres.generators) throw DomainError("surjection must map every generator");
      out.certificate = detail::pull_back(tri_cert, pres, *surjection);
    } else if (require_manifold_level) {
      throw DomainError("a surjection onto the triangle group is required for a manifold-level certificate");
    } else {
      out.certificate = std::move(tri_cert);
    }
  }

  auto check = verify(out.certificate);
  if (!check.accepted) throw DomainError("constructed certificate does not verify: " + check.reason);
  return out;
}

}  // namespace lenscert
