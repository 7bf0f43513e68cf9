#pragma once

// Smith normal form over the integers and the abelian group invariants it
// encodes.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lenscert/detail/text.hpp"
#include "lenscert/group.hpp"
#include "lenscert/int_matrix.hpp"

namespace lenscert {

struct SNFResult {
  std::vector<BigInt> diag;  // min(rows, cols) entries, nonnegative
  std::size_t rank = 0;
  // When requested: N = U * A * V with U, V unimodular.
  std::optional<IntMatrix> U;
  std::optional<IntMatrix> V;
};

namespace detail {

struct SnfWork {
  IntMatrix a;
  std::optional<IntMatrix> u;
  std::optional<IntMatrix> v;

  void swap_rows(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    if (u) u->swap_rows(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    if (v) v->swap_cols(i, j);
  }
  void add_row(std::size_t dst, std::size_t src, const BigInt& f) {
    a.add_row(dst, src, f);
    if (u) u->add_row(dst, src, f);
  }
  void add_col(std::size_t dst, std::size_t src, const BigInt& f) {
    a.add_col(dst, src, f);
    if (v) v->add_col(dst, src, f);
  }
  void negate_row(std::size_t r) {
    a.negate_row(r);
    if (u) u->negate_row(r);
  }
};

}  // namespace detail

/// Pivots on the smallest nonzero absolute value (first in row-major order
/// on ties) and repeats elimination until the pivot divides its whole
/// remaining submatrix.
inline SNFResult smith_normal_form(const IntMatrix& input, bool want_transforms = false) {
  detail::SnfWork w{input, std::nullopt, std::nullopt};
  const std::size_t m = input.rows();
  const std::size_t n = input.cols();
  if (want_transforms) {
    w.u = IntMatrix::identity(m);
    w.v = IntMatrix::identity(n);
  }
  auto& a = w.a;

  SNFResult res;
  const std::size_t steps = std::min(m, n);
  for (std::size_t k = 0; k < steps; ++k) {
    bool found_any = false;
    for (;;) {
      // Smallest nonzero |a_ij| in the trailing submatrix.
      std::size_t pi = 0, pj = 0;
      bool found = false;
      BigInt best;
      for (std::size_t i = k; i < m; ++i)
        for (std::size_t j = k; j < n; ++j) {
          if (a(i, j) == 0) continue;
          BigInt mag = abs(a(i, j));
          if (!found || mag < best) {
            found = true;
            best = mag;
            pi = i;
            pj = j;
          }
        }
      if (!found) break;
      found_any = true;
      w.swap_rows(k, pi);
      w.swap_cols(k, pj);

      bool clean = true;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (a(i, k) == 0) continue;
        BigInt q = a(i, k) / a(k, k);
        w.add_row(i, k, -q);
        if (a(i, k) != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (a(k, j) == 0) continue;
        BigInt q = a(k, j) / a(k, k);
        w.add_col(j, k, -q);
        if (a(k, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into row k and go again.
      std::optional<std::size_t> bad_row;
      for (std::size_t i = k + 1; i < m && !bad_row; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          if (a(i, j) % a(k, k) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      w.add_row(k, *bad_row, 1);
    }
    if (!found_any) break;
    if (a(k, k) < 0) w.negate_row(k);
  }

  res.diag.resize(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    res.diag[k] = a(k, k);
    if (a(k, k) != 0) ++res.rank;
  }
  res.U = std::move(w.u);
  res.V = std::move(w.v);
  return res;
}

/// Z^free_rank + Z/torsion[0] + Z/torsion[1] + ..., torsion a divisibility
/// chain of factors > 1.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;

  BigInt torsion_order() const {
    BigInt n = 1;
    for (const auto& d : torsion) n *= d;
    return n;
  }

  /// "Z^r + Z/d1 + Z/d2"; the trivial group is "0".
  std::string str() const {
    std::vector<std::string> parts;
    if (free_rank == 1) parts.push_back("Z");
    if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
    for (const auto& d : torsion) parts.push_back("Z/" + d.str());
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
    return out;
  }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// Inverse of AbelianGroup::str(); also accepts "Z^1" and terms in any
/// order (torsion is re-sorted into a chain only if already one).
inline AbelianGroup parse_abelian_group(std::string_view text) {
  AbelianGroup g;
  detail::LineScanner sc(text, 1);
  if (sc.accept("0")) {
    if (!sc.at_end()) sc.fail("trailing characters after trivial group");
    return g;
  }
  do {
    sc.expect("Z");
    if (sc.accept("/")) {
      auto d = sc.number();
      if (d < 2) sc.fail("torsion factor must exceed 1");
      g.torsion.emplace_back(d);
    } else if (sc.accept("^")) {
      g.free_rank += sc.number();
    } else {
      g.free_rank += 1;
    }
  } while (sc.accept("+"));
  if (!sc.at_end()) sc.fail("unexpected characters in abelian group");
  for (std::size_t i = 1; i < g.torsion.size(); ++i)
    if (g.torsion[i] % g.torsion[i - 1] != 0) sc.fail("torsion is not a divisibility chain");
  return g;
}

inline AbelianGroup abelian_group_from_snf(const SNFResult& snf, std::size_t generators) {
  AbelianGroup g;
  g.free_rank = generators - snf.rank;
  for (const auto& d : snf.diag)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

inline AbelianGroup abelianization(const GroupPresentation& pres) {
  return abelian_group_from_snf(smith_normal_form(exponent_matrix(pres)), pres.generators);
}

/// True for the trivial group, Z, and finite cyclic groups.
inline bool is_cyclic(const AbelianGroup& g) {
  if (g.free_rank == 0) return g.torsion.size() <= 1;
  return g.free_rank == 1 && g.torsion.empty();
}

/// l^r where l is the longest relator and r the relator count; bounds the
/// order of the torsion subgroup of the abelianization.
inline BigInt hadamard_torsion_bound(const GroupPresentation& pres) {
  if (pres.relators.empty()) throw DomainError("presentation has no relators");
  return boost::multiprecision::pow(BigInt(pres.max_relator_length()),
                                    static_cast<unsigned>(pres.relators.size()));
}

}  // namespace lenscert
