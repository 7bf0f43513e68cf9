#pragma once

// Closed 3-manifold triangulations: tetrahedra with face pairings, plus the
// line-based text format used on disk.
//
//   # comment
//   t=2
//   0:0 -> 1:3 perm=3012
//
// `perm=abcd` lists the images of vertices 0123 of the source tetrahedron in
// the target tetrahedron. Face k is the face opposite vertex k, so a pairing
// is well formed only when perm maps the source face number to the target
// face number. Either direction (or both) of a pairing may be listed.

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lenscert/detail/text.hpp"
#include "lenscert/error.hpp"

namespace lenscert {

/// A permutation of {0,1,2,3}, stored as the images of 0,1,2,3.
class Perm4 {
 public:
  constexpr Perm4() = default;

  static Perm4 from_images(std::array<int, 4> images) {
    std::array<bool, 4> seen{};
    for (int v : images) {
      if (v < 0 || v > 3 || seen[v])
        throw DomainError("not a permutation of 0123");
      seen[v] = true;
    }
    Perm4 p;
    for (int i = 0; i < 4; ++i) p.img_[i] = static_cast<std::uint8_t>(images[i]);
    return p;
  }

  /// Parses four digits such as "1023"; nullopt unless they form a bijection.
  static std::optional<Perm4> parse(std::string_view digits) {
    if (digits.size() != 4) return std::nullopt;
    std::array<int, 4> images{};
    std::array<bool, 4> seen{};
    for (int i = 0; i < 4; ++i) {
      int v = digits[i] - '0';
      if (v < 0 || v > 3 || seen[v]) return std::nullopt;
      seen[v] = true;
      images[i] = v;
    }
    return from_images(images);
  }

  constexpr int operator[](int i) const { return img_[i]; }

  constexpr Perm4 inverse() const {
    Perm4 p;
    for (int i = 0; i < 4; ++i) p.img_[img_[i]] = static_cast<std::uint8_t>(i);
    return p;
  }

  /// Composition: (a * b)[i] == a[b[i]].
  constexpr Perm4 operator*(const Perm4& rhs) const {
    Perm4 p;
    for (int i = 0; i < 4; ++i) p.img_[i] = img_[rhs.img_[i]];
    return p;
  }

  constexpr bool is_even() const {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (img_[i] > img_[j]) ++inversions;
    return inversions % 2 == 0;
  }

  std::string str() const {
    std::string s(4, '0');
    for (int i = 0; i < 4; ++i) s[i] = static_cast<char>('0' + img_[i]);
    return s;
  }

  /// All 24 permutations in lexicographic order of their image strings.
  static const std::array<Perm4, 24>& all() {
    static const std::array<Perm4, 24> perms = [] {
      std::array<Perm4, 24> out{};
      std::array<int, 4> images{0, 1, 2, 3};
      std::size_t k = 0;
      do {
        out[k++] = from_images(images);
      } while (std::next_permutation(images.begin(), images.end()));
      return out;
    }();
    return perms;
  }

  friend constexpr auto operator<=>(const Perm4&, const Perm4&) = default;

 private:
  std::array<std::uint8_t, 4> img_{0, 1, 2, 3};
};

/// A face slot: face `face` (opposite vertex `face`) of tetrahedron `tet`.
struct FaceRef {
  std::size_t tet = 0;
  int face = 0;

  friend constexpr auto operator<=>(const FaceRef&, const FaceRef&) = default;
};

struct FacePairing {
  FaceRef source;
  FaceRef target;
  Perm4 perm;

  friend constexpr bool operator==(const FacePairing&, const FacePairing&) = default;
};

/// Index of the edge joining local vertices v and w (v != w) in the order
/// 01, 02, 03, 12, 13, 23.
constexpr int edge_index(int v, int w) {
  if (v > w) std::swap(v, w);
  constexpr int table[4][4] = {
      {-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  return table[v][w];
}

/// Endpoints (low, high) of a local edge index.
constexpr std::array<int, 2> edge_vertices(int e) {
  constexpr int table[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  return {table[e][0], table[e][1]};
}

/// The three vertices of face f, ascending.
constexpr std::array<int, 3> face_vertices(int f) {
  std::array<int, 3> out{};
  int k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != f) out[k++] = v;
  return out;
}

/// An immutable, fully glued triangulation. Every one of the 4t face slots
/// is paired with a distinct slot and the stored pairings form an
/// involution.
class Triangulation {
  struct Slot {
    FaceRef target;
    Perm4 perm;
  };

 public:
  Triangulation() = default;

  static Triangulation from_pairings(std::size_t tetrahedra,
                                     std::span<const FacePairing> pairings) {
    Builder b(tetrahedra);
    for (const auto& p : pairings) b.add(p);
    return b.finish();
  }

  std::size_t size() const { return slots_.size(); }

  FaceRef partner(FaceRef f) const { return slot(f).target; }

  /// Vertex map from f.tet into partner(f).tet.
  Perm4 gluing(FaceRef f) const { return slot(f).perm; }

  /// One pairing per glued pair, with source < target, sorted by source.
  std::vector<FacePairing> pairings() const {
    std::vector<FacePairing> out;
    for (std::size_t t = 0; t < size(); ++t)
      for (int f = 0; f < 4; ++f) {
        const Slot& s = slots_[t][f];
        FaceRef src{t, f};
        if (src < s.target) out.push_back({src, s.target, s.perm});
      }
    return out;
  }

  /// The same triangulation with tetrahedron i renamed to new_index[i].
  Triangulation relabeled(std::span<const std::size_t> new_index) const {
    if (new_index.size() != size())
      throw DomainError("relabeling has wrong length");
    std::vector<FacePairing> moved;
    for (const auto& p : pairings())
      moved.push_back({{new_index[p.source.tet], p.source.face},
                       {new_index[p.target.tet], p.target.face},
                       p.perm});
    return from_pairings(size(), moved);
  }

  friend bool operator==(const Triangulation& a, const Triangulation& b) {
    return a.size() == b.size() && a.pairings() == b.pairings();
  }

  /// Incremental construction used by from_pairings() and the parser.
  class Builder {
   public:
    explicit Builder(std::size_t tetrahedra)
        : slots_(tetrahedra), set_(tetrahedra, {false, false, false, false}) {
      if (tetrahedra == 0) throw TriangulationError("triangulation has no tetrahedra");
    }

    void add(const FacePairing& p) {
      check_ref(p.source);
      check_ref(p.target);
      if (p.source == p.target)
        throw TriangulationError("face " + describe(p.source) + " glued to itself");
      if (p.perm[p.source.face] != p.target.face)
        throw TriangulationError(
            "perm does not carry face " + describe(p.source) + " onto face " +
            describe(p.target));
      place(p.source, p.target, p.perm);
      place(p.target, p.source, p.perm.inverse());
    }

    Triangulation finish() const {
      for (std::size_t t = 0; t < slots_.size(); ++t)
        for (int f = 0; f < 4; ++f)
          if (!set_[t][f])
            throw TriangulationError("face " + describe({t, f}) + " is not glued");
      Triangulation tri;
      tri.slots_ = slots_;
      return tri;
    }

   private:
    void check_ref(FaceRef f) const {
      if (f.tet >= slots_.size() || f.face < 0 || f.face > 3)
        throw TriangulationError("face " + describe(f) + " out of range");
    }

    void place(FaceRef from, FaceRef to, Perm4 perm) {
      Slot& s = slots_[from.tet][from.face];
      if (set_[from.tet][from.face]) {
        if (s.target != to || s.perm != perm)
          throw TriangulationError("pairing is not an involution at face " +
                                   describe(from));
        return;
      }
      s = {to, perm};
      set_[from.tet][from.face] = true;
    }

    std::vector<std::array<Slot, 4>> slots_;
    std::vector<std::array<bool, 4>> set_;
  };

  static std::string describe(FaceRef f) {
    return std::to_string(f.tet) + ":" + std::to_string(f.face);
  }

 private:
  const Slot& slot(FaceRef f) const {
    if (f.tet >= size() || f.face < 0 || f.face > 3)
      throw DomainError("face " + describe(f) + " out of range");
    return slots_[f.tet][f.face];
  }

  std::vector<std::array<Slot, 4>> slots_;
};


/// Parses the triangulation text format. Syntax problems raise ParseError
/// with a line and column; gluing inconsistencies raise TriangulationError
/// prefixed with the offending line.
inline Triangulation parse_triangulation(std::string_view text) {
  std::optional<Triangulation::Builder> builder;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    auto raw = text.substr(start, nl == std::string_view::npos ? text.size() - start
                                                                : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    detail::LineScanner sc(detail::strip_comment(raw), line_no);
    if (sc.at_end()) continue;
    if (!builder) {
      sc.expect("t");
      sc.expect("=");
      auto t = sc.number();
      if (!sc.at_end()) sc.fail("trailing characters after tetrahedron count");
      if (t == 0) sc.fail("tetrahedron count must be positive");
      builder.emplace(t);
      continue;
    }
    FacePairing p;
    p.source.tet = sc.number();
    sc.expect(":");
    p.source.face = static_cast<int>(sc.number());
    sc.expect("->");
    p.target.tet = sc.number();
    sc.expect(":");
    p.target.face = static_cast<int>(sc.number());
    sc.expect("perm");
    sc.expect("=");
    auto digits = sc.chars(4);
    auto perm = Perm4::parse(digits);
    if (!perm) sc.fail("perm must list the images of 0123 as four distinct digits 0-3");
    p.perm = *perm;
    if (!sc.at_end()) sc.fail("trailing characters after gluing");
    try {
      builder->add(p);
    } catch (const TriangulationError& e) {
      throw TriangulationError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!builder) throw ParseError("missing 't=<N>' header", 0, 0);
  return builder->finish();
}

/// Canonical text form: header plus one line per pairing (source < target).
inline std::string to_text(const Triangulation& tri) {
  std::ostringstream out;
  out << "t=" << tri.size() << "\n";
  for (const auto& p : tri.pairings())
    out << p.source.tet << ":" << p.source.face << " -> " << p.target.tet << ":"
        << p.target.face << " perm=" << p.perm.str() << "\n";
  return out.str();
}

}  // namespace lenscert
