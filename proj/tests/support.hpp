#pragma once

// Shared helpers for the test binaries: fixture access and brute-force
// oracles that deliberately avoid the library's own algorithms.

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lenscert/lenscert.hpp"

namespace testsupport {

using lenscert::u64;

inline std::filesystem::path fixture_dir() { return LENSCERT_FIXTURE_DIR; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture_text(const std::string& name) { return slurp(fixture_dir() / name); }

inline nlohmann::json fixture_meta(const std::string& name) {
  return nlohmann::json::parse(fixture_text(name + ".json"));
}

inline lenscert::Triangulation fixture_tri(const std::string& name) {
  return lenscert::parse_triangulation(fixture_text(name + ".tri"));
}

/// Every fixture that has a .tri file, sorted by name.
inline std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(fixture_dir()))
    if (e.path().extension() == ".tri") out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

/// Reads the reference tool's homology strings: "0", "Z_7", "Z + 2 Z_2".
inline lenscert::AbelianGroup parse_reference_homology(const std::string& s) {
  lenscert::AbelianGroup g;
  if (s == "0") return g;
  std::stringstream ss(s);
  std::string term;
  while (std::getline(ss, term, '+')) {
    term.erase(0, term.find_first_not_of(' '));
    term.erase(term.find_last_not_of(' ') + 1);
    int mult = 1;
    if (auto sp = term.find(' '); sp != std::string::npos) {
      mult = std::stoi(term.substr(0, sp));
      term = term.substr(sp + 1);
    }
    for (int k = 0; k < mult; ++k) {
      if (term == "Z")
        ++g.free_rank;
      else
        g.torsion.emplace_back(std::stoll(term.substr(2)));
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Smith normal form oracle: d_k = gcd of k x k minors, s_k = d_k / d_{k-1}.

using SmallMatrix = std::vector<std::vector<long long>>;

inline long long cofactor_det(const SmallMatrix& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  long long total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    SmallMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    long long term = m[0][c] * cofactor_det(minor);
    total += (c % 2 == 0) ? term : -term;
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

/// Nonzero invariant factors, ascending.
inline std::vector<long long> invariant_factors_by_minors(const SmallMatrix& a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<long long> out;
  long long prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(rows, k, rs);
    subsets(cols, k, cs);
    long long g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        SmallMatrix m(k, std::vector<long long>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m[i][j] = a[r[i]][c[j]];
        g = std::gcd(g, cofactor_det(m));
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

inline lenscert::IntMatrix to_int_matrix(const SmallMatrix& a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  lenscert::IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = a[i][j];
  return m;
}

// ---------------------------------------------------------------------------
// Orientability oracle over all 2^t sign assignments.

inline bool odd_permutation(const lenscert::Perm4& p) {
  int inversions = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 1;
}

/// A gluing preserves orientation of the glued pair exactly when the signs
/// agree and the permutation is odd, or they differ and it is even.
inline bool orientable_by_exhaustion(const lenscert::Triangulation& tri) {
  const std::size_t t = tri.size();
  const auto pairs = tri.pairings();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
    bool ok = true;
    for (const auto& p : pairs) {
      bool same = ((mask >> p.source.tet) & 1) == ((mask >> p.target.tet) & 1);
      if (same != odd_permutation(p.perm)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

/// A connected, fully glued table with t tetrahedra. Face slots are paired
/// by a random perfect matching; each pairing gets a random permutation
/// sending the source face to the target face. With `orientable` set, the
/// permutations respect a random sign per tetrahedron.
inline lenscert::Triangulation random_gluing(std::size_t t, std::mt19937_64& rng, bool orientable = false) {
  using namespace lenscert;
  for (;;) {
    std::vector<bool> sign(t);
    for (std::size_t i = 0; i < t; ++i) sign[i] = rng() & 1;
    std::vector<FaceRef> slots;
    for (std::size_t i = 0; i < t; ++i)
      for (int f = 0; f < 4; ++f) slots.push_back({i, f});
    std::shuffle(slots.begin(), slots.end(), rng);
    std::vector<FacePairing> pairs;
    for (std::size_t k = 0; k < slots.size(); k += 2) {
      FaceRef a = slots[k], b = slots[k + 1];
      std::vector<Perm4> options;
      for (const auto& p : Perm4::all())
        if (p[a.face] == b.face && (!orientable || (sign[a.tet] == sign[b.tet]) == odd_permutation(p)))
          options.push_back(p);
      std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
      pairs.push_back({a, b, options[pick(rng)]});
    }
    auto tri = Triangulation::from_pairings(t, pairs);
    if (is_connected(tri)) return tri;
  }
}

inline std::vector<std::size_t> random_relabeling(std::size_t t, std::mt19937_64& rng) {
  std::vector<std::size_t> idx(t);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  return idx;
}

// ---------------------------------------------------------------------------
// Projective order by repeated multiplication.

inline u64 order_by_powering(const lenscert::ProjMatrix& m, u64 cap) {
  auto acc = m;
  for (u64 k = 1; k <= cap; ++k) {
    if (acc.is_identity()) return k;
    acc = acc * m;
  }
  return 0;
}

}  // namespace testsupport
