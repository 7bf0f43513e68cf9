#pragma once

// Words and finite group presentations.
//
// Text form of a presentation:
//
//   gens 2 x y
//   rels 3
//   x x
//   y y y
//   x y x y x y x y x y x y x y
//
// Generator names after the count are optional (default x0, x1, ...). Each
// relator is a whitespace-separated list of letters `name` or `name^k`; a
// lone `1` is the empty word.

#include <cstddef>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lenscert/detail/text.hpp"
#include "lenscert/error.hpp"
#include "lenscert/int_matrix.hpp"

namespace lenscert {

struct Letter {
  std::size_t gen = 0;
  int exp = 1;  // +1 or -1

  friend constexpr bool operator==(const Letter&, const Letter&) = default;
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word generator(std::size_t gen, int exp = 1) { return Word({{gen, exp}}); }

  /// gen^k as |k| letters.
  static Word power(std::size_t gen, long long k) {
    std::vector<Letter> out;
    for (long long i = 0; i < std::llabs(k); ++i) out.push_back({gen, k < 0 ? -1 : 1});
    return Word(std::move(out));
  }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    for (auto& l : out) l.exp = -l.exp;
    return Word(std::move(out));
  }

  /// Free reduction: cancels adjacent x x^-1 pairs until none remain.
  Word reduced() const {
    std::vector<Letter> out;
    for (const auto& l : letters_) {
      if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
        out.pop_back();
      else
        out.push_back(l);
    }
    return Word(std::move(out));
  }

  Word& operator*=(const Word& rhs) {
    letters_.insert(letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
    return *this;
  }

  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

struct GroupPresentation {
  std::size_t generators = 0;
  std::vector<Word> relators;
  std::vector<std::string> labels;  // empty means x0, x1, ...

  std::string label(std::size_t gen) const {
    return labels.empty() ? "x" + std::to_string(gen) : labels.at(gen);
  }

  /// Generator count plus total relator length.
  std::size_t size() const {
    std::size_t n = generators;
    for (const auto& w : relators) n += w.size();
    return n;
  }

  std::size_t max_relator_length() const {
    std::size_t l = 0;
    for (const auto& w : relators) l = std::max(l, w.size());
    return l;
  }

  std::map<std::string, std::size_t> name_index() const {
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < generators; ++i) idx[label(i)] = i;
    return idx;
  }

  void check() const {
    if (!labels.empty() && labels.size() != generators)
      throw DomainError("label count does not match generator count");
    if (name_index().size() != generators) throw DomainError("duplicate generator name");
    for (const auto& w : relators)
      for (const auto& l : w.letters())
        if (l.gen >= generators || (l.exp != 1 && l.exp != -1))
          throw DomainError("relator letter out of range");
  }

  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

inline std::string word_to_string(const Word& w, const GroupPresentation& pres) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += pres.label(l.gen);
    if (l.exp < 0) out += "^-1";
  }
  return out;
}

namespace detail {

inline Word parse_word(LineScanner& sc, const std::map<std::string, std::size_t>& names) {
  std::vector<Letter> letters;
  if (sc.accept("1")) {
    if (!sc.at_end() && !sc.peek('|')) sc.fail("identity word '1' must stand alone");
    return Word();
  }
  while (!sc.at_end() && !sc.peek('|')) {
    auto col = sc.column();
    auto name = sc.identifier();
    auto it = names.find(name);
    if (it == names.end()) throw ParseError("unknown generator '" + name + "'", sc.line_number(), col);
    long long k = 1;
    if (sc.accept("^")) {
      k = sc.signed_number();
      if (k == 0) sc.fail("zero exponent");
    }
    for (long long i = 0; i < std::llabs(k); ++i)
      letters.push_back({it->second, k < 0 ? -1 : 1});
  }
  if (letters.empty()) sc.fail("empty word (write 1 for the identity)");
  return Word(std::move(letters));
}

inline GroupPresentation parse_presentation_block(Lines& lines) {
  GroupPresentation pres;
  auto sc = lines.next("'gens'");
  sc.expect("gens");
  pres.generators = sc.number();
  while (!sc.at_end()) pres.labels.push_back(sc.identifier());
  if (!pres.labels.empty() && pres.labels.size() != pres.generators)
    sc.fail("expected " + std::to_string(pres.generators) + " generator names");
  if (pres.name_index().size() != pres.generators) sc.fail("duplicate generator name");

  auto rc = lines.next("'rels'");
  rc.expect("rels");
  auto r = rc.number();
  if (!rc.at_end()) rc.fail("trailing characters after relator count");
  auto names = pres.name_index();
  for (std::size_t i = 0; i < r; ++i) {
    auto wl = lines.next("a relator");
    pres.relators.push_back(parse_word(wl, names));
    if (!wl.at_end()) wl.fail("trailing characters after relator");
  }
  return pres;
}

}  // namespace detail

inline std::string serialize_presentation(const GroupPresentation& pres) {
  std::ostringstream out;
  out << "gens " << pres.generators;
  for (const auto& l : pres.labels) out << " " << l;
  out << "\nrels " << pres.relators.size() << "\n";
  for (const auto& w : pres.relators) out << word_to_string(w, pres) << "\n";
  return out.str();
}

inline GroupPresentation parse_presentation(std::string_view text) {
  detail::Lines lines(text);
  auto pres = detail::parse_presentation_block(lines);
  if (!lines.done()) lines.next("end of input").fail("unexpected trailing line");
  return pres;
}

/// Signed exponent sum of generator k in relator j, as an r x g matrix.
inline IntMatrix exponent_matrix(const GroupPresentation& pres) {
  IntMatrix m(pres.relators.size(), pres.generators);
  for (std::size_t j = 0; j < pres.relators.size(); ++j)
    for (const auto& l : pres.relators[j].letters()) m(j, l.gen) += l.exp;
  return m;
}

/// The triangle group <x, y | x^n1, y^n2, (xy)^n3>.
inline GroupPresentation triangle_group_presentation(long long n1, long long n2, long long n3) {
  GroupPresentation pres;
  pres.generators = 2;
  pres.labels = {"x", "y"};
  Word xy({{0, 1}, {1, 1}});
  Word xyn;
  for (long long i = 0; i < n3; ++i) xyn *= xy;
  pres.relators = {Word::power(0, n1), Word::power(1, n2), xyn};
  return pres;
}

}  // namespace lenscert
