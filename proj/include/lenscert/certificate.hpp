#pragma once

// "Not a lens space" certificates: a non-cyclic abelian quotient, or a
// non-abelian image in PSL(2, F). Text form:
//
//   lenscert v1
//   kind NonAbelianRep
//   level orbifold                      (optional)
//   gens 2 a b
//   rels 1
//   a b a^-1 b^-1 a b a b^-1 a^-1 b^-1
//   field p=5 deg=2 s=2
//   gen a = [[2,0],[0,3]]
//   gen b = [[2,3],[0,3]]
//   surjection                          (optional)
//   gen a -> x y
//   witness a b | b a
//
// With a surjection block the matrix lines name the generators of an
// intermediate group, and each presentation generator maps to a word in
// them. Witness words are always in the presentation's generators.
//
//   lenscert v1
//   kind NonCyclicAbelian
//   gens 2 x y
//   rels 3
//   ...
//   target Z/3 x Z/3
//   gen x = (1,0)
//   gen y = (0,1)

#include <array>
#include <bit>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lenscert/detail/text.hpp"
#include "lenscert/error.hpp"
#include "lenscert/galois.hpp"
#include "lenscert/group.hpp"
#include "lenscert/projmat.hpp"
#include "lenscert/smith.hpp"

namespace lenscert {

enum class CertificateKind { NonCyclicAbelian, NonAbelianRep };

inline const char* kind_name(CertificateKind k) {
  return k == CertificateKind::NonCyclicAbelian ? "NonCyclicAbelian" : "NonAbelianRep";
}

struct Certificate {
  CertificateKind kind = CertificateKind::NonAbelianRep;
  bool orbifold_level = false;
  GroupPresentation presentation;

  // NonCyclicAbelian: target Z/target[0] x Z/target[1], one vector per
  // presentation generator.
  std::array<u64, 2> target{0, 0};
  std::vector<std::array<u64, 2>> vectors;

  // NonAbelianRep.
  FieldSpec field;
  std::vector<std::string> image_names;
  std::vector<ProjMatrix> matrices;
  std::optional<std::vector<Word>> surjection;  // per presentation generator
  Word witness_left;
  Word witness_right;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct VerificationReport {
  bool accepted = false;
  std::string reason;              // empty when accepted
  std::size_t relators_checked = 0;
  std::size_t mat_mults = 0;       // relator checking only
  std::size_t total_mat_mults = 0; // including generator and witness images
  std::size_t field_ops = 0;       // 12 per matrix product; one per modular add
  std::size_t matrix_bits = 0;     // per matrix
  std::size_t total_bits = 0;      // all generator images
};

namespace detail {

inline std::string word_in(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += names.at(l.gen);
    if (l.exp < 0) out += "^-1";
  }
  return out;
}

inline std::vector<std::string> labels_of(const GroupPresentation& pres) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < pres.generators; ++i) names.push_back(pres.label(i));
  return names;
}

/// Substitutes a word for each generator.
inline Word push_through(const Word& w, const std::vector<Word>& images) {
  Word out;
  for (const auto& l : w.letters()) out *= l.exp > 0 ? images.at(l.gen) : images.at(l.gen).inverse();
  return out;
}

}  // namespace detail

inline std::string serialize_certificate(const Certificate& c) {
  std::ostringstream out;
  out << "lenscert v1\n";
  out << "kind " << kind_name(c.kind) << "\n";
  if (c.orbifold_level) out << "level orbifold\n";
  out << serialize_presentation(c.presentation);
  const auto names = detail::labels_of(c.presentation);
  if (c.kind == CertificateKind::NonCyclicAbelian) {
    out << "target Z/" << c.target[0] << " x Z/" << c.target[1] << "\n";
    for (std::size_t i = 0; i < c.vectors.size(); ++i)
      out << "gen " << names.at(i) << " = (" << c.vectors[i][0] << "," << c.vectors[i][1] << ")\n";
    return out.str();
  }
  out << "field p=" << c.field.p << " deg=" << c.field.degree;
  if (c.field.degree == 2) out << " s=" << c.field.s;
  out << "\n";
  for (std::size_t i = 0; i < c.matrices.size(); ++i)
    out << "gen " << c.image_names.at(i) << " = " << c.matrices[i].str() << "\n";
  if (c.surjection) {
    out << "surjection\n";
    for (std::size_t i = 0; i < c.surjection->size(); ++i)
      out << "gen " << names.at(i) << " -> " << detail::word_in((*c.surjection)[i], c.image_names)
          << "\n";
  }
  out << "witness " << detail::word_in(c.witness_left, names) << " | "
      << detail::word_in(c.witness_right, names) << "\n";
  return out.str();
}

namespace detail {

inline FieldSpec parse_field_line(LineScanner& sc) {
  sc.expect("field");
  sc.expect("p=");
  auto col = sc.column();
  FieldSpec f;
  f.p = sc.number();
  sc.expect("deg=");
  f.degree = static_cast<int>(sc.number());
  if (f.degree == 2) {
    sc.expect("s=");
    f.s = sc.number();
  }
  if (!sc.at_end()) sc.fail("trailing characters after field line");
  try {
    f.check();
  } catch (const ArithmeticError& e) {
    throw ParseError(e.what(), sc.line_number(), col);
  }
  return f;
}

}  // namespace detail

inline Certificate parse_certificate(std::string_view text) {
  detail::Lines lines(text);
  Certificate c;
  {
    auto sc = lines.next("header");
    sc.expect("lenscert");
    sc.expect("v1");
    if (!sc.at_end()) sc.fail("unsupported certificate version");
  }
  {
    auto sc = lines.next("'kind'");
    sc.expect("kind");
    auto k = sc.identifier();
    if (k == "NonCyclicAbelian")
      c.kind = CertificateKind::NonCyclicAbelian;
    else if (k == "NonAbelianRep")
      c.kind = CertificateKind::NonAbelianRep;
    else
      sc.fail("unknown certificate kind '" + k + "'");
    if (!sc.at_end()) sc.fail("trailing characters after kind");
  }
  if (!lines.done() && lines.peek().accept("level")) {
    auto sc = lines.next("'level'");
    sc.expect("level");
    sc.expect("orbifold");
    if (!sc.at_end()) sc.fail("trailing characters after level");
    c.orbifold_level = true;
  }
  c.presentation = detail::parse_presentation_block(lines);
  const auto names = detail::labels_of(c.presentation);
  const auto pres_index = c.presentation.name_index();
  const std::size_t g = c.presentation.generators;

  if (c.kind == CertificateKind::NonCyclicAbelian) {
    auto sc = lines.next("'target'");
    sc.expect("target");
    sc.expect("Z/");
    c.target[0] = sc.number();
    sc.expect("x");
    sc.expect("Z/");
    c.target[1] = sc.number();
    if (c.target[0] < 2 || c.target[1] < 2) sc.fail("target factors must exceed 1");
    if (!sc.at_end()) sc.fail("trailing characters after target");
    for (std::size_t i = 0; i < g; ++i) {
      auto gl = lines.next("a generator image");
      gl.expect("gen");
      auto col = gl.column();
      if (gl.identifier() != names[i])
        throw ParseError("expected image of generator '" + names[i] + "'", gl.line_number(), col);
      gl.expect("=");
      gl.expect("(");
      std::array<u64, 2> v{};
      v[0] = gl.number();
      gl.expect(",");
      v[1] = gl.number();
      gl.expect(")");
      if (v[0] >= c.target[0] || v[1] >= c.target[1]) gl.fail("image not reduced mod the target");
      if (!gl.at_end()) gl.fail("trailing characters after generator image");
      c.vectors.push_back(v);
    }
  } else {
    auto fl = lines.next("'field'");
    c.field = detail::parse_field_line(fl);

    while (!lines.done()) {
      auto probe = lines.peek();
      if (!probe.accept("gen")) break;
      probe.identifier();
      if (!probe.accept("=")) break;
      auto gl = lines.next("a generator image");
      gl.expect("gen");
      c.image_names.push_back(gl.identifier());
      gl.expect("=");
      c.matrices.push_back(detail::parse_proj_matrix(gl, c.field));
      if (!gl.at_end()) gl.fail("trailing characters after matrix");
    }
    std::map<std::string, std::size_t> image_index;
    for (std::size_t i = 0; i < c.image_names.size(); ++i)
      if (!image_index.emplace(c.image_names[i], i).second)
        throw ParseError("duplicate image generator '" + c.image_names[i] + "'", 0, 0);

    if (!lines.done() && lines.peek().accept("surjection")) {
      auto sl = lines.next("'surjection'");
      sl.expect("surjection");
      if (!sl.at_end()) sl.fail("trailing characters after 'surjection'");
      std::vector<Word> words;
      for (std::size_t i = 0; i < g; ++i) {
        auto wl = lines.next("a surjection line");
        wl.expect("gen");
        auto col = wl.column();
        if (wl.identifier() != names[i])
          throw ParseError("expected surjection image of '" + names[i] + "'", wl.line_number(), col);
        wl.expect("->");
        words.push_back(detail::parse_word(wl, image_index));
        if (!wl.at_end()) wl.fail("trailing characters after word");
      }
      c.surjection = std::move(words);
    } else if (c.image_names != names) {
      auto sc = lines.done() ? detail::LineScanner("", 0) : lines.peek();
      throw ParseError("matrix generators must match the presentation without a surjection block",
                       sc.line_number(), 1);
    }

    auto wl = lines.next("'witness'");
    wl.expect("witness");
    c.witness_left = detail::parse_word(wl, pres_index);
    wl.expect("|");
    c.witness_right = detail::parse_word(wl, pres_index);
    if (!wl.at_end()) wl.fail("trailing characters after witness");
  }
  if (!lines.done()) lines.next("end of input").fail("unexpected trailing line");
  return c;
}

namespace detail {

inline VerificationReport verify_abelian(const Certificate& c) {
  VerificationReport rep;
  const auto& pres = c.presentation;
  const u64 a = c.target[0], b = c.target[1];
  if (a < 2 || b < 2) throw DomainError("target factors must exceed 1");
  if (c.vectors.size() != pres.generators) throw DomainError("one image per generator required");
  const std::size_t per = std::bit_width(a - 1) + std::bit_width(b - 1);
  rep.matrix_bits = per;
  rep.total_bits = per * c.vectors.size();

  for (std::size_t j = 0; j < pres.relators.size(); ++j) {
    BigInt u = 0, v = 0;
    for (const auto& l : pres.relators[j].letters()) {
      u += l.exp * BigInt(c.vectors.at(l.gen)[0]);
      v += l.exp * BigInt(c.vectors.at(l.gen)[1]);
      rep.field_ops += 2;
    }
    ++rep.relators_checked;
    if (u % a != 0 || v % b != 0) {
      rep.reason = "relator " + std::to_string(j + 1) + " does not vanish in the target";
      return rep;
    }
  }

  // Image subgroup H = L / (aZ + bZ) with L spanned by the lifted images
  // and (a,0), (0,b); |H| = ab / [Z^2 : L]. H is cyclic iff its exponent
  // (lcm of the image orders) equals |H|.
  IntMatrix gens(2, c.vectors.size() + 2);
  for (std::size_t i = 0; i < c.vectors.size(); ++i) {
    gens(0, i) = c.vectors[i][0];
    gens(1, i) = c.vectors[i][1];
  }
  gens(0, c.vectors.size()) = a;
  gens(1, c.vectors.size() + 1) = b;
  auto snf = smith_normal_form(gens);
  BigInt index = snf.diag[0] * snf.diag[1];
  BigInt order = BigInt(a) * b / index;
  BigInt exponent = 1;
  for (const auto& v : c.vectors) {
    BigInt ou = BigInt(a) / std::gcd(v[0], a);
    BigInt ov = BigInt(b) / std::gcd(v[1], b);
    BigInt o = ou / gcd(ou, ov) * ov;
    exponent = exponent / gcd(exponent, o) * o;
  }
  if (exponent == order) {
    rep.reason = "generator images span a cyclic subgroup of order " + order.str();
    return rep;
  }
  rep.accepted = true;
  return rep;
}

inline VerificationReport verify_rep(const Certificate& c) {
  VerificationReport rep;
  const auto& pres = c.presentation;
  if (c.matrices.empty()) throw DomainError("certificate has no generator images");
  for (const auto& m : c.matrices)
    if (!(m.spec() == c.field)) throw DomainError("matrix over the wrong field");
  rep.matrix_bits = bit_size(c.field);
  rep.total_bits = rep.matrix_bits * c.matrices.size();

  std::vector<Word> gen_words;
  if (c.surjection) {
    if (c.surjection->size() != pres.generators) throw DomainError("surjection must map every generator");
    gen_words = *c.surjection;
  } else {
    if (c.matrices.size() != pres.generators) throw DomainError("one matrix per generator required");
    for (std::size_t i = 0; i < pres.generators; ++i) gen_words.push_back(Word::generator(i));
  }

  OpCounter relator_ops, other_ops;
  for (std::size_t j = 0; j < pres.relators.size(); ++j) {
    auto w = detail::push_through(pres.relators[j], gen_words);
    auto m = evaluate_word(c.field, c.matrices, w, &relator_ops);
    ++rep.relators_checked;
    if (!m.is_identity()) {
      rep.reason = "relator " + std::to_string(j + 1) + " does not map to the identity";
      break;
    }
  }

  if (rep.reason.empty()) {
    bool nontrivial = false;
    for (const auto& w : gen_words)
      if (!evaluate_word(c.field, c.matrices, w, &other_ops).is_identity()) nontrivial = true;
    if (!nontrivial) rep.reason = "every generator maps to the identity";
  }
  if (rep.reason.empty()) {
    auto left = evaluate_word(c.field, c.matrices, detail::push_through(c.witness_left, gen_words), &other_ops);
    auto right = evaluate_word(c.field, c.matrices, detail::push_through(c.witness_right, gen_words), &other_ops);
    if (left == right) rep.reason = "witness words have equal images";
  }

  rep.mat_mults = relator_ops.mat_mults;
  rep.total_mat_mults = relator_ops.mat_mults + other_ops.mat_mults;
  rep.field_ops = relator_ops.field_ops + other_ops.field_ops;
  rep.accepted = rep.reason.empty();
  return rep;
}

}  // namespace detail

/// Checks every relator, non-triviality and the witness (rep kind), or
/// relator vanishing and non-cyclicity of the image (abelian kind).
/// Structural inconsistencies throw; false claims produce a rejection.
inline VerificationReport verify(const Certificate& c) {
  c.presentation.check();
  return c.kind == CertificateKind::NonCyclicAbelian ? detail::verify_abelian(c) : detail::verify_rep(c);
}

}  // namespace lenscert
