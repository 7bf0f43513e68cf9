// lenscert: command-line front end.
//
// Exit status: 0 success or accepted, 1 rejected (or a failed check), 2
// usage, parse or any other error.

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lenscert/lenscert.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace lenscert;

constexpr int kOk = 0;
constexpr int kReject = 1;
constexpr int kError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Temp file in the target directory, then rename over the destination.
void write_atomically(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path dest(path);
  fs::path tmp = dest;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, dest, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename onto " + path + ": " + ec.message());
  }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string fixed(double v, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

struct Options {
  bool json = false;
  u64 ceiling = 1'000'000'000;
};

void emit(const Options& opt, const json& doc, const std::string& text) {
  if (opt.json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text;
}

// ---------------------------------------------------------------------------

int cmd_validate(const Options& opt, const std::string& path) {
  auto tri = parse_triangulation(read_file(path));
  auto r = validate(tri);
  json doc{{"tetrahedra", r.tetrahedra}, {"vertices", r.vertices}, {"edges", r.edges},
           {"faces", r.faces},           {"euler", r.euler_characteristic},
           {"link_euler", r.link_euler}, {"edges_consistent", r.edges_consistent},
           {"connected", r.connected},   {"pass", r.ok()}};
  if (!r.ok()) doc["failure"] = r.failure();
  std::ostringstream t;
  t << "v=" << r.vertices << " e=" << r.edges << " f=" << r.faces << " t=" << r.tetrahedra
    << " euler=" << r.euler_characteristic << " links=";
  for (std::size_t i = 0; i < r.link_euler.size(); ++i) t << (i ? "," : "") << r.link_euler[i];
  t << " " << (r.ok() ? "pass" : "fail: " + r.failure()) << "\n";
  emit(opt, doc, t.str());
  return r.ok() ? kOk : kReject;
}

int cmd_orient(const Options& opt, const std::string& path) {
  auto tri = parse_triangulation(read_file(path));
  auto res = orientation_check(tri);
  json doc{{"orientable", res.orientable}, {"tree_edges", res.dual.tree_edge_count()},
           {"non_tree_edges", res.dual.edges.size() - res.dual.tree_edge_count()}};
  std::ostringstream t;
  t << "orientable=" << yes_no(res.orientable);
  if (res.orientable) {
    doc["signs"] = res.signs;
    t << " signs=";
    for (std::size_t i = 0; i < res.signs.size(); ++i) t << (res.signs[i] > 0 ? '+' : '-');
  } else {
    const auto& w = *res.witness;
    std::string ws = std::to_string(w.source.tet) + ":" + std::to_string(w.source.face) + " -> " +
                     std::to_string(w.target.tet) + ":" + std::to_string(w.target.face) +
                     " perm=" + w.perm.str();
    doc["witness"] = ws;
    t << " witness=" << ws;
  }
  t << "\n";
  emit(opt, doc, t.str());
  return kOk;
}

// pi1 and H1 are still defined for the cell complex, so only warn.
void warn_if_not_manifold(const Triangulation& tri) {
  auto report = validate(tri);
  if (!report.ok()) std::cerr << "warning: not a closed 3-manifold (" << report.failure() << ")\n";
}

int cmd_pi1(const Options& opt, const std::string& path) {
  auto tri = parse_triangulation(read_file(path));
  warn_if_not_manifold(tri);
  auto pres = fundamental_group(tri);
  json doc{{"generators", pres.generators},
           {"relators", json::array()},
           {"max_relator_length", pres.max_relator_length()}};
  for (const auto& w : pres.relators) doc["relators"].push_back(word_to_string(w, pres));
  emit(opt, doc, serialize_presentation(pres));
  return kOk;
}

int cmd_homology(const Options& opt, const std::string& path) {
  auto tri = parse_triangulation(read_file(path));
  warn_if_not_manifold(tri);
  auto pres = fundamental_group(tri);
  auto h = abelianization(pres);
  json torsion = json::array();
  for (const auto& d : h.torsion) torsion.push_back(d.str());
  json doc{{"H1", h.str()},
           {"free_rank", h.free_rank},
           {"torsion", torsion},
           {"cyclic", is_cyclic(h)},
           {"torsion_bound", hadamard_torsion_bound(pres).str()}};
  emit(opt, doc, "H1 = " + h.str() + "\ncyclic=" + yes_no(is_cyclic(h)) + "\n");
  return kOk;
}

// Orders of the images of x, y and xy for a two-generator rep certificate.
std::array<u64, 3> image_orders(const Certificate& c) {
  const auto& x = c.matrices.at(0);
  const auto& y = c.matrices.at(1);
  const u64 cap = u64{1} << 62;
  return {projective_order(x, cap), projective_order(y, cap), projective_order(x * y, cap)};
}

void describe_certificate(const Certificate& c, json& doc, std::ostringstream& t) {
  doc["kind"] = kind_name(c.kind);
  doc["level"] = c.orbifold_level ? "orbifold" : "manifold";
  if (c.kind == CertificateKind::NonCyclicAbelian) {
    std::string target = "Z/" + std::to_string(c.target[0]) + "xZ/" + std::to_string(c.target[1]);
    doc["target"] = target;
    t << "kind=NonCyclicAbelian target=" << target << " level=" << doc["level"].get<std::string>() << "\n";
    return;
  }
  doc["p"] = c.field.p;
  doc["field_deg"] = c.field.degree;
  t << "p=" << c.field.p << " field_deg=" << c.field.degree;
  if (c.image_names == std::vector<std::string>{"x", "y"}) {
    auto o = image_orders(c);
    doc["orders"] = o;
    t << " orders=" << o[0] << "," << o[1] << "," << o[2];
  }
  auto report = verify(c);
  doc["nonabelian"] = report.accepted;
  t << " nonabelian=" << yes_no(report.accepted) << "\n";
}

void write_or_print(const std::optional<std::string>& output, const std::string& text, const Options& opt) {
  if (output)
    write_atomically(*output, text);
  else if (!opt.json)
    std::cout << text;
}

int cmd_trianglecert(const Options& opt, std::array<u64, 3> n, const std::optional<std::string>& output) {
  auto t = classify(n[0], n[1], n[2]);
  auto c = triangle_certificate(t, opt.ceiling);
  auto text = serialize_certificate(c);
  json doc{{"triple", t.n}, {"curvature", curvature_name(t.curvature)}, {"ell", t.ell}, {"gcd", t.d}};
  std::ostringstream summary;
  describe_certificate(c, doc, summary);
  if (!output) doc["certificate"] = text;
  write_or_print(output, text, opt);
  emit(opt, doc, summary.str());
  return kOk;
}

int cmd_verify(const Options& opt, const std::string& path) {
  auto c = parse_certificate(read_file(path));
  auto r = verify(c);
  json doc{{"accepted", r.accepted},
           {"kind", kind_name(c.kind)},
           {"level", c.orbifold_level ? "orbifold" : "manifold"},
           {"relators_checked", r.relators_checked},
           {"mat_mults", r.mat_mults},
           {"total_mat_mults", r.total_mat_mults},
           {"field_ops", r.field_ops},
           {"matrix_bits", r.matrix_bits},
           {"total_bits", r.total_bits}};
  if (!r.accepted) doc["reason"] = r.reason;
  std::ostringstream t;
  t << (r.accepted ? "accepted" : "rejected: " + r.reason) << "\n"
    << "kind=" << kind_name(c.kind) << " relators=" << r.relators_checked << " mat_mults=" << r.mat_mults
    << " total_mat_mults=" << r.total_mat_mults << " field_ops=" << r.field_ops
    << " matrix_bits=" << r.matrix_bits << " total_bits=" << r.total_bits << "\n";
  emit(opt, doc, t.str());
  return r.accepted ? kOk : kReject;
}

std::array<u64, 3> parse_base(const std::string& s) {
  std::array<u64, 3> n{};
  detail::LineScanner sc(s, 0);
  for (int i = 0; i < 3; ++i) {
    if (i) sc.expect(",");
    n[i] = sc.number();
  }
  if (!sc.at_end()) sc.fail("expected n1,n2,n3");
  return n;
}

int cmd_pipeline(const Options& opt, const std::string& path, const std::optional<std::string>& base,
                 const std::optional<std::string>& surjection_path, bool require_surjection,
                 const std::optional<std::string>& output) {
  auto tri = parse_triangulation(read_file(path));
  std::optional<std::array<u64, 3>> triple;
  if (base) triple = parse_base(*base);
  std::optional<std::vector<Word>> surj;
  if (surjection_path) surj = parse_surjection(read_file(*surjection_path), fundamental_group(tri));
  auto res = pipeline(tri, triple, surj, require_surjection, opt.ceiling);
  auto text = serialize_certificate(res.certificate);
  json doc{{"H1", res.homology.str()}, {"step", res.step}};
  std::ostringstream summary;
  summary << "H1 = " << res.homology.str() << "\nstep=" << res.step << " ";
  if (res.type) doc["curvature"] = curvature_name(res.type->curvature);
  describe_certificate(res.certificate, doc, summary);
  if (!output) doc["certificate"] = text;
  write_or_print(output, text, opt);
  emit(opt, doc, summary.str());
  return kOk;
}

int cmd_sweep(const Options& opt, u64 max_n, unsigned jobs, bool table) {
  auto triples = hyperbolic_triples(max_n);
  auto rows = run_sweep(triples, jobs, opt.ceiling);
  std::size_t built = 0, verified = 0, coprime = 0, witnesses = 0, disagree = 0;
  json list = json::array();
  std::ostringstream t;
  if (table) t << "n1 n2 n3 ell kind p deg verified degree_verdict witness_l variant_disagrees\n";
  for (const auto& r : rows) {
    built += r.built;
    verified += r.verified;
    coprime += r.type.d == 1;
    witnesses += r.degree.verdict == DegreeVerdict::Full;
    disagree += r.degree.variants_disagree;
    json row{{"triple", r.type.n},
             {"ell", r.type.ell},
             {"kind", kind_name(r.kind)},
             {"p", r.p},
             {"field_deg", r.field_degree},
             {"verified", r.verified},
             {"degree_verdict", verdict_name(r.degree.verdict)},
             {"variants_disagree", r.degree.variants_disagree}};
    if (r.degree.witness) row["witness_l"] = *r.degree.witness;
    if (!r.error.empty()) row["error"] = r.error;
    list.push_back(row);
    if (table)
      t << r.type.n[0] << " " << r.type.n[1] << " " << r.type.n[2] << " " << r.type.ell << " "
        << (r.kind == CertificateKind::NonAbelianRep ? "rep" : "abelian") << " " << r.p << " " << r.field_degree
        << " " << yes_no(r.verified) << " " << verdict_name(r.degree.verdict) << " "
        << (r.degree.witness ? std::to_string(*r.degree.witness) : "-") << " "
        << yes_no(r.degree.variants_disagree) << (r.error.empty() ? "" : " error: " + r.error) << "\n";
  }
  const std::size_t failures = rows.size() - verified;
  t << rows.size() << " triples, " << built << " built, " << verified << " verified, " << failures << " failures\n";
  t << coprime << " coprime (field images), " << rows.size() - coprime << " with a common factor (abelian)\n";
  t << "degree witnesses " << witnesses << "/" << rows.size() << ", discriminant-variant disagreements " << disagree
    << "\n";
  json doc{{"max_n", max_n},         {"triples", rows.size()},     {"built", built},
           {"verified", verified},   {"failures", failures},       {"coprime", coprime},
           {"degree_witnesses", witnesses}, {"variant_disagreements", disagree}, {"rows", list}};
  emit(opt, doc, t.str());
  return failures == 0 ? kOk : kReject;
}

int cmd_degree_report(const Options& opt, std::array<u64, 3> n) {
  auto t = classify(n[0], n[1], n[2]);
  auto r = field_degree_report(t);
  json doc{{"triple", t.n},
           {"ell", t.ell},
           {"phi_ell", r.phi_ell},
           {"trace_degree", r.trace_degree},
           {"verdict", verdict_name(r.verdict)},
           {"degree", r.degree()},
           {"discriminant_verdict", verdict_name(r.discriminant_verdict)},
           {"variants_disagree", r.variants_disagree}};
  if (r.witness) doc["witness_l"] = *r.witness;
  std::ostringstream s;
  s << "ell=" << t.ell << " phi=" << r.phi_ell << " trace_degree=" << r.trace_degree
    << " verdict=" << verdict_name(r.verdict);
  if (r.witness) s << " witness_l=" << *r.witness << " value=" << fixed(r.witness_value);
  s << " degree=" << r.degree() << " variant_disagrees=" << yes_no(r.variants_disagree) << "\n";
  emit(opt, doc, s.str());
  return kOk;
}

int cmd_norms(const Options& opt, u64 max_n, u64 max_k) {
  std::size_t checked = 0, mismatches = 0;
  json bad = json::array();
  std::ostringstream t;
  for (u64 n = 3; n <= max_n; ++n)
    for (auto v : {NormVariant::Plain, NormVariant::MinusTwo}) {
      double numeric = cosine_norm_numeric(n, v == NormVariant::Plain ? 0.0 : 2.0);
      u64 closed = cosine_norm(n, v);
      ++checked;
      if (std::fabs(numeric - static_cast<double>(closed)) > 1e-6) {
        ++mismatches;
        bad.push_back({{"n", n}, {"variant", v == NormVariant::Plain ? "plain" : "minus_two"}});
        t << "mismatch n=" << n << " closed=" << closed << " numeric=" << fixed(numeric, 12) << "\n";
      }
    }
  std::size_t cyc_checked = 0, cyc_bad = 0;
  for (u64 k = 1; k <= max_k; ++k)
    for (int at : {1, -1}) {
      ++cyc_checked;
      if (cyclotomic_eval(k, at) != cyclotomic_closed_form(k, at)) {
        ++cyc_bad;
        t << "cyclotomic mismatch k=" << k << " at=" << at << "\n";
      }
    }
  t << "cosine norms: " << checked << " checked, " << mismatches << " mismatches\n";
  t << "cyclotomic values: " << cyc_checked << " checked, " << cyc_bad << " mismatches\n";
  json doc{{"norms_checked", checked},
           {"norm_mismatches", mismatches},
           {"cyclotomic_checked", cyc_checked},
           {"cyclotomic_mismatches", cyc_bad},
           {"mismatched", bad}};
  emit(opt, doc, t.str());
  return mismatches + cyc_bad == 0 ? kOk : kReject;
}

int cmd_bounds(const Options& opt, std::array<u64, 3> n, std::optional<u64> tets) {
  auto t = classify(n[0], n[1], n[2]);
  std::optional<ReducedRepData> rep;
  if (t.curvature == Curvature::Hyperbolic && t.d == 1) rep = build_hyperbolic_rep(t, std::nullopt, opt.ceiling);
  auto b = bound_report(t, tets, rep ? &*rep : nullptr);
  json doc{{"triple", t.n}, {"ell", t.ell}, {"phi_ell", b.phi_ell}};
  std::ostringstream s;
  s << "ell=" << t.ell << " phi=" << b.phi_ell;
  if (tets) {
    doc["tetrahedra"] = *tets;
    doc["ell_within_bound"] = b.ell_within_bound;
    doc["phi_within_degree_bound"] = b.phi_within_degree_bound;
    s << " t=" << *tets << " ell<=2^(2t)3^(12t)=" << yes_no(b.ell_within_bound)
      << " phi<=2^(t-1)3^(6t)=" << yes_no(b.phi_within_degree_bound);
  }
  if (b.field_size) {
    doc["field_size"] = b.field_size->str();
    doc["field_below_ell_pow10"] = b.field_below_ell_pow10;
    doc["field_ratio"] = b.field_ratio;
    doc["linnik_ratio"] = b.linnik_ratio;
    s << " |F|=" << *b.field_size << " |F|<ell^10=" << yes_no(b.field_below_ell_pow10)
      << " |F|/ell^10=" << fixed(b.field_ratio) << " p/ell^5.18=" << fixed(b.linnik_ratio);
  }
  s << "\n";
  emit(opt, doc, s.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificates that a triangulated 3-manifold is not a lens space"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "Emit one JSON document instead of text");
  app.add_option("--ceiling", opt.ceiling, "Upper limit for the prime search")->check(CLI::PositiveNumber);

  std::string path;
  std::array<u64, 3> triple{};
  std::optional<std::string> output, base, surjection;
  bool require_surjection = false;
  u64 max_n = 19, norms_max_n = 200, max_k = 500;
  std::optional<u64> tets;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  bool table = false;

  auto add_tri = [&](CLI::App* sub) { sub->add_option("triangulation", path, "Triangulation file")->required(); };
  auto add_triple = [&](CLI::App* sub) {
    sub->add_option("n1", triple[0])->required()->check(CLI::Range(u64{2}, u64{1} << 20));
    sub->add_option("n2", triple[1])->required()->check(CLI::Range(u64{2}, u64{1} << 20));
    sub->add_option("n3", triple[2])->required()->check(CLI::Range(u64{2}, u64{1} << 20));
  };

  auto* validate_cmd = app.add_subcommand("validate", "Cell counts, Euler characteristics and vertex links");
  add_tri(validate_cmd);
  auto* orient_cmd = app.add_subcommand("orient", "Orientability with a sign assignment or witness");
  add_tri(orient_cmd);
  auto* pi1_cmd = app.add_subcommand("pi1", "Fundamental group presentation");
  add_tri(pi1_cmd);
  auto* homology_cmd = app.add_subcommand("homology", "First homology group");
  add_tri(homology_cmd);

  auto* tc_cmd = app.add_subcommand("trianglecert", "Certificate for a triangle group");
  add_triple(tc_cmd);
  tc_cmd->add_option("-o,--output", output, "Certificate path (written atomically)");

  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate");
  verify_cmd->add_option("certificate", path, "Certificate file")->required();

  auto* pipe_cmd = app.add_subcommand("pipeline", "Certificate for a triangulated small Seifert fiber space");
  add_tri(pipe_cmd);
  pipe_cmd->add_option("--base", base, "Base orbifold cone orders n1,n2,n3");
  pipe_cmd->add_option("--surjection", surjection, "Map from the pi1 generators to words in x, y");
  pipe_cmd->add_flag("--require-surjection", require_surjection, "Refuse to emit an orbifold-level certificate");
  pipe_cmd->add_option("-o,--output", output, "Certificate path (written atomically)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Build and verify every hyperbolic triple up to a bound");
  sweep_cmd->add_option("--max-n", max_n, "Largest cone order")->check(CLI::Range(u64{2}, u64{200}));
  sweep_cmd->add_option("-j,--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--table", table, "Print one row per triple");

  auto* deg_cmd = app.add_subcommand("degree-report", "Field-of-definition degree scan");
  add_triple(deg_cmd);

  auto* norms_cmd = app.add_subcommand("norms", "Cosine norm and cyclotomic value checks");
  norms_cmd->add_option("--max-n", norms_max_n, "Largest n for cosine norms")->check(CLI::Range(u64{3}, u64{100000}));
  norms_cmd->add_option("--max-k", max_k, "Largest cyclotomic index")->check(CLI::Range(u64{1}, u64{5000}));

  auto* bounds_cmd = app.add_subcommand("bounds", "Size bounds for a triple's certificate");
  add_triple(bounds_cmd);
  bounds_cmd->add_option("-t,--tetrahedra", tets, "Tetrahedron count for the triangulation bounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*validate_cmd) return cmd_validate(opt, path);
    if (*orient_cmd) return cmd_orient(opt, path);
    if (*pi1_cmd) return cmd_pi1(opt, path);
    if (*homology_cmd) return cmd_homology(opt, path);
    if (*tc_cmd) return cmd_trianglecert(opt, triple, output);
    if (*verify_cmd) return cmd_verify(opt, path);
    if (*pipe_cmd) return cmd_pipeline(opt, path, base, surjection, require_surjection, output);
    if (*sweep_cmd) return cmd_sweep(opt, max_n, jobs, table);
    if (*deg_cmd) return cmd_degree_report(opt, triple);
    if (*norms_cmd) return cmd_norms(opt, norms_max_n, max_k);
    if (*bounds_cmd) return cmd_bounds(opt, triple, tets);
  } catch (const std::exception& e) {
    if (opt.json)
      std::cout << json{{"error", e.what()}}.dump(2) << "\n";
    else
      std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
