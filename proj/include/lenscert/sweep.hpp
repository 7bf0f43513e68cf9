#pragma once

// Batch construction over all hyperbolic triples up to a bound.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <string>
#include <thread>
#include <vector>

#include "lenscert/certificate.hpp"
#include "lenscert/trianglerep.hpp"

namespace lenscert {

/// Hyperbolic (n1 <= n2 <= n3) with every n_k <= max_n, lexicographic.
inline std::vector<TriangleType> hyperbolic_triples(u64 max_n) {
  std::vector<TriangleType> out;
  for (u64 a = 2; a <= max_n; ++a)
    for (u64 b = a; b <= max_n; ++b)
      for (u64 c = b; c <= max_n; ++c) {
        auto t = classify(a, b, c);
        if (t.curvature == Curvature::Hyperbolic) out.push_back(t);
      }
  return out;
}

struct SweepRow {
  TriangleType type;
  CertificateKind kind = CertificateKind::NonAbelianRep;
  u64 p = 0;
  int field_degree = 0;
  bool built = false;
  bool verified = false;
  std::size_t mat_mults = 0;
  FieldDegreeReport degree;
  std::string error;
};

inline SweepRow sweep_triple(const TriangleType& t, u64 ceiling = 1'000'000'000) {
  SweepRow row;
  row.type = t;
  row.degree = field_degree_report(t);
  try {
    Certificate c;
    if (t.d == 1) {
      auto rep = build_hyperbolic_rep(t, std::nullopt, ceiling);
      c = hyperbolic_certificate(rep);
      row.p = rep.spec.p;
      row.field_degree = rep.spec.degree;
    } else {
      c = build_nonhyperbolic_cert(t);
    }
    row.kind = c.kind;
    row.built = true;
    auto report = verify(parse_certificate(serialize_certificate(c)));
    row.verified = report.accepted;
    row.mat_mults = report.mat_mults;
    if (!report.accepted) row.error = report.reason;
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

/// Rows come back in input order whatever the thread count.
inline std::vector<SweepRow> run_sweep(const std::vector<TriangleType>& triples, unsigned threads,
                                       u64 ceiling = 1'000'000'000) {
  std::vector<SweepRow> rows(triples.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(triples.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < triples.size(); i = next++) rows[i] = sweep_triple(triples[i], ceiling);
  };
  if (threads <= 1) {
    work();
    return rows;
  }
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  return rows;
}

}  // namespace lenscert
