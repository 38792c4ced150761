// fixturegen: derives the eigenform fixture packages bundled under data/ and
// double-checks the curve corpus.  This tool reconstructs every q-expansion
// from the relation data itself (plus a handful of frozen reference seeds);
// nothing is copied from external tables.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "modcurve/curvetable.hpp"
#include "modcurve/errors.hpp"
#include "gauge_solver.hpp"
#include "reference_seeds.hpp"

namespace {

using namespace modcurve;

int nu_of(const CurveRecord& rec) {
  switch (rec.label.marker) {
    case FlexMarker::Flex:
      return 4;
    case FlexMarker::Hyperflex:
      return 5;
    case FlexMarker::None:
      return 3;
  }
  return 3;
}

const CurveRecord& find_record(const std::vector<CurveRecord>& records,
                               const std::string& sup, const std::string& sub) {
  for (const auto& r : records)
    if (r.label.superscript == sup && r.label.subscript == sub) return r;
  fail("invalid-parameter", "no corpus record C^" + sup + "_" + sub);
}

int cmd_corpus_check(const std::string& corpus_path) {
  const auto records = load_corpus(corpus_path);
  std::printf("corpus OK: %zu records, checksum 0x%llx\n", records.size(),
              static_cast<unsigned long long>(corpus_checksum(records)));
  return 0;
}

// Solve every degree-4 record's basis at window M and certify each solve
// independently by checking F(h1,h2,h3) = O(q^{M+1}) -- a condition the
// solver never imposes directly.
int cmd_batch_check(const std::string& corpus_path, int M,
                    const std::string& only,
                    const std::vector<fixturegen::CoefficientPin>& pins) {
  const auto records = load_corpus(corpus_path);
  int ok = 0, failed = 0, skipped = 0;
  for (const auto& rec : records) {
    if (rec.relation_degree != 4 || rec.polynomial.degree() != 4 ||
        (!only.empty() &&
         rec.label.text().find(only) == std::string::npos)) {
      ++skipped;
      continue;
    }
    const int nu = nu_of(rec);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const fixturegen::GaugeBasis basis = fixturegen::solve_normal_form_basis(
          rec.polynomial, nu, M, rec.label.level,
          rec.group.kind == modcurve::GroupKind::Gamma0, pins);
      const modcurve::SeriesTriple triple{basis.h1, basis.h2, basis.h3};
      const RatSeries residue = modcurve::evaluate_form(rec.polynomial, triple);
      const auto nz = modcurve::vanishing_order(residue);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      if (nz) {
        ++failed;
        std::printf("%-16s nu=%d level=%-4ld FAIL: F(h) nonzero at q^%d (%.2fs)\n",
                    rec.label.text().c_str(), nu, rec.label.level, *nz, secs);
      } else {
        ++ok;
        std::string h1prefix;
        for (int n = 1; n <= std::min(10, basis.h1.trunc_order()); ++n)
          h1prefix +=
              (n > 1 ? "," : "") + modcurve::format_rational(basis.h1.at(n));
        std::printf("%-16s nu=%d level=%-4ld OK: F(h) = O(q^%d), h1 = %s (%.2fs)\n",
                    rec.label.text().c_str(), nu, rec.label.level,
                    residue.trunc_order() + 1, h1prefix.c_str(), secs);
      }
    } catch (const std::exception& e) {
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      ++failed;
      std::printf("%-16s nu=%d level=%-4ld ERROR: %s (%.2fs)\n",
                  rec.label.text().c_str(), nu, rec.label.level, e.what(),
                  secs);
    }
    std::fflush(stdout);
  }
  std::printf("batch: %d ok, %d failed, %d skipped (window M=%d)\n", ok,
              failed, skipped, M);
  return failed == 0 ? 0 : 1;
}

std::vector<fixturegen::CoefficientPin> parse_pins(
    const std::vector<std::string>& pin_specs) {
  std::vector<fixturegen::CoefficientPin> pins;
  for (const std::string& spec : pin_specs) {
    int i = 0, n = 0;
    long v = 0;
    if (std::sscanf(spec.c_str(), "%d:%d:%ld", &i, &n, &v) != 3 || i < 1 ||
        i > 3 || n < 1)
      fail("invalid-parameter", "pin must look like i:n:value, got " + spec);
    pins.push_back({i, n, modcurve::Rat(v)});
    std::printf("pinning h%d[%d] = %ld\n", i, n, v);
  }
  return pins;
}

int cmd_solver_check(const std::string& corpus_path,
                     const std::vector<std::string>& pin_specs) {
  const auto records = load_corpus(corpus_path);
  const CurveRecord& rec = find_record(records, "E", "243");
  const int nu = nu_of(rec);
  const auto pins = parse_pins(pin_specs);
  std::printf("solving the %s relation (nu=%d) ...\n",
              rec.label.text().c_str(), nu);
  const fixturegen::GaugeBasis basis = fixturegen::solve_normal_form_basis(
      rec.polynomial, nu, 40, rec.label.level,
      rec.group.kind == modcurve::GroupKind::Gamma0, pins);
  struct Check {
    const char* name;
    const RatSeries* got;
    const std::vector<long>* want;
  } checks[] = {
      {"h1", &basis.h1, &fixturegen::seeds::k243E_h1},
      {"h2", &basis.h2, &fixturegen::seeds::k243E_h2},
      {"h3", &basis.h3, &fixturegen::seeds::k243E_h3},
  };
  bool ok = true;
  for (const auto& c : checks) {
    const int bad = fixturegen::seeds::first_seed_mismatch(*c.got, *c.want);
    if (bad != 0) {
      ok = false;
      std::printf("  %s MISMATCH at q^%d: got %s, want %ld\n", c.name, bad,
                  format_rational(c.got->at(bad)).c_str(),
                  (*c.want)[static_cast<size_t>(bad) - 1]);
    } else {
      std::printf("  %s matches the reference prefix (1..%zu)\n", c.name,
                  c.want->size());
    }
  }
  if (!ok) return 1;
  std::printf("solver-check OK\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixture and corpus derivation tool"};
  app.require_subcommand(1);
  std::string corpus_path = "data/corpus.json";

  auto* check = app.add_subcommand("corpus-check",
                                   "parse and checksum the curve corpus");
  check->add_option("--corpus", corpus_path, "corpus JSON path");

  auto* solver = app.add_subcommand(
      "solver-check", "re-derive a printed basis from its relation");
  solver->add_option("--corpus", corpus_path, "corpus JSON path");
  std::vector<std::string> pin_specs;
  solver->add_option("--pin", pin_specs,
                     "assert h_i[n] = value as i:n:value (repeatable)");

  int batch_m = 40;
  std::string batch_only;
  std::vector<std::string> batch_pin_specs;
  auto* batch = app.add_subcommand(
      "batch-check", "solve and self-certify every degree-4 record");
  batch->add_option("--corpus", corpus_path, "corpus JSON path");
  batch->add_option("--m", batch_m, "coefficient window per record");
  batch->add_option("--only", batch_only, "only records whose label contains this");
  batch->add_option("--pin", batch_pin_specs,
                    "assert h_i[n] = value as i:n:value (repeatable)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (check->parsed()) return cmd_corpus_check(corpus_path);
    if (solver->parsed()) return cmd_solver_check(corpus_path, pin_specs);
    if (batch->parsed())
      return cmd_batch_check(corpus_path, batch_m, batch_only,
                             parse_pins(batch_pin_specs));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
