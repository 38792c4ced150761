// Canonical records of certified modular plane quartics: display labels with
// flex markers, abelian-factor specifications, basis-assembly recipes, the
// stored integer polynomials, and the regression corpus loader/verifier.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modcurve/cuspbasis.hpp"
#include "modcurve/newform.hpp"
#include "modcurve/planequartic.hpp"
#include "modcurve/relation.hpp"

namespace modcurve {

enum class FlexMarker { None, Flex, Hyperflex };

// "", "♦" (diamond = flex at P_infinity), "★" (star = hyperflex).
std::string flex_marker_symbol(FlexMarker m);

// Display label of the form  [marker ]C[']^{sup}_{sub}  where sup names the
// eigenform letters (or full labels), sub starts with the level, and an
// optional prime distinguishes a second model of the same curve.
struct CurveLabel {
  FlexMarker marker = FlexMarker::None;
  bool prime = false;       // C' labels (alternate model)
  std::string superscript;  // e.g. "E", "A,B", "89A"; may be empty
  std::string subscript;    // e.g. "243", "39,A_{0,6}", "178C"
  long level = 0;           // leading integer of the subscript

  static CurveLabel parse(const std::string& text);
  std::string text() const;
  bool operator==(const CurveLabel& o) const {
    return marker == o.marker && prime == o.prime &&
           superscript == o.superscript && subscript == o.subscript;
  }
};

struct FactorRef {
  std::string label;    // newform label text, resolved against fixtures
  int multiplicity = 1;
};

// One summand of an assembled q-series: weight * stream(q^degeneracy), where
// stream is the `row`-th row of the canonical reduced-echelon basis of the
// named package's rational coefficient span.
struct RecipeTerm {
  std::string factor;
  int row = 0;
  int degeneracy = 1;
  Rat weight = Rat(1);
};

using SeriesRecipe = std::vector<RecipeTerm>;

// How the (s1, s2, s3) search triple is assembled from fixture packages.
struct TripleRecipe {
  enum class Kind {
    Normalized,  // pivot-normalized basis from the factor packages
    Echelon,     // reduced echelon of the packages' joint rational span
    Explicit,    // three recipe-built series, optionally echelonized
    None,        // no basis is derivable: geometry + point counts only
  };
  Kind kind = Kind::Normalized;
  std::array<SeriesRecipe, 3> columns;  // Explicit only
  bool echelonize = false;              // Explicit only
};

// A second plane model of the same curve attached to a record (a canonical
// re-embedding computed elsewhere): verified by smoothness, the tangent
// classification at (1:0:0), and point counts against its own factor list.
struct CanonicalModel {
  HomogeneousPolynomial poly;
  std::vector<FactorRef> count_factors;
  bool conjectural = false;  // the Jacobian linkage is conjectural
};

struct CurveRecord {
  CurveLabel label;
  CaseTag case_tag = CaseTag::A;
  std::vector<FactorRef> factors;
  TripleRecipe recipe;
  GroupSpec group;  // group used for the certification bounds
  int relation_degree = 4;
  HomogeneousPolynomial polynomial;
  bool main_table = true;  // false for the worked-example records
  bool new_curve = true;
  std::optional<Rat> expected_psi;  // stated constant, when the source gives one
  PsiStatus expected_psi_status = PsiStatus::Constant;
  std::optional<FlexKind> expected_flex;  // overrides the marker mapping
  std::optional<bool> expected_smooth;    // checked only when present
  std::optional<CanonicalModel> canonical_model;
  std::string notes;

  // Flex kind implied by the marker (none -> ordinary point).
  FlexKind marker_flex_kind() const;
};

// Fixture resolution: eigenform packages indexed by label text.
class FixtureSet {
public:
  static FixtureSet load_directory(const std::string& dir);
  void add(EigenformPackage pkg);
  const EigenformPackage* find(const std::string& label_text) const;
  const EigenformPackage& require(const std::string& label_text) const;
  size_t size() const { return by_label_.size(); }
  std::vector<std::string> labels() const;

private:
  std::map<std::string, EigenformPackage> by_label_;
};

// The canonical reduced-echelon basis of one package's rational span.
std::vector<RatSeries> package_echelon_streams(const EigenformPackage& pkg);

// Gamma0 when every factor label carries the trivial character, else Gamma1.
GroupSpec default_group_for_factors(const std::vector<FactorRef>& factors);

// Assemble the search triple for a record; requires all factor packages.
SeriesTriple assemble_triple(const CurveRecord& record,
                             const FixtureSet& fixtures);

// Load the corpus JSON file (44 table records + worked-example records),
// validating the stored checksum and every record invariant.
std::vector<CurveRecord> load_corpus(const std::string& path);

// FNV-1a/64 digest of the canonical record summary (label, group, degree,
// polynomial, factors); guards the data file against silent edits.
std::uint64_t corpus_checksum(const std::vector<CurveRecord>& records);

struct VerifyOptions {
  std::vector<long> point_count_primes;  // empty: skip counting
  bool run_smoothness = true;
};

struct RecordVerification {
  std::string label;
  bool verified = false;
  std::string failure;  // first failed check, empty when verified
  int dimension = 0;
  HomogeneousPolynomial found;  // the recomputed relation (when one exists)
  bool polynomial_matches = false;
  bool vanishing_ok = false;
  PsiCertificate psi;
  SmoothnessCertificate smoothness;
  FlexClassification flex;
  VanishingOrder ord_h3;
  std::vector<PointCount> counts;
  // Attached canonical-model sub-verification, when the record carries one.
  std::optional<SmoothnessCertificate> canonical_smooth;
  std::optional<FlexClassification> canonical_flex;
  std::vector<PointCount> canonical_counts;
};

// Rebuilds the triple, re-finds the relation at the record's bound, compares
// with the stored polynomial, and attaches certificates.  Errors:
// fixture-missing when a factor package is absent; computational failures
// are reported in `failure`, a stored-vs-found difference as mismatch text.
RecordVerification verify_record(const CurveRecord& record,
                                 const FixtureSet& fixtures,
                                 const VerifyOptions& options = {});

}  // namespace modcurve
