#include "modcurve/curvetable.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "modcurve/errors.hpp"

namespace modcurve {

namespace {

using nlohmann::ordered_json;

const char kDiamond[] = "\xE2\x99\xA6";  // U+2666
const char kStar[] = "\xE2\x98\x85";     // U+2605

bool consume_prefix(const std::string& s, size_t& pos, const char* prefix) {
  const size_t len = std::char_traits<char>::length(prefix);
  if (s.compare(pos, len, prefix) != 0) return false;
  pos += len;
  return true;
}

// One label component: either a bare character or a brace-delimited group
// (nested braces allowed, e.g. "39,A_{0,6}").
std::string read_component(const std::string& s, size_t& pos,
                           const char* what) {
  if (pos >= s.size())
    fail("label-syntax", std::string("missing ") + what + " in curve label");
  if (s[pos] != '{') return std::string(1, s[pos++]);
  int depth = 1;
  const size_t start = ++pos;
  while (pos < s.size()) {
    if (s[pos] == '{') ++depth;
    if (s[pos] == '}' && --depth == 0) break;
    ++pos;
  }
  if (depth != 0)
    fail("label-syntax", std::string("unbalanced braces in ") + what);
  std::string inner = s.substr(start, pos - start);
  ++pos;  // closing brace
  if (inner.empty())
    fail("label-syntax", std::string("empty ") + what + " in curve label");
  return inner;
}

std::string wrap_component(const std::string& inner) {
  if (inner.size() == 1) return inner;
  return "{" + inner + "}";
}

CaseTag parse_case_tag(const std::string& s) {
  if (s == "A") return CaseTag::A;
  if (s == "AE") return CaseTag::AE;
  if (s == "EEE") return CaseTag::EEE;
  fail("schema", "unknown case tag " + s);
}

FlexKind parse_flex_kind(const std::string& s) {
  if (s == "ordinary") return FlexKind::OrdinaryPoint;
  if (s == "flex") return FlexKind::Flex;
  if (s == "hyperflex") return FlexKind::Hyperflex;
  if (s == "not-normal-form") return FlexKind::NotOnCurveNormalForm;
  fail("schema", "unknown flex kind " + s);
}

PsiStatus parse_psi_status(const std::string& s) {
  if (s == "constant") return PsiStatus::Constant;
  if (s == "non-constant") return PsiStatus::NonConstant;
  fail("schema", "unknown psi status " + s);
}

Int json_int(const ordered_json& v) {
  if (v.is_number_integer()) return Int(v.get<long long>());
  if (v.is_string()) return Int(v.get<std::string>());
  fail("schema", "expected an integer or integer string");
}

SeriesRecipe parse_series_recipe(const ordered_json& column) {
  if (!column.is_array() || column.empty())
    fail("schema", "recipe column must be a non-empty list of terms");
  SeriesRecipe out;
  for (const auto& t : column) {
    RecipeTerm term;
    if (!t.contains("factor"))
      fail("schema", "recipe term needs a factor label");
    term.factor = t["factor"].get<std::string>();
    if (t.contains("row")) term.row = t["row"].get<int>();
    if (t.contains("deg")) term.degeneracy = t["deg"].get<int>();
    if (t.contains("weight"))
      term.weight = parse_rational(t["weight"].get<std::string>());
    if (term.row < 0) fail("schema", "recipe row must be non-negative");
    if (term.degeneracy < 1) fail("schema", "recipe degeneracy must be >= 1");
    if (term.weight == 0) fail("schema", "recipe weight must be non-zero");
    out.push_back(std::move(term));
  }
  return out;
}

TripleRecipe parse_recipe(const ordered_json& j) {
  TripleRecipe recipe;
  if (j.is_null()) return recipe;
  const std::string kind = j.value("kind", std::string("normalized"));
  if (kind == "normalized") {
    recipe.kind = TripleRecipe::Kind::Normalized;
  } else if (kind == "echelon") {
    recipe.kind = TripleRecipe::Kind::Echelon;
  } else if (kind == "explicit") {
    recipe.kind = TripleRecipe::Kind::Explicit;
    if (!j.contains("columns") || !j["columns"].is_array() ||
        j["columns"].size() != 3)
      fail("schema", "explicit recipe needs exactly three columns");
    for (int i = 0; i < 3; ++i)
      recipe.columns[static_cast<size_t>(i)] =
          parse_series_recipe(j["columns"][static_cast<size_t>(i)]);
    recipe.echelonize = j.value("echelonize", false);
  } else if (kind == "none") {
    recipe.kind = TripleRecipe::Kind::None;
  } else {
    fail("schema", "unknown recipe kind " + kind);
  }
  return recipe;
}

std::vector<FactorRef> parse_factor_list(const ordered_json& arr) {
  std::vector<FactorRef> out;
  for (const auto& f : arr) {
    FactorRef ref;
    if (f.is_array()) {
      if (f.empty()) fail("schema", "empty factor entry");
      ref.label = f[0].get<std::string>();
      if (f.size() > 1) ref.multiplicity = f[1].get<int>();
    } else {
      ref.label = f["label"].get<std::string>();
      ref.multiplicity = f.value("multiplicity", 1);
    }
    if (ref.multiplicity < 1)
      fail("schema", "factor multiplicity must be positive");
    NewformLabel::parse(ref.label);  // syntax check
    out.push_back(std::move(ref));
  }
  return out;
}

HomogeneousPolynomial parse_polynomial(const ordered_json& arr, int degree,
                                       const std::string& what) {
  HomogeneousPolynomial::TermMap terms;
  for (const auto& row : arr) {
    if (!row.is_array() || row.size() != 4)
      fail("schema", "polynomial entries must be [i, j, k, coefficient]");
    const ExponentTriple e{row[0].get<int>(), row[1].get<int>(),
                           row[2].get<int>()};
    if (terms.count(e)) fail("schema", "repeated polynomial exponent triple");
    Int c = json_int(row[3]);
    if (c == 0) fail("schema", "zero coefficient stored in polynomial");
    terms.emplace(e, std::move(c));
  }
  HomogeneousPolynomial poly(degree, std::move(terms));
  if (!poly.is_normalized())
    fail("schema",
         what + " polynomial is not primitive and sign-normalized");
  return poly;
}

CurveRecord parse_record(const ordered_json& j) {
  for (const char* key : {"label", "case", "factors", "polynomial"}) {
    if (!j.contains(key))
      fail("schema", std::string("corpus record missing field: ") + key);
  }
  CurveRecord rec;
  rec.label = CurveLabel::parse(j["label"].get<std::string>());
  rec.case_tag = parse_case_tag(j["case"].get<std::string>());
  rec.factors = parse_factor_list(j["factors"]);
  if (rec.factors.empty()) fail("schema", "record lists no abelian factors");
  rec.group = j.contains("group")
                  ? parse_group_spec(j["group"].get<std::string>())
                  : default_group_for_factors(rec.factors);
  rec.relation_degree = j.value("degree", 4);
  if (rec.relation_degree < 2)
    fail("schema", "relation degree must be at least 2");
  rec.polynomial = parse_polynomial(j["polynomial"], rec.relation_degree,
                                    "stored " + rec.label.text());
  rec.main_table = j.value("main", true);
  rec.new_curve = j.value("new", true);
  if (j.contains("psi"))
    rec.expected_psi = parse_rational(j["psi"].get<std::string>());
  if (j.contains("psi_status"))
    rec.expected_psi_status =
        parse_psi_status(j["psi_status"].get<std::string>());
  if (j.contains("flex"))
    rec.expected_flex = parse_flex_kind(j["flex"].get<std::string>());
  if (j.contains("smooth"))
    rec.expected_smooth = j["smooth"].get<bool>();
  else if (rec.relation_degree == 4 && rec.main_table)
    rec.expected_smooth = true;
  rec.recipe = parse_recipe(j.contains("recipe") ? j["recipe"]
                                                 : ordered_json(nullptr));
  if (j.contains("canonical_model")) {
    const auto& cj = j["canonical_model"];
    for (const char* key : {"polynomial", "count_factors"}) {
      if (!cj.contains(key))
        fail("schema",
             std::string("canonical_model missing field: ") + key);
    }
    CanonicalModel cm;
    cm.poly = parse_polynomial(cj["polynomial"], 4,
                               "canonical model of " + rec.label.text());
    cm.count_factors = parse_factor_list(cj["count_factors"]);
    if (cm.count_factors.empty())
      fail("schema", "canonical_model lists no count factors");
    cm.conjectural = cj.value("conjectural", false);
    rec.canonical_model = std::move(cm);
  }
  rec.notes = j.value("notes", std::string());
  return rec;
}

void fnv_absorb(std::uint64_t& h, const std::string& s) {
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  h ^= 0x1f;
  h *= 1099511628211ULL;
}

}  // namespace

// ---------------------------------------------------------------------------
// Labels.

std::string flex_marker_symbol(FlexMarker m) {
  switch (m) {
    case FlexMarker::None:
      return "";
    case FlexMarker::Flex:
      return kDiamond;
    case FlexMarker::Hyperflex:
      return kStar;
  }
  return "";
}

CurveLabel CurveLabel::parse(const std::string& text) {
  CurveLabel out;
  size_t pos = 0;
  if (consume_prefix(text, pos, kDiamond))
    out.marker = FlexMarker::Flex;
  else if (consume_prefix(text, pos, kStar))
    out.marker = FlexMarker::Hyperflex;
  while (pos < text.size() && text[pos] == ' ') ++pos;
  if (!consume_prefix(text, pos, "C"))
    fail("label-syntax", "curve label must start with C: " + text);
  if (pos < text.size() && text[pos] == '\'') {
    out.prime = true;
    ++pos;
  }
  if (consume_prefix(text, pos, "^"))
    out.superscript = read_component(text, pos, "superscript");
  if (pos >= text.size() || text[pos] != '_')
    fail("label-syntax", "curve label needs a _ subscript: " + text);
  ++pos;
  out.subscript = read_component(text, pos, "subscript");
  if (pos != text.size())
    fail("label-syntax", "trailing characters after curve label: " + text);
  size_t digits = 0;
  while (digits < out.subscript.size() &&
         std::isdigit(static_cast<unsigned char>(out.subscript[digits])))
    ++digits;
  if (digits == 0)
    fail("label-syntax", "curve subscript must start with the level: " + text);
  out.level = std::stol(out.subscript.substr(0, digits));
  if (out.level < 1) fail("label-syntax", "curve level must be positive");
  return out;
}

std::string CurveLabel::text() const {
  std::string out = flex_marker_symbol(marker);
  if (!out.empty()) out += ' ';
  out += 'C';
  if (prime) out += '\'';
  if (!superscript.empty()) out += "^" + wrap_component(superscript);
  out += "_" + wrap_component(subscript);
  return out;
}

FlexKind CurveRecord::marker_flex_kind() const {
  switch (label.marker) {
    case FlexMarker::None:
      return FlexKind::OrdinaryPoint;
    case FlexMarker::Flex:
      return FlexKind::Flex;
    case FlexMarker::Hyperflex:
      return FlexKind::Hyperflex;
  }
  return FlexKind::OrdinaryPoint;
}

// ---------------------------------------------------------------------------
// Fixtures.

FixtureSet FixtureSet::load_directory(const std::string& dir) {
  namespace fs = std::filesystem;
  FixtureSet out;
  std::error_code ec;
  fs::directory_iterator it(dir, ec);
  if (ec) fail("io", "cannot open fixture directory " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& p : files) out.add(load_package_file(p.string()));
  return out;
}

void FixtureSet::add(EigenformPackage pkg) {
  const std::string key = pkg.label().text();
  if (by_label_.count(key))
    fail("schema", "duplicate fixture package for " + key);
  by_label_.emplace(key, std::move(pkg));
}

const EigenformPackage* FixtureSet::find(const std::string& label_text) const {
  auto it = by_label_.find(label_text);
  return it == by_label_.end() ? nullptr : &it->second;
}

const EigenformPackage& FixtureSet::require(
    const std::string& label_text) const {
  const EigenformPackage* pkg = find(label_text);
  if (!pkg) fail("fixture-missing", "no fixture package for " + label_text);
  return *pkg;
}

std::vector<std::string> FixtureSet::labels() const {
  std::vector<std::string> out;
  out.reserve(by_label_.size());
  for (const auto& [k, v] : by_label_) out.push_back(k);
  return out;
}

// ---------------------------------------------------------------------------
// Triple assembly.

std::vector<RatSeries> package_echelon_streams(const EigenformPackage& pkg) {
  const int m = pkg.degree();
  std::vector<RatSeries> rows;
  NFElem beta = pkg.field()->from_rational(Rat(1));
  for (int j = 0; j < m; ++j) {
    rows.push_back(trace_series(pkg, beta));
    if (j + 1 < m) beta = beta * pkg.field()->generator();
  }
  return reduced_echelon(rows);
}

GroupSpec default_group_for_factors(const std::vector<FactorRef>& factors) {
  for (const auto& f : factors) {
    if (NewformLabel::parse(f.label).character.order() != 1)
      return GroupSpec::gamma1();
  }
  return GroupSpec::gamma0();
}

SeriesTriple assemble_triple(const CurveRecord& record,
                             const FixtureSet& fixtures) {
  switch (record.recipe.kind) {
    case TripleRecipe::Kind::Normalized: {
      std::vector<EigenformPackage> packages;
      for (const auto& f : record.factors) {
        const EigenformPackage& pkg = fixtures.require(f.label);
        for (int i = 0; i < f.multiplicity; ++i) packages.push_back(pkg);
      }
      NormalizedBasis basis = build_basis(packages);
      if (basis.case_tag != record.case_tag)
        fail("wrong-case", record.label.text() + ": factors produce case " +
                               case_tag_text(basis.case_tag) +
                               " but the record declares " +
                               case_tag_text(record.case_tag));
      return SeriesTriple::from_basis(basis);
    }
    case TripleRecipe::Kind::Echelon: {
      std::vector<EigenformPackage> packages;
      for (const auto& f : record.factors)
        packages.push_back(fixtures.require(f.label));
      std::vector<RatSeries> rows = integral_span_basis(packages);
      if (rows.size() != 3)
        fail("degenerate-input",
             record.label.text() + ": joint span has dimension " +
                 std::to_string(rows.size()) + ", expected 3");
      return {rows[0], rows[1], rows[2]};
    }
    case TripleRecipe::Kind::None:
      fail("invalid-parameter",
           record.label.text() + " stores no basis recipe");
      break;
    case TripleRecipe::Kind::Explicit:
      break;
  }
  std::map<std::string, std::vector<RatSeries>> stream_cache;
  auto streams_for = [&](const std::string& label)
      -> const std::vector<RatSeries>& {
    auto it = stream_cache.find(label);
    if (it == stream_cache.end())
      it = stream_cache
               .emplace(label,
                        package_echelon_streams(fixtures.require(label)))
               .first;
    return it->second;
  };
  std::vector<RatSeries> cols;
  for (const SeriesRecipe& recipe : record.recipe.columns) {
    std::optional<RatSeries> acc;
    for (const RecipeTerm& term : recipe) {
      const auto& rows = streams_for(term.factor);
      if (term.row >= static_cast<int>(rows.size()))
        fail("invalid-parameter",
             term.factor + " has only " + std::to_string(rows.size()) +
                 " echelon streams; recipe asks for row " +
                 std::to_string(term.row));
      RatSeries s = rows[static_cast<size_t>(term.row)];
      if (term.degeneracy > 1) s = degeneracy(s, term.degeneracy);
      s = scale(s, term.weight);
      acc = acc ? add(*acc, s) : s;
    }
    cols.push_back(*acc);
  }
  if (record.recipe.echelonize) {
    cols = reduced_echelon(cols);
    if (cols.size() != 3)
      fail("degenerate-input",
           record.label.text() + ": explicit triple is linearly dependent");
  }
  return {cols[0], cols[1], cols[2]};
}

// ---------------------------------------------------------------------------
// Corpus loading.

std::uint64_t corpus_checksum(const std::vector<CurveRecord>& records) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const auto& r : records) {
    fnv_absorb(h, r.label.text());
    fnv_absorb(h, case_tag_text(r.case_tag));
    fnv_absorb(h, group_text(r.group));
    fnv_absorb(h, std::to_string(r.relation_degree));
    fnv_absorb(h, r.polynomial.text());
    std::string factors;
    for (const auto& f : r.factors)
      factors += f.label + "*" + std::to_string(f.multiplicity) + ";";
    fnv_absorb(h, factors);
    fnv_absorb(h, r.main_table ? "main" : "aux");
    fnv_absorb(h, r.new_curve ? "new" : "known");
    if (r.canonical_model) {
      fnv_absorb(h, r.canonical_model->poly.text());
      std::string cf;
      for (const auto& f : r.canonical_model->count_factors)
        cf += f.label + "*" + std::to_string(f.multiplicity) + ";";
      fnv_absorb(h, cf);
    }
    fnv_absorb(h, "\x1e");
  }
  return h;
}

std::vector<CurveRecord> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("io", "cannot open corpus file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  ordered_json doc;
  try {
    doc = ordered_json::parse(buf.str());
  } catch (const std::exception& e) {
    fail("schema", std::string("corpus is not valid JSON: ") + e.what());
  }
  for (const char* key : {"schema_version", "kind", "checksum", "records"}) {
    if (!doc.contains(key))
      fail("schema", std::string("corpus missing field: ") + key);
  }
  if (doc["schema_version"].get<int>() != 1)
    fail("schema", "unsupported corpus schema_version");
  if (doc["kind"].get<std::string>() != "curve-corpus")
    fail("schema", "not a curve corpus file");
  std::vector<CurveRecord> records;
  for (const auto& j : doc["records"]) records.push_back(parse_record(j));
  size_t main_count = 0, aux_count = 0;
  std::map<std::string, int> seen;
  for (const auto& r : records) {
    (r.main_table ? main_count : aux_count) += 1;
    if (++seen[r.label.text()] > 1)
      fail("schema", "duplicate corpus label " + r.label.text());
  }
  if (main_count != 44)
    fail("schema", "corpus must carry exactly 44 table records, found " +
                       std::to_string(main_count));
  if (aux_count != 7)
    fail("schema", "corpus must carry exactly 7 auxiliary records, found " +
                       std::to_string(aux_count));
  std::uint64_t stored = 0;
  try {
    stored = std::stoull(doc["checksum"].get<std::string>(), nullptr, 0);
  } catch (const std::exception&) {
    fail("schema", "malformed corpus checksum");
  }
  const std::uint64_t actual = corpus_checksum(records);
  if (stored != actual) {
    std::ostringstream os;
    os << "corpus checksum mismatch: stored 0x" << std::hex << stored
       << ", computed 0x" << actual;
    fail("schema", os.str());
  }
  return records;
}

// ---------------------------------------------------------------------------
// Verification.

RecordVerification verify_record(const CurveRecord& record,
                                 const FixtureSet& fixtures,
                                 const VerifyOptions& options) {
  RecordVerification out;
  out.label = record.label.text();
  auto note_failure = [&](const std::string& what) {
    if (out.failure.empty()) out.failure = what;
  };

  const int degree = record.relation_degree;
  const HomogeneousPolynomial& stored = record.polynomial;
  const bool have_basis = record.recipe.kind != TripleRecipe::Kind::None;

  if (have_basis) {
    const SeriesTriple triple = assemble_triple(record, fixtures);
    out.ord_h3 = vanishing_order(triple.s3);

    const SturmBound bound =
        sturm_bound(record.label.level, 2 * degree, record.group);
    const RelationResult rel = find_relation(triple, degree, bound);
    out.dimension = rel.dimension;

    if (degree == 4) {
      if (rel.classification != RelationClass::UniqueQuartic) {
        note_failure("expected a unique quartic, found a " +
                     std::to_string(rel.dimension) +
                     "-dimensional relation space");
      } else {
        out.found = rel.relations[0];
        out.polynomial_matches = out.found == stored;
        if (!out.polynomial_matches)
          note_failure("stored polynomial " + stored.text() +
                       " but recomputed " + out.found.text());
      }
    } else {
      if (rel.dimension == 0) {
        note_failure("no degree-" + std::to_string(degree) +
                     " relation found");
      } else {
        out.found = rel.relations[0];
        out.polynomial_matches =
            rel.dimension != 1 || out.found == stored;
        if (!out.polynomial_matches)
          note_failure("stored polynomial " + stored.text() +
                       " but recomputed " + out.found.text());
      }
    }
    out.vanishing_ok = certify_vanishing(stored, triple, bound);
    if (!out.vanishing_ok) note_failure("vanishing certificate failed");

    if (degree == 4) {
      const SturmBound w6 = sturm_bound(record.label.level, 6, record.group);
      try {
        out.psi = psi_certificate(stored, triple, w6);
        if (out.psi.status != record.expected_psi_status)
          note_failure("psi status " + psi_status_text(out.psi.status) +
                       ", expected " +
                       psi_status_text(record.expected_psi_status));
        else if (record.expected_psi &&
                 out.psi.status == PsiStatus::Constant &&
                 out.psi.c != *record.expected_psi)
          note_failure("psi constant " + format_rational(out.psi.c) +
                       ", expected " + format_rational(*record.expected_psi));
      } catch (const Error& e) {
        note_failure(std::string("psi certificate: ") + e.what());
      }
    }
  }

  // Smoothness and the tangent classification at (1:0:0) are statements
  // about smooth plane quartic models; higher-degree plane models of a
  // genus-3 curve are necessarily singular and are not checked.
  if (options.run_smoothness && degree == 4) {
    try {
      out.smoothness = check_smooth(stored);
      if (record.expected_smooth) {
        const bool smooth =
            out.smoothness.verdict == SmoothnessCertificate::Verdict::Smooth;
        const bool singular =
            out.smoothness.verdict == SmoothnessCertificate::Verdict::Singular;
        if (*record.expected_smooth && !smooth)
          note_failure("smoothness not certified: " + out.smoothness.detail);
        if (!*record.expected_smooth && !singular)
          note_failure("expected a singular model: " + out.smoothness.detail);
      }
    } catch (const Error& e) {
      note_failure(std::string("smoothness check: ") + e.what());
    }
  }

  if (degree == 4) {
    std::optional<int> ord_for_flex;
    if (record.recipe.kind == TripleRecipe::Kind::Normalized && out.ord_h3)
      ord_for_flex = *out.ord_h3;
    out.flex = classify_P_infinity(stored, ord_for_flex);
    const FlexKind expected =
        record.expected_flex.value_or(record.marker_flex_kind());
    if (out.flex.kind != expected)
      note_failure("flex classification " + flex_kind_text(out.flex.kind) +
                   ", expected " + flex_kind_text(expected));
    else if (out.flex.consistent_with_order &&
             !*out.flex.consistent_with_order)
      note_failure("flex class inconsistent with the order of s3");
  }

  if (!options.point_count_primes.empty()) {
    std::vector<FactorMultiplicity> mults;
    for (const auto& f : record.factors)
      mults.push_back({&fixtures.require(f.label), f.multiplicity});
    for (const long p : options.point_count_primes) {
      try {
        // Trace predictions apply to smooth models only; higher-degree
        // plane models are singular, so their raw counts are informational.
        if (record.label.level % p == 0 || degree != 4) {
          out.counts.push_back(count_points(stored, p));
        } else {
          out.counts.push_back(
              count_points(stored, p, mults, record.label.level));
          if (out.counts.back().consistent && !*out.counts.back().consistent)
            note_failure("point count at p=" + std::to_string(p) +
                         " disagrees with the trace prediction");
        }
      } catch (const Error& e) {
        note_failure("point count at p=" + std::to_string(p) + ": " +
                     e.what());
      }
    }
  }

  if (record.canonical_model) {
    const CanonicalModel& cm = *record.canonical_model;
    if (options.run_smoothness) {
      try {
        out.canonical_smooth = check_smooth(cm.poly);
        if (out.canonical_smooth->verdict !=
            SmoothnessCertificate::Verdict::Smooth)
          note_failure("canonical model not certified smooth: " +
                       out.canonical_smooth->detail);
      } catch (const Error& e) {
        note_failure(std::string("canonical model smoothness: ") + e.what());
      }
    }
    out.canonical_flex = classify_P_infinity(cm.poly);
    if (!options.point_count_primes.empty()) {
      std::vector<FactorMultiplicity> mults;
      for (const auto& f : cm.count_factors)
        mults.push_back({&fixtures.require(f.label), f.multiplicity});
      for (const long p : options.point_count_primes) {
        try {
          if (record.label.level % p == 0) {
            out.canonical_counts.push_back(count_points(cm.poly, p));
          } else {
            out.canonical_counts.push_back(
                count_points(cm.poly, p, mults, record.label.level));
            if (out.canonical_counts.back().consistent &&
                !*out.canonical_counts.back().consistent)
              note_failure("canonical model count at p=" + std::to_string(p) +
                           " disagrees with the trace prediction");
          }
        } catch (const Error& e) {
          note_failure("canonical model count at p=" + std::to_string(p) +
                       ": " + e.what());
        }
      }
    }
  }

  out.verified = out.failure.empty();
  return out;
}

}  // namespace modcurve
