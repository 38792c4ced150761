#include "modcurve/newform.hpp"

#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "modcurve/errors.hpp"

namespace modcurve {

namespace {
using nlohmann::ordered_json;
}

NewformLabel NewformLabel::parse(std::string_view text) {
  size_t i = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
    ++i;
  if (i == 0) fail("label-syntax", "label must start with the level");
  long level = 0;
  try {
    level = std::stol(std::string(text.substr(0, i)));
  } catch (const std::exception&) {
    fail("label-syntax", "level out of range in label");
  }
  size_t j = i;
  while (j < text.size() && std::isupper(static_cast<unsigned char>(text[j])))
    ++j;
  if (j == i) fail("label-syntax", "label needs a letter after the level");
  NewformLabel out;
  out.level = level;
  out.letters = std::string(text.substr(i, j - i));
  if (j == text.size()) {
    out.character = DirichletCharacterCode::trivial(level);
    return out;
  }
  // subscript: _{e1,e2,...}
  if (text[j] != '_' || j + 1 >= text.size() || text[j + 1] != '{' ||
      text.back() != '}')
    fail("label-syntax", "malformed character subscript in label");
  const std::string_view inner = text.substr(j + 2, text.size() - j - 3);
  std::vector<long> slots;
  size_t pos = 0;
  while (pos <= inner.size()) {
    size_t comma = inner.find(',', pos);
    if (comma == std::string_view::npos) comma = inner.size();
    const std::string entry{inner.substr(pos, comma - pos)};
    if (entry.empty()) fail("label-syntax", "empty character exponent entry");
    try {
      slots.push_back(std::stol(entry));
    } catch (const std::exception&) {
      fail("label-syntax", "malformed character exponent: " + entry);
    }
    pos = comma + 1;
    if (comma == inner.size()) break;
  }
  out.character = DirichletCharacterCode(level, slots);
  return out;
}

std::string NewformLabel::text() const {
  std::string out = std::to_string(level) + letters;
  if (!character.is_trivial()) out += "_{" + character.subscript_text() + "}";
  return out;
}

bool NewformLabel::operator<(const NewformLabel& o) const {
  if (level != o.level) return level < o.level;
  if (letters != o.letters) return letters < o.letters;
  return character.slots() < o.character.slots();
}

EigenformPackage::EigenformPackage(NewformLabel label,
                                   std::shared_ptr<const NumberField> field,
                                   long nebentypus_order,
                                   std::vector<NFElem> coefficients,
                                   std::string provenance)
    : label_(std::move(label)),
      field_(std::move(field)),
      neben_order_(nebentypus_order),
      an_(std::move(coefficients)),
      provenance_(std::move(provenance)) {
  if (an_.empty()) fail("schema", "package carries no coefficients");
}

const NFElem& EigenformPackage::a(int n) const {
  if (n < 1 || n > trunc_order())
    fail("invalid-parameter",
         "coefficient a_" + std::to_string(n) + " outside package range 1.." +
             std::to_string(trunc_order()));
  return an_[static_cast<size_t>(n - 1)];
}

void EigenformPackage::validate() const {
  const int M = trunc_order();
  // Normalization.
  if (!(a(1) == field_->from_rational(1)))
    fail("schema", label_.text() + ": a_1 must equal 1");
  // Character code sanity.
  if (label_.character.modulus() != label_.level)
    fail("schema", label_.text() + ": character modulus differs from level");
  if (label_.character.order() != neben_order_)
    fail("schema", label_.text() + ": nebentypus_order " +
                       std::to_string(neben_order_) +
                       " differs from the character order " +
                       std::to_string(label_.character.order()));
  // Multiplicativity a_{mn} = a_m a_n for coprime m, n.
  for (int m = 2; m * 2 <= M; ++m) {
    for (int n = m + 1; m * n <= M; ++n) {
      if (std::gcd(m, n) != 1) continue;
      if (!(a(m * n) == a(m) * a(n)))
        fail("multiplicativity",
             label_.text() + ": a_" + std::to_string(m * n) +
                 " != a_" + std::to_string(m) + " * a_" + std::to_string(n) +
                 "  (m,n)=(" + std::to_string(m) + "," + std::to_string(n) +
                 ")");
    }
  }
  // Hecke recursion at good primes, for every admissible embedding of the
  // character values into the coefficient field; at least one embedding must
  // satisfy all recursions simultaneously.
  std::vector<NFElem> embeddings =
      primitive_roots_of_unity(field_, label_.character.order());
  if (embeddings.empty())
    fail("character-embedding",
         label_.text() + ": character of order " +
             std::to_string(label_.character.order()) +
             " does not embed into " + field_->poly().text());
  std::string first_failure;
  for (const NFElem& zeta : embeddings) {
    bool ok = true;
    for (long p = 2; p * p <= M && ok; ++p) {
      // p runs over primes p with p^2 <= M; composite p skipped below.
      bool prime = true;
      for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) prime = false;
      if (!prime || label_.level % p == 0) continue;
      const Rat r = label_.character.value_exponent(p);
      // epsilon(p) = zeta^k with k = r * order (an integer).
      const Rat k_rat = r * label_.character.order();
      NFElem eps = field_->from_rational(1);
      for (Int k = numerator(k_rat); k > 0; --k) eps = eps * zeta;
      for (long pr = p; pr * p <= M; pr *= p) {
        const NFElem expect =
            a(static_cast<int>(p)) * a(static_cast<int>(pr)) -
            eps * a(static_cast<int>(pr / p)) * static_cast<long long>(p);
        if (!(a(static_cast<int>(pr * p)) == expect)) {
          ok = false;
          if (first_failure.empty())
            first_failure = label_.text() + ": Hecke recursion fails at a_" +
                            std::to_string(pr * p) + " (prime " +
                            std::to_string(p) + ", power " +
                            std::to_string(pr * p) + ")";
          break;
        }
      }
    }
    if (ok) return;
  }
  fail("hecke-recursion", first_failure.empty()
                              ? label_.text() + ": no embedding satisfies the recursion"
                              : first_failure);
}

namespace {

DirichletCharacterCode character_from_json(long level,
                                           const ordered_json& neb) {
  if (!neb.is_array()) fail("schema", "nebentypus must be a list");
  const auto factors = factorize(level);
  if (neb.size() != factors.size())
    fail("schema", "nebentypus must list every prime power of the level");
  std::vector<long> slots;
  for (size_t i = 0; i < factors.size(); ++i) {
    const auto& [p, alpha] = factors[i];
    const auto& entry = neb[i];
    if (!entry.contains("prime_power") || !entry.contains("exponent"))
      fail("schema", "nebentypus entry needs prime_power and exponent");
    const std::string pp = entry["prime_power"].get<std::string>();
    const std::string expected =
        alpha == 1 ? std::to_string(p)
                   : std::to_string(p) + "^" + std::to_string(alpha);
    if (pp != expected)
      fail("schema", "nebentypus entry " + pp + " does not match level factor " +
                         expected);
    const auto& e = entry["exponent"];
    if (p == 2 && alpha >= 3) {
      if (!e.is_array() || e.size() != 2)
        fail("schema", "2^a (a>=3) requires an exponent pair");
      slots.push_back(e[0].get<long>());
      slots.push_back(e[1].get<long>());
    } else if (p == 2 && alpha == 1) {
      if (!e.is_number_integer() || e.get<long>() != 0)
        fail("schema", "the 2^1 component admits only exponent 0");
    } else {
      if (!e.is_number_integer())
        fail("schema", "nebentypus exponent must be an integer");
      slots.push_back(e.get<long>());
    }
  }
  return DirichletCharacterCode(level, slots);
}

ordered_json character_to_json(const DirichletCharacterCode& code) {
  ordered_json out = ordered_json::array();
  const auto slots = code.slots();
  size_t idx = 0;
  for (const auto& c : code.components()) {
    ordered_json entry;
    entry["prime_power"] =
        c.alpha == 1 ? std::to_string(c.prime)
                     : std::to_string(c.prime) + "^" + std::to_string(c.alpha);
    if (c.prime == 2 && c.alpha >= 3) {
      entry["exponent"] = ordered_json::array({slots[idx], slots[idx + 1]});
      idx += 2;
    } else if (c.prime == 2 && c.alpha == 1) {
      entry["exponent"] = 0;
    } else {
      entry["exponent"] = slots[idx];
      idx += 1;
    }
    out.push_back(entry);
  }
  return out;
}

}  // namespace

EigenformPackage parse_package_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail("schema", std::string("package is not valid JSON: ") + e.what());
  }
  for (const char* key :
       {"schema_version", "level", "label", "nebentypus", "field_poly",
        "coefficients", "provenance"}) {
    if (!doc.contains(key))
      fail("schema", std::string("package missing field: ") + key);
  }
  if (doc["schema_version"].get<int>() != 1)
    fail("schema", "unsupported schema_version");
  const long level = doc["level"].get<long>();
  NewformLabel label = NewformLabel::parse(doc["label"].get<std::string>());
  if (label.level != level)
    fail("schema", "label level differs from the level field");
  const DirichletCharacterCode code =
      character_from_json(level, doc["nebentypus"]);
  if (!(label.character == code))
    fail("schema", "label character subscript differs from nebentypus data");
  std::vector<Int> poly;
  for (const auto& c : doc["field_poly"]) {
    if (c.is_number_integer())
      poly.emplace_back(c.get<long long>());
    else
      poly.emplace_back(Int(c.get<std::string>()));
  }
  auto field = NumberField::create(MinimalPolynomial(std::move(poly)));
  const int deg = field->degree();
  std::vector<NFElem> an;
  for (const auto& row : doc["coefficients"]) {
    if (!row.is_array() || static_cast<int>(row.size()) != deg)
      fail("schema", "coefficient row length must equal the field degree");
    std::vector<Rat> co;
    for (const auto& v : row) co.push_back(parse_rational(v.get<std::string>()));
    an.push_back(field->element(std::move(co)));
  }
  EigenformPackage pkg(std::move(label), field, code.order(), std::move(an),
                       doc["provenance"].get<std::string>());
  pkg.validate();
  return pkg;
}

EigenformPackage load_package_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("io", "cannot open package file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_package_json(buf.str());
}

std::string package_to_json(const EigenformPackage& pkg) {
  ordered_json doc;
  doc["schema_version"] = 1;
  doc["level"] = pkg.label().level;
  doc["label"] = pkg.label().text();
  doc["nebentypus"] = character_to_json(pkg.label().character);
  ordered_json poly = ordered_json::array();
  for (const auto& c : pkg.field()->poly().coefficients()) poly.push_back(c.str());
  doc["field_poly"] = poly;
  ordered_json rows = ordered_json::array();
  for (int n = 1; n <= pkg.trunc_order(); ++n) {
    ordered_json row = ordered_json::array();
    for (const auto& c : pkg.a(n).coords()) row.push_back(format_rational(c));
    rows.push_back(row);
  }
  doc["coefficients"] = rows;
  doc["provenance"] = pkg.provenance();
  return doc.dump(1);
}

}  // namespace modcurve
