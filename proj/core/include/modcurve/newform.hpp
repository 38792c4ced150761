// Newform labels (level + letter + character subscript) and eigenform
// coefficient packages: ingestion from JSON fixture files with full
// validation of the eigenform axioms (normalization, multiplicativity,
// Hecke recursion at good primes with character values embedded in the
// coefficient field).
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "modcurve/dirichlet.hpp"
#include "modcurve/numberfield.hpp"
#include "modcurve/qseries.hpp"

namespace modcurve {

struct NewformLabel {
  long level = 0;
  std::string letters;                 // "A", "B", ..., possibly multi-letter
  DirichletCharacterCode character{1, {}};

  static NewformLabel parse(std::string_view text);
  std::string text() const;  // canonical: subscript iff character nontrivial

  bool operator==(const NewformLabel& o) const {
    return level == o.level && letters == o.letters &&
           character == o.character;
  }
  // Ordering used for deterministic tie-breaks: by level, then letters,
  // then character slots.
  bool operator<(const NewformLabel& o) const;
};

class EigenformPackage {
public:
  EigenformPackage(NewformLabel label,
                   std::shared_ptr<const NumberField> field,
                   long nebentypus_order, std::vector<NFElem> coefficients,
                   std::string provenance);

  const NewformLabel& label() const { return label_; }
  const std::shared_ptr<const NumberField>& field() const { return field_; }
  int degree() const { return field_->degree(); }
  long nebentypus_order() const { return neben_order_; }
  int trunc_order() const { return static_cast<int>(an_.size()); }
  const std::string& provenance() const { return provenance_; }

  // 1-based coefficient a_n.
  const NFElem& a(int n) const;

  // Validates every package invariant; throws on the first violation.
  void validate() const;

private:
  NewformLabel label_;
  std::shared_ptr<const NumberField> field_;
  long neben_order_;
  std::vector<NFElem> an_;
  std::string provenance_;
};

// Parse + validate a package document (JSON text / file).
EigenformPackage parse_package_json(const std::string& text);
EigenformPackage load_package_file(const std::string& path);

// Canonical serialization (deterministic field order and formatting).
std::string package_to_json(const EigenformPackage& pkg);

}  // namespace modcurve
