#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "boxprod/boxgroup.hpp"
#include "boxprod/witness.hpp"

namespace boxprod {

/// One predicted property. An empty value means the inputs lie outside the
/// hypotheses of every applicable theorem.
struct Verdict {
  std::string name;
  std::optional<bool> value;
  /// Rendering of the value, e.g. "2^aleph_0" for the cardinality class.
  std::string display;
  std::string citation;
  std::string note;
  /// Name of the witness or certificate section supporting the verdict.
  std::string evidence;
};

struct SuborbitRow {
  std::size_t distance = 0;
  std::vector<std::size_t> sizes;
};

struct AnalysisReport {
  GroupProperties m, n;
  std::string m_spec, n_spec;
  std::string m_order, n_order;
  std::vector<Verdict> verdicts;
  QuotientGraph quotient;
  std::vector<SuborbitRow> suborbits;

  const Verdict& verdict(const std::string& name) const;
};

/// Verdicts from the properties of M and N alone.
AnalysisReport predict(const PermGroup& M, const PermGroup& N);

/// Hypotheses of the simplicity criterion, checked on M and N.
struct SimplicityHypotheses {
  bool degrees_at_least_two = false;
  bool generated_by_point_stabilisers = false;
  bool some_nontrivial = false;
  bool hold() const {
    return degrees_at_least_two && generated_by_point_stabilisers && some_nontrivial;
  }
};

SimplicityHypotheses simplicity_hypotheses(const PermGroup& M, const PermGroup& N);

nlohmann::json to_json(const AnalysisReport& report);
nlohmann::json to_json(const Witness& witness, const TruncatedTree& tree,
                       const LegalColouring* c = nullptr);
nlohmann::json to_json(const PrimitivityCertificate& cert, const TruncatedTree& tree);
nlohmann::json to_json(const SuborbitTable& table, const TruncatedTree& tree);
nlohmann::json to_json(const AmalgamReport& report);
nlohmann::json to_json(const CrossCheck& check);
nlohmann::json to_json(const WitnessCheck& check);
nlohmann::json to_json(const DiscretenessSearch& search, const TruncatedTree& tree);
nlohmann::json to_json(const QuotientGraph& quotient);

}  // namespace boxprod
