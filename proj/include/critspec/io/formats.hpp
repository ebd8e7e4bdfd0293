#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "critspec/reeb/reeb_graph.hpp"
#include "critspec/spectral/pages.hpp"
#include "critspec/spectral/two_columns.hpp"

namespace critspec {

// Bad input files. Parse errors cover syntax and schema (with the offending
// line or field); validation errors cover well-formed files whose complex is
// not closed under faces.
class InputError : public std::runtime_error {
 public:
  enum class Kind { Io, Parse, Validation };
  InputError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct Instance {
  LeveledComplex lc;
  std::vector<long long> ids;  // external id of each internal vertex, increasing
};

Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
nlohmann::json instance_to_json(const Instance& instance);

E1Page parse_e1(const std::string& text);
E1Page load_e1(const std::string& path);
nlohmann::json e1_to_json(const E1Page& page);

nlohmann::json group_to_json(const AbelianGroup& g, const Coefficients& ring);
AbelianGroup group_from_json(const nlohmann::json& j);
nlohmann::json e2_to_json(const E2Page& page);
E2Page e2_from_json(const nlohmann::json& j);
nlohmann::json homology_to_json(const AssembledHomology& h);
AssembledHomology homology_from_json(const nlohmann::json& j);
nlohmann::json reeb_to_json(const ReebGraph& g);
ReebGraph reeb_from_json(const nlohmann::json& j);
nlohmann::json word_to_json(const ReebGraph& g, const SignedWord& w);
nlohmann::json two_columns_to_json(const TwoColumnReport& report, const Coefficients& ring);

std::string read_file(const std::string& path);

}  // namespace critspec
