#pragma once

#include <string>

#include <json.hpp>

#include "amalgam/comp_setting.hpp"
#include "amalgam/families.hpp"

namespace amalgam {

using Json = nlohmann::json;

inline constexpr const char* kQuiverSchema = "amalgam-quiver/1";
inline constexpr const char* kRepSchema = "amalgam-rep/1";
inline constexpr const char* kGroupRepSchema = "amalgam-grouprep/1";

/// Schema violation; the message starts with the JSON path of the field.
class SchemaError : public std::runtime_error {
public:
  SchemaError(const std::string& path, const std::string& what) : std::runtime_error(path + ": " + what) {}
};

/// {"base": [k...], "left": {"blocks": [...], "mult": [[...]]}, "right": {...},
///  "labels": {"base": [...], "left": [...], "right": [...]}} (labels optional).
AmalgamSpec amalgam_from_json(const Json& j);
Json amalgam_to_json(const AmalgamSpec& spec);

Json setting_to_json(const QuiverSetting& qs, bool possibly_incomplete);

Json quiver_to_json(const Quiver& q);
/// Returns the shared standard quiver when the description matches one.
QuiverPtr quiver_from_json(const Json& j);

/// Complex matrices as rows of [re, im] pairs.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, const std::string& path);

/// {"schema", "quiver", "dims", "arrows": {name: matrix}, "lambda"?}.
Json representation_to_json(const QuiverRepresentation& r, const CentralElement* lambda = nullptr);
QuiverRepresentation representation_from_json(const Json& j);
/// The optional "lambda" field (empty when absent).
CentralElement lambda_from_json(const Json& j);

/// {"schema", "group", "scale", "generators": {name: matrix}}.
Json group_rep_to_json(const GroupRep& rep);
GroupRep group_rep_from_json(const Json& j);

Json calogero_to_json(const CalogeroPoint& p);

/// Serialises with sorted keys and a fixed indentation.
std::string dump(const Json& j);

}  // namespace amalgam
