#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "stabrad/nonaut.hpp"
#include "stabrad/system.hpp"

namespace stabrad {

// On-disk system description: matrices as nested arrays of [re, im]
// pairs, norms as "l1" / "l2" / "linf" or {"p": value}, plus an optional
// time-varying block.
struct SystemDocument {
    LtiSystem lti;
    nlohmann::json time_varying;  // null when absent

    bool has_time_varying() const { return !time_varying.is_null(); }
    TimeVaryingSystem make_time_varying(double step) const;
};

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const std::string& where);

nlohmann::json normspec_to_json(const NormSpec& n);
NormSpec normspec_from_json(const nlohmann::json& j, const std::string& where);

SystemDocument parse_system_document(const nlohmann::json& j);
nlohmann::json serialize_system_document(const SystemDocument& doc);

SystemDocument load_system_document(const std::string& path);

}  // namespace stabrad
