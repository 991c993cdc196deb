#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "regtri/bounds.hpp"
#include "regtri/census.hpp"
#include "regtri/enumerate.hpp"
#include "regtri/generators.hpp"
#include "regtri/reveal.hpp"
#include "regtri/sampler.hpp"
#include "regtri/structure.hpp"

namespace regtri {

inline constexpr int kSchemaVersion = 1;

// All artifact emitters are deterministic: object keys are sorted by
// nlohmann's std::map storage, rationals are "p/q" strings, floats go through
// bigfloat_str, and no timestamps appear.
nlohmann::json census_json(const RegularGraph& g, std::uint32_t k_max);
nlohmann::json profile_json(const RevealProfile& p);
nlohmann::json bound_sheet_json(const BoundSheet& sheet);
std::string bound_sheet_csv_row(const BoundSheet& sheet);
std::string bound_sheet_csv_header();
nlohmann::json structure_json(const StructureReport& r);
nlohmann::json planted_spec_json(const PlantedSpec& spec);
PlantedSpec planted_spec_from_json(const nlohmann::json& j);
nlohmann::json enumeration_json(const EnumerationResult& r);
nlohmann::json trace_json(const ChainTrace& t);
std::string trace_csv(const ChainTrace& t);

// Canonical on-disk form: 2-space indent, sorted keys, trailing newline.
std::string dump_artifact(const nlohmann::json& j);

} // namespace regtri
