#pragma once

// Quiver specification files: a JSON document
//
//   {
//     "vertices": ["1", "2", "3"],
//     "arrows": [{"from": "1", "to": "2"}, ...],
//     "dimension": {"1": 1, "2": 1, "3": 1},
//     "stability": {"1": 2, "2": 1, "3": -3} | "canonical",
//     "framing": {"i": "1", "j": "3", "N": 2},          optional, N optional
//     "oracle": {"prime": 2, "budget": 1000000, "seed": 7}  optional, fields optional
//   }

#include "quiverkit/quiver.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace quiverkit {

struct FramingBlock {
    std::string i;
    std::string j;
    std::optional<std::int64_t> scale;

    friend bool operator==(const FramingBlock&, const FramingBlock&) = default;
};

struct OracleBlock {
    std::optional<std::int64_t> prime;
    std::optional<std::uint64_t> budget;
    std::optional<std::uint64_t> seed;

    friend bool operator==(const OracleBlock&, const OracleBlock&) = default;
};

struct QuiverSpec {
    Quiver quiver;
    DimensionVector dimension;
    StabilityParameter stability;
    bool canonical_stability_requested = false;
    std::optional<FramingBlock> framing;
    std::optional<OracleBlock> oracle;

    friend bool operator==(const QuiverSpec&, const QuiverSpec&) = default;
};

/// Input error with the location it refers to ("file:line:col" for syntax
/// errors, "file: /json/pointer" for schema errors).
class SpecError : public Error {
public:
    SpecError(const std::string& location, const std::string& message)
        : Error(ErrorKind::InvalidArgument, location + ": " + message), location_(location) {}
    const std::string& location() const { return location_; }

private:
    std::string location_;
};

/// Validates `doc` and builds the spec. `source` names the document in errors.
/// Rejects theta with theta(d) != 0, suggesting the canonical parameter.
QuiverSpec parse_spec(const nlohmann::json& doc, const std::string& source = "<spec>");
QuiverSpec parse_spec_text(const std::string& text, const std::string& source = "<spec>");
QuiverSpec load_spec(const std::string& path);

nlohmann::json to_json(const QuiverSpec& spec);

}  // namespace quiverkit
