#pragma once

#include "json.hpp"

#include "corename/facts.hpp"

namespace corename {

nlohmann::json facts_to_json(const CodeFacts& facts);
/// Throws Error(ParseError) on a malformed document.
CodeFacts facts_from_json(const nlohmann::json& doc);

}  // namespace corename
