#pragma once

#include <string>

#include <json.hpp>

#include "multent/subshift.hpp"

namespace multent {

using Json = nlohmann::ordered_json;

/// Schema: {"name": str, "alphabet": int, "kind": "sft"|"forbidden_words"|"full",
///          "adjacency": [[0|1,...],...]?, "forbidden": ["01",...]?}
/// Words are digit strings for alphabets up to 10, comma-separated integers
/// otherwise.
SubshiftSpec subshift_from_json(const Json& j);
Json subshift_to_json(const SubshiftSpec& spec);

SubshiftSpec load_subshift(const std::string& path);

std::string word_to_string(const std::vector<int>& word, int alphabet);
std::vector<int> word_from_string(const std::string& s, int alphabet);

} // namespace multent
