#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "sumsetlab/sumsets.hpp"

namespace sumsetlab {

/// Instance document:
///   {"p": 7,
///    "sets": [[0,1,2,3], [0,1,2,3]],
///    "forbidden": {"1,2": [0], "2,1": [0]}}
/// Keys of "forbidden" are 1-based ordered pairs "i,j" with i != j; a pair
/// that is not listed has the empty forbidden set. All residues lie in
/// [0, p). Throws Error{invalid_instance} (or Error{not_prime}) on bad input.
SumsetInstance instance_from_json(const nlohmann::json& doc);
SumsetInstance parse_instance(std::string_view text);
SumsetInstance load_instance(const std::filesystem::path& path);

/// Canonical form: elements ascending, every ordered pair listed in
/// (i, j) order.
nlohmann::json instance_to_json(const SumsetInstance& inst);

}  // namespace sumsetlab
