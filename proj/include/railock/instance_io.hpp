#pragma once

#include "railock/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace railock
{

// Instance file format:
//
//   { "infrastructure": {
//       "delimiters": ["d1", ...],
//       "partial_routes": [ {"id":"r1","length":50.0,"entry":"d1","exit":null}, ... ],
//       "elementary_routes": [ {"id":"AC","parts":["r1","r2"]}, ... ],
//       "conflicts": [ ["r1","r9"], ... ] },
//     "trains": [ {"id":"t1","length":120.0,"initial":["r1"],"final":["r14"]}, ... ] }
//
// Conflicts may be listed one-sided; they are symmetrized on load and written
// once per unordered pair.
problem_instance parse_instance( std::string_view text );
problem_instance instance_from_json( const nlohmann::json& doc );
problem_instance load_instance( const std::filesystem::path& path );

std::string serialize_instance( const problem_instance& inst );
nlohmann::json instance_to_json( const problem_instance& inst );
void save_instance( const problem_instance& inst, const std::filesystem::path& path );

} // namespace railock
