#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "topologic/space.hpp"

namespace topologic {

// Model documents are JSON objects with exactly three keys:
//
//   {
//     "points":    ["0", "1", "2"],
//     "opens":     [[], ["0"], ["0", "1"], ["0", "1", "2"]],
//     "valuation": {"A": ["0"], "B": ["0", "1"]}
//   }
//
// Points are referred to by name. The whole point set must be listed among
// the opens.

Model model_from_json(const nlohmann::json& doc);
nlohmann::json model_to_json(const Model& model);

/// Throws InputError on unreadable files or malformed documents.
Model load_model(const std::filesystem::path& path);
void save_model(const Model& model, const std::filesystem::path& path);

/// A list of point-name lists, e.g. [["0"], ["0","1"]].
Family family_from_json(const SubsetSpace& space, const nlohmann::json& doc);

/// "{0,1,2}" using declared point names; "{}" for the empty set.
std::string format_set(const SubsetSpace& space, PointSet s);
/// "{{}, {0}, X}"-style rendering in canonical order.
std::string format_family(const SubsetSpace& space, const Family& family);

/// Parses "0,1" (comma separated point names, possibly braced) into a set.
PointSet parse_point_list(const SubsetSpace& space, const std::string& text);

}  // namespace topologic
