#include "topologic/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "topologic/errors.hpp"

namespace topologic {

namespace {

using nlohmann::json;

PointSet set_from_json(const SubsetSpace& space, const json& names, const std::string& where) {
  if (!names.is_array()) throw InputError(where + ": expected a list of point names");
  PointSet out;
  for (const json& n : names) {
    if (!n.is_string()) throw InputError(where + ": point names must be strings");
    out = out | PointSet::singleton(space.index_of_point(n.get<std::string>()));
  }
  return out;
}

json set_to_json(const SubsetSpace& space, PointSet s) {
  json out = json::array();
  for (std::size_t x : s.members()) out.push_back(space.point_names()[x]);
  return out;
}

}  // namespace

Family family_from_json(const SubsetSpace& space, const json& doc) {
  if (!doc.is_array()) throw InputError("expected a list of opens");
  Family out;
  for (const json& entry : doc) out.push_back(set_from_json(space, entry, "open"));
  return out;
}

Model model_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("model document must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "points" && key != "opens" && key != "valuation") {
      throw InputError("unexpected key in model document: " + key);
    }
  }
  if (!doc.contains("points") || !doc.contains("opens")) {
    throw InputError("model document needs 'points' and 'opens'");
  }
  const json& points = doc.at("points");
  if (!points.is_array()) throw InputError("'points' must be a list");
  std::vector<std::string> names;
  for (const json& p : points) {
    if (!p.is_string()) throw InputError("point names must be strings");
    names.push_back(p.get<std::string>());
  }
  // A provisional space containing only X resolves point names for the opens.
  const SubsetSpace naming = make_space(names, {PointSet::full(names.size())});
  Family opens = family_from_json(naming, doc.at("opens"));
  SubsetSpace space = make_space(std::move(names), std::move(opens));

  std::map<std::string, PointSet> valuation;
  if (doc.contains("valuation")) {
    const json& val = doc.at("valuation");
    if (!val.is_object()) throw InputError("'valuation' must be an object");
    for (const auto& [atom, members] : val.items()) {
      valuation[atom] = set_from_json(space, members, "valuation of " + atom);
    }
  }
  return Model(std::move(space), std::move(valuation));
}

json model_to_json(const Model& model) {
  const SubsetSpace& space = model.space();
  json doc;
  doc["points"] = space.point_names();
  json opens = json::array();
  for (PointSet u : space.opens()) opens.push_back(set_to_json(space, u));
  doc["opens"] = std::move(opens);
  json val = json::object();
  for (const auto& [atom, value] : model.valuation()) val[atom] = set_to_json(space, value);
  doc["valuation"] = std::move(val);
  return doc;
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read model file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("malformed model file " + path.string() + ": " + e.what());
  }
  return model_from_json(doc);
}

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write model file " + path.string());
  out << model_to_json(model).dump(2) << '\n';
}

std::string format_set(const SubsetSpace& space, PointSet s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t x : s.members()) {
    if (!first) out += ',';
    out += space.point_names()[x];
    first = false;
  }
  return out + "}";
}

std::string format_family(const SubsetSpace& space, const Family& family) {
  std::string out = "{";
  bool first = true;
  for (PointSet s : canonical(family)) {
    if (!first) out += ", ";
    out += format_set(space, s);
    first = false;
  }
  return out + "}";
}

PointSet parse_point_list(const SubsetSpace& space, const std::string& text) {
  std::string body = text;
  if (!body.empty() && body.front() == '{') body.erase(body.begin());
  if (!body.empty() && body.back() == '}') body.pop_back();
  PointSet out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    out = out | PointSet::singleton(space.index_of_point(item.substr(b, e - b + 1)));
  }
  return out;
}

}  // namespace topologic
