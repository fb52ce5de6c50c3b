#include "tlhom/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tlh {

namespace {

Side parse_side(const nlohmann::json& j) {
  if (!j.is_string()) throw InvalidInput("arc side must be \"L\" or \"R\"");
  auto s = j.get<std::string>();
  if (s == "L") return Side::L;
  if (s == "R") return Side::R;
  throw InvalidInput("arc side must be \"L\" or \"R\", got " + s);
}

}  // namespace

std::string diagram_to_json(const Diagram& d) {
  nlohmann::json j;
  j["left"] = d.left();
  j["right"] = d.right();
  j["arcs"] = nlohmann::json::array();
  for (auto& [u, v] : d.arcs())
    j["arcs"].push_back({u.side == Side::L ? "L" : "R", u.index, v.side == Side::L ? "L" : "R", v.index});
  return j.dump();
}

Diagram diagram_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("diagram: ") + e.what());
  }
  if (!j.is_object() || !j.contains("left") || !j.contains("right") || !j.contains("arcs"))
    throw InvalidInput("diagram needs fields left, right, arcs");
  if (!j["left"].is_number_integer() || !j["right"].is_number_integer() || !j["arcs"].is_array())
    throw InvalidInput("diagram fields have the wrong type");
  std::vector<Arc> arcs;
  for (auto& a : j["arcs"]) {
    if (!a.is_array() || a.size() != 4 || !a[1].is_number_integer() || !a[3].is_number_integer())
      throw InvalidInput("arc must be [side, index, side, index]");
    arcs.push_back({{parse_side(a[0]), a[1].get<int>()}, {parse_side(a[2]), a[3].get<int>()}});
  }
  return Diagram::from_arcs(j["left"].get<int>(), j["right"].get<int>(), arcs);
}

Diagram read_diagram_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return diagram_from_json(s.str());
}

}  // namespace tlh
