#pragma once

#include <filesystem>
#include <string>

#include "tlhom/diagrams.hpp"

namespace tlh {

/** {"left": m, "right": n, "arcs": [["L",1,"R",2], ...]} in canonical arc order. */
std::string diagram_to_json(const Diagram& d);
/** Parses the text format; throws InvalidInput on malformed or non-planar input. */
Diagram diagram_from_json(const std::string& text);
Diagram read_diagram_file(const std::filesystem::path& path);

}  // namespace tlh
