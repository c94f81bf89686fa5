#pragma once

#include <string>

#include "layercraft/poset.hpp"

namespace layercraft {

/// Bottom-up layered DOT digraph of the Hasse diagram; node order follows the
/// canonical element order, so output is deterministic.
inline std::string hasse_dot(const Poset& p, const std::string& name = "poset") {
  std::string out = "digraph " + name + " {\n";
  out += "  rankdir=BT;\n  node [shape=box];\n";
  for (int i = 0; i < p.size(); ++i) {
    std::string label = p.label(i);
    std::string escaped;
    for (char c : label) {
      if (c == '"' || c == '\\') escaped += '\\';
      escaped += c;
    }
    out += "  n" + std::to_string(i) + " [label=\"" + escaped + "\"];\n";
  }
  for (int r = 0; r <= p.rank(); ++r) {
    std::string line = "  { rank=same;";
    bool any = false;
    for (int i = 0; i < p.size(); ++i)
      if (p.rank_of(i) == r) {
        line += " n" + std::to_string(i) + ";";
        any = true;
      }
    if (any) out += line + " }\n";
  }
  for (int x = 0; x < p.size(); ++x)
    for (int y : p.upper_covers(x))
      out += "  n" + std::to_string(x) + " -> n" + std::to_string(y) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace layercraft
