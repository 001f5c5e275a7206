#include "pw/dot.hpp"

#include <map>

namespace pw {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string edge_label(const Transition& t, const Nfioa& a) {
  return to_string(t.input, a.inputs()) + " / " + to_string(t.output, a.outputs());
}

std::string header(const std::string& name) {
  return "digraph \"" + escape(name) + "\" {\n  rankdir=LR;\n  node [shape=ellipse];\n";
}

}  // namespace

std::string export_dot(const Nfioa& a) {
  std::string out = header(a.name());
  std::map<StateVector, std::size_t> ids;
  for (const auto& s : a.states().enumerate()) {
    const std::size_t id = ids.size();
    ids.emplace(s, id);
    out += "  n" + std::to_string(id) + " [label=\"" + escape(to_string(s)) + "\"" +
           (s == a.initial() ? ", style=bold" : "") + "];\n";
  }
  for (const auto& t : a.transitions()) {
    out += "  n" + std::to_string(ids.at(t.source)) + " -> n" + std::to_string(ids.at(t.target)) + " [label=\"" +
           escape(edge_label(t, a)) + "\"];\n";
  }
  return out + "}\n";
}

std::string export_dot(const RestrictedAutomaton& r) {
  std::string out = header(r.base().name());
  for (std::uint32_t i = 0; i < r.config_count(); ++i) {
    const auto& c = r.config(i);
    std::string style = i == 0 ? "bold" : "";
    if (c.excited()) style += style.empty() ? "dashed" : ",dashed";
    out += "  n" + std::to_string(i) + " [label=\"" + escape(to_string(c)) + "\"" +
           (style.empty() ? "" : ", style=\"" + style + "\"") + "];\n";
  }
  for (std::uint32_t i = 0; i < r.config_count(); ++i) {
    for (const auto& e : r.edges(i)) {
      out += "  n" + std::to_string(i) + " -> n" + std::to_string(e.target) + " [label=\"" +
             escape(edge_label(r.transition(e), r.base())) + "\"];\n";
    }
  }
  return out + "}\n";
}

}  // namespace pw
