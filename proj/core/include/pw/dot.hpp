#pragma once

#include <string>

#include "pw/automaton.hpp"
#include "pw/channel.hpp"

namespace pw {

/// Graphviz digraph of every state of `a`; the initial state is drawn bold,
/// edges are labeled "in / out". Node order is the state order.
std::string export_dot(const Nfioa& a);

/// Graphviz digraph of the configuration graph; excited configurations show
/// their pending character and are drawn dashed. Node order is exploration
/// order.
std::string export_dot(const RestrictedAutomaton& r);

}  // namespace pw
