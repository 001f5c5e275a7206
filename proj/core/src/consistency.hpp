#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pw/automaton.hpp"

namespace pw::detail {

/// A finite graph whose nodes carry states; node 0 is initial and every node
/// is reachable from it.
struct StateGraph {
  std::vector<const StateVector*> states;
  std::vector<std::vector<std::uint32_t>> successors;
};

/// Smallest node from which acceptance cannot be met any more, if any.
///
/// FinalStates: some node with a final state must be reachable. Muller: some
/// strongly connected subgraph whose state set is accepted must be reachable.
std::optional<std::uint32_t> first_inconsistent(const StateGraph& g, const Acceptance& acc);

}  // namespace pw::detail
