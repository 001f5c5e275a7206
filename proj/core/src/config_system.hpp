#pragma once

// Lazily explored configuration systems. Every channel-restricted,
// condition-restricted or product automaton is a stack of these; explore()
// materializes the reachable part as a RestrictedAutomaton.

#include <memory>
#include <vector>

#include "pw/channel.hpp"
#include "pw/composition.hpp"
#include "pw/condition.hpp"

namespace pw::detail {

struct Step {
  Transition transition;
  Configuration target;
};

class ConfigSystem {
 public:
  virtual ~ConfigSystem() = default;
  virtual const Signature& signature() const = 0;
  virtual const std::vector<Channel>& channels() const = 0;
  virtual Configuration initial() const = 0;
  /// Appends the steps enabled in `c`.
  virtual void successors(const Configuration& c, std::vector<Step>& out) const = 0;
};

using SystemPtr = std::shared_ptr<const ConfigSystem>;

/// Every transition of an automaton; never excited.
SystemPtr nfioa_system(Nfioa a);

/// The edges of an explored configuration graph.
SystemPtr graph_system(RestrictedAutomaton r);

/// Weak product; an excited factor is the only one that may move.
SystemPtr product_system(std::vector<SystemPtr> factors);

/// Channel-based restriction by `extra` channels on top of `inner`.
SystemPtr restriction_system(SystemPtr inner, std::vector<Channel> extra);

/// Drops every step whose transition matches one of `conditions`.
SystemPtr condition_filter(SystemPtr inner, std::vector<Condition> conditions);

/// Deterministic breadth-first exploration; successors of a configuration
/// are visited in sorted order. A non-empty `name` renames the result.
RestrictedAutomaton explore(const ConfigSystem& system, const Limits& limits, const std::string& name = {});

}  // namespace pw::detail
