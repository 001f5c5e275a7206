#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pw/channel.hpp"
#include "pw/composition.hpp"
#include "pw/condition.hpp"

namespace pw {

struct Instance {
  std::string name;
  Nfioa automaton;
};

/// Wires output component `out` of instance `from` to input component `in`
/// of instance `to` (indices local to the instances).
struct ChannelSpec {
  std::string label;
  std::size_t from = 0;
  std::size_t out = 0;
  std::size_t to = 0;
  std::size_t in = 0;
};

/// A condition over the product of the `scope` instances, in scope order.
struct ConditionSpec {
  std::vector<std::size_t> scope;
  Condition condition;
};

/// A network of interacting automata: instances, channels between them and
/// coordination conditions attached to instance subsets.
struct NetworkSpec {
  std::string name;
  std::vector<Instance> instances;
  std::vector<ChannelSpec> channels;
  std::vector<ConditionSpec> conditions;

  std::optional<std::size_t> instance(std::string_view name) const;
};

/// A network with its flattened numbering and its explored configuration
/// graph. Component names are qualified as "INSTANCE.component".
struct BuiltNetwork {
  NetworkSpec spec;
  ProductIndex index;
  std::vector<Channel> channels;
  std::vector<Condition> conditions;
  RestrictedAutomaton graph;
};

/// Throws PreconditionError for dangling references or channels violating
/// the cbr precondition.
BuiltNetwork build_network(const NetworkSpec& spec, const Limits& limits = {});

/// The instances with qualified component names, in order.
std::vector<Nfioa> qualified_instances(const NetworkSpec& spec);

/// The eager weak product of the instances, conditions applied, no channels.
Composite condition_product(const NetworkSpec& spec, const Limits& limits = {});

/// Global channels and conditions in the numbering of the instance product.
std::vector<Channel> global_channels(const NetworkSpec& spec, const ProductIndex& index);
std::vector<Condition> global_conditions(const NetworkSpec& spec, const ProductIndex& index);

/// The index of the instance product, computed without building it.
ProductIndex network_index(const NetworkSpec& spec);

}  // namespace pw
