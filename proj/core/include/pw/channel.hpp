#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "pw/automaton.hpp"
#include "pw/error.hpp"

namespace pw {

/// Wires output component `out_component` to input component `in_component`.
/// The label names the channel in event traces and is ignored by comparisons.
struct Channel {
  std::size_t out_component = 0;
  std::size_t in_component = 0;
  std::string label;

  friend bool operator==(const Channel& a, const Channel& b) noexcept {
    return a.out_component == b.out_component && a.in_component == b.in_component;
  }
  friend auto operator<=>(const Channel& a, const Channel& b) noexcept {
    return std::pair(a.out_component, a.in_component) <=> std::pair(b.out_component, b.in_component);
  }
};

/// A character that was sent on `channel` and not yet consumed.
struct Pending {
  Channel channel;
  Symbol character;

  friend bool operator==(const Pending&, const Pending&) = default;
  friend auto operator<=>(const Pending&, const Pending&) = default;
};

/// A node of a configuration graph: a state plus at most one in-flight
/// character. Excited iff a character is pending.
struct Configuration {
  StateVector state;
  std::optional<Pending> pending;

  bool excited() const noexcept { return pending.has_value(); }

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

std::size_t hash_value(const Configuration& c) noexcept;

/// "(try,remn|req)" or "(remn,remn|-)".
std::string to_string(const Configuration& c);

/// The configuration graph of a channel-restricted automaton.
///
/// base() is the flattened result: the input's signature with the
/// transitions that label some edge. Configurations are numbered in
/// exploration order; 0 is the initial, relaxed configuration.
class RestrictedAutomaton {
 public:
  struct Edge {
    std::uint32_t transition;  // index into base().transitions()
    std::uint32_t target;
  };

  RestrictedAutomaton() = default;

  const Nfioa& base() const noexcept { return data_->base; }
  const std::vector<Channel>& channels() const noexcept { return data_->channels; }

  std::size_t config_count() const noexcept { return data_->configs.size(); }
  const Configuration& config(std::uint32_t id) const { return data_->configs.at(id); }
  std::span<const Edge> edges(std::uint32_t id) const;
  std::size_t edge_count() const noexcept { return data_->edges.size(); }
  const Transition& transition(const Edge& e) const { return base().transitions()[e.transition]; }
  std::optional<std::uint32_t> find(const Configuration& c) const;

  /// Only for explore(): takes configurations in exploration order and
  /// per-configuration edge lists.
  RestrictedAutomaton(Nfioa base, std::vector<Channel> channels, std::vector<Configuration> configs,
                      std::vector<std::vector<Edge>> edges);

 private:
  struct ConfigHash {
    std::size_t operator()(const Configuration& c) const noexcept { return hash_value(c); }
  };
  struct Data {
    Nfioa base;
    std::vector<Channel> channels;
    std::vector<Configuration> configs;
    std::vector<std::size_t> edge_offsets;
    std::vector<Edge> edges;
    std::unordered_map<Configuration, std::uint32_t, ConfigHash> ids;
  };
  std::shared_ptr<const Data> data_ = std::make_shared<const Data>();
};

/// Throws PreconditionError unless every channel satisfies O_k subset of
/// I_l and channels use pairwise distinct out- and in-components.
void check_channels(const Nfioa& a, std::span<const Channel> channels);

/// The channel-based restriction of `a`.
RestrictedAutomaton cbr(const Nfioa& a, std::span<const Channel> channels, const Limits& limits = {});

/// Restricts an already restricted automaton by further channels, disjoint
/// from the ones it carries.
RestrictedAutomaton cbr(const RestrictedAutomaton& r, std::span<const Channel> channels, const Limits& limits = {});

/// The configuration graph of `a` with no channels: plain reachability.
RestrictedAutomaton as_restricted(const Nfioa& a, const Limits& limits = {});

/// The weakly synchronized product of restricted automata. While a factor
/// holds a pending character only that factor moves; channels are shifted
/// into the product's component numbering.
RestrictedAutomaton restricted_product(std::span<const RestrictedAutomaton> factors, const Limits& limits = {});

inline const Nfioa& flatten(const RestrictedAutomaton& r) { return r.base(); }

enum class Excitation { Relaxed, Excited };

/// Throws PreconditionError if `c` is not a node of `r`.
Excitation classify_config(const RestrictedAutomaton& r, const Configuration& c);

/// The outgoing edges of `c`. Throws PreconditionError if `c` is not a node.
std::vector<std::pair<Transition, Configuration>> enabled(const RestrictedAutomaton& r, const Configuration& c);

struct CheckResult {
  bool holds = true;
  std::optional<std::uint32_t> witness;  // configuration id
  std::string detail;

  explicit operator bool() const noexcept { return holds; }
};

/// Every excited configuration has an outgoing edge.
CheckResult is_well_formed(const RestrictedAutomaton& r);

/// From every reachable configuration the acceptance condition can still be
/// met. Throws PreconditionError if `r` is not well-formed.
CheckResult is_consistent(const RestrictedAutomaton& r);

struct OpenComponents {
  std::vector<std::size_t> inputs;
  std::vector<std::size_t> outputs;
};

OpenComponents open_components(const Nfioa& a, std::span<const Channel> channels);
bool is_protocol(const RestrictedAutomaton& r);

// ---------------------------------------------------------------------------
// Runs
// ---------------------------------------------------------------------------

struct Run {
  std::vector<std::uint32_t> configs;      // configs.size() == edges.size() + 1
  std::vector<std::uint32_t> transitions;  // indices into base().transitions()
};

struct RandomScheduler {
  std::uint64_t seed = 0;
};
struct ExhaustiveScheduler {};
/// Each entry picks among the enabled edges, in edge order, whenever more
/// than one is enabled. The run ends when the list is used up.
struct ScriptedScheduler {
  std::vector<std::size_t> choices;
};
using Scheduler = std::variant<RandomScheduler, ExhaustiveScheduler, ScriptedScheduler>;

/// Runs from the initial configuration, stopping after `step_bound` edges or
/// at a configuration without edges. Exhaustive mode returns every such run
/// and throws CapacityError beyond `max_runs`. Open inputs are supplied by
/// the environment, which amounts to choosing among the enabled edges.
/// Throws PreconditionError for an out-of-range scripted choice.
std::vector<Run> run(const RestrictedAutomaton& r, const Scheduler& scheduler, std::size_t step_bound,
                     std::size_t max_runs = 100'000);

// ---------------------------------------------------------------------------
// Transition classes of channel-based restrictions
// ---------------------------------------------------------------------------

enum class InputClass { Empty, Open, Channel };
enum class OutputClass { Empty, Channel, Other };

struct TransitionClass {
  Excitation start;
  InputClass input;
  OutputClass output;
  Excitation target;
};

/// The nine admissible classes, in table order.
std::span<const TransitionClass> transition_classes();
std::string to_string(const TransitionClass& c);

/// Row of the edge in transition_classes(), or nullopt if it fits none.
std::optional<std::size_t> classify_edge(const RestrictedAutomaton& r, std::uint32_t config,
                                         const RestrictedAutomaton::Edge& e);

}  // namespace pw

template <>
struct std::hash<pw::Configuration> {
  std::size_t operator()(const pw::Configuration& c) const noexcept { return pw::hash_value(c); }
};
