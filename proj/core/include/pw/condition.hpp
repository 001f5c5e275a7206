#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pw/automaton.hpp"
#include "pw/channel.hpp"
#include "pw/composition.hpp"
#include "pw/error.hpp"

namespace pw {

/// One entry per state component; nullopt is the wildcard. An empty pattern
/// matches every state.
using StatePattern = std::vector<std::optional<Symbol>>;

bool matches(const StatePattern& p, const StateVector& s);

struct CharPattern {
  enum class Kind {
    Any,
    Spontaneous,  // the empty character
    Component,    // some character on `component`
    Literal,      // exactly `character` on `component`
  };
  Kind kind = Kind::Any;
  std::size_t component = 0;
  Symbol character;

  static CharPattern any() { return {}; }
  static CharPattern spontaneous() { return {Kind::Spontaneous, 0, {}}; }
  static CharPattern on(std::size_t k) { return {Kind::Component, k, {}}; }
  static CharPattern literal(std::size_t k, Symbol c) { return {Kind::Literal, k, c}; }

  bool matches(const VectorChar& c) const;

  friend bool operator==(const CharPattern&, const CharPattern&) = default;
};

/// Components a condition is confined to inside a larger product.
struct ConditionScope {
  std::vector<std::size_t> states;
  std::vector<std::size_t> inputs;
  std::vector<std::size_t> outputs;

  /// The transition changes a scoped state component or carries a
  /// character on a scoped component.
  bool involves(const Transition& t) const;

  friend bool operator==(const ConditionScope&, const ConditionScope&) = default;
};

/// A declarative transition predicate e(p, q, i, o). A transition matching
/// a condition is eliminated by cond(). A scoped condition only matches
/// transitions its scope takes part in.
///
/// A target entry whose source entry is a wildcard names a value the
/// transition moves into: "from (*, interm) to (remn, *)" matches entering
/// remn, not staying there.
struct Condition {
  std::string name;
  StatePattern source;
  StatePattern target;
  CharPattern input;
  CharPattern output;
  std::optional<ConditionScope> scope;

  /// Some transition with source == target and no characters matches.
  bool matches_stutter() const;

  bool matches(const Transition& t) const;

  friend bool operator==(const Condition&, const Condition&) = default;
};

/// Re-expresses `c` in a larger automaton. `states[i]` is the position of
/// local state component i; likewise for characters. The result is scoped
/// to the listed positions.
Condition embed(const Condition& c, const std::vector<std::size_t>& states, std::size_t dimension,
                const std::vector<std::size_t>& inputs, const std::vector<std::size_t>& outputs);

/// Contiguous special case of embed().
Condition shift(const Condition& c, std::size_t dimension, Slice states, Slice inputs, Slice outputs);

/// Transitions from states reachable in `a` (unrestricted) that match no
/// condition. Q, I, O, q0 and Acc are unchanged.
Nfioa cond(const Nfioa& a, std::span<const Condition> conditions);

/// Like cond(), but keeps only transitions leaving states that stay
/// reachable after the elimination.
Nfioa cond_strict(const Nfioa& a, std::span<const Condition> conditions);

/// Condition restriction of a configuration graph: matching edges are
/// removed and configurations no longer reachable are dropped.
RestrictedAutomaton cond(const RestrictedAutomaton& r, std::span<const Condition> conditions,
                         const Limits& limits = {});

struct QuasiDeterminismResult {
  bool holds = true;
  std::string location;  // state or configuration
  VectorChar input;
  std::vector<Transition> competing;

  explicit operator bool() const noexcept { return holds; }
};

/// At most one transition per input character (the empty one included) from
/// every reachable state.
QuasiDeterminismResult is_quasi_deterministic(const Nfioa& a);
/// Same, per reachable configuration.
QuasiDeterminismResult is_quasi_deterministic(const RestrictedAutomaton& r);

/// project(a, p) and project(cond(a, conditions), p) are equal as flattened
/// automata.
bool is_unaffected(const Nfioa& a, std::span<const Condition> conditions, const Projection& p);

struct ConsistencyResult {
  bool holds = true;
  std::optional<StateVector> witness;

  explicit operator bool() const noexcept { return holds; }
};

/// Acceptance can still be met from every reachable state of the plain
/// transition graph.
ConsistencyResult is_consistent_cond(const Nfioa& a);

}  // namespace pw
