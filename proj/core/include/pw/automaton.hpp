#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pw/symbol.hpp"

namespace pw {

// ---------------------------------------------------------------------------
// Vectors of state values and characters
// ---------------------------------------------------------------------------

/// A state value of a (possibly product) automaton: one entry per component.
struct StateVector {
  std::vector<Symbol> values;

  StateVector() = default;
  explicit StateVector(std::vector<Symbol> v) : values(std::move(v)) {}
  StateVector(std::initializer_list<std::string_view> names);

  std::size_t size() const noexcept { return values.size(); }
  Symbol operator[](std::size_t i) const { return values[i]; }

  /// Components [offset, offset + width).
  StateVector slice(std::size_t offset, std::size_t width) const;

  friend bool operator==(const StateVector&, const StateVector&) = default;
  friend auto operator<=>(const StateVector&, const StateVector&) = default;
};

/// A character of a vector alphabet. Valid characters have at most one
/// non-empty component; the all-empty vector is the empty character.
struct VectorChar {
  std::vector<Symbol> components;

  VectorChar() = default;
  explicit VectorChar(std::vector<Symbol> c) : components(std::move(c)) {}

  static VectorChar empty(std::size_t width) { return VectorChar(std::vector<Symbol>(width)); }
  static VectorChar unit(std::size_t width, std::size_t component, Symbol character);

  std::size_t width() const noexcept { return components.size(); }
  std::size_t non_empty_count() const noexcept;
  bool is_empty() const noexcept { return non_empty_count() == 0; }
  /// Index of the first non-empty component.
  std::optional<std::size_t> active_component() const noexcept;
  /// Character of the first non-empty component, or epsilon.
  Symbol active_character() const noexcept;

  friend bool operator==(const VectorChar&, const VectorChar&) = default;
  friend auto operator<=>(const VectorChar&, const VectorChar&) = default;
};

struct Transition {
  StateVector source;
  StateVector target;
  VectorChar input;
  VectorChar output;

  bool is_spontaneous() const noexcept { return input.is_empty(); }

  friend bool operator==(const Transition&, const Transition&) = default;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

std::size_t hash_value(const StateVector& s) noexcept;
std::size_t hash_value(const VectorChar& c) noexcept;
std::size_t hash_value(const Transition& t) noexcept;

// ---------------------------------------------------------------------------
// Alphabets, acceptance, state spaces
// ---------------------------------------------------------------------------

struct ComponentAlphabet {
  std::string name;
  std::set<Symbol> characters;

  friend bool operator==(const ComponentAlphabet&, const ComponentAlphabet&) = default;
};

enum class AcceptanceMode { FinalStates, Muller };

/// One conjunct of an acceptance component. It constrains the state
/// components [offset, offset + width); a weakly synchronized product keeps
/// one conjunct per factor.
struct AcceptanceFactor {
  std::size_t offset = 0;
  std::size_t width = 1;
  std::set<StateVector> final_states;
  std::set<std::set<StateVector>> muller_sets;

  friend bool operator==(const AcceptanceFactor&, const AcceptanceFactor&) = default;
};

/// The acceptance component: a conjunction of per-factor conditions.
///
/// FinalStates: a state is final iff every conjunct's slice is final.
/// Muller: a set S of recurring states is accepting iff for every conjunct
/// the projection of S onto its slice is one of its Muller sets.
struct Acceptance {
  AcceptanceMode mode = AcceptanceMode::FinalStates;
  std::vector<AcceptanceFactor> factors;

  static Acceptance final_states(std::set<StateVector> finals, std::size_t width);
  static Acceptance muller(std::set<std::set<StateVector>> sets, std::size_t width);

  bool accepts_state(const StateVector& s) const;
  bool accepts_recurrent_set(const std::set<StateVector>& recurring) const;

  friend bool operator==(const Acceptance&, const Acceptance&) = default;
};

/// A finite state set stored as a Cartesian product of explicit blocks.
///
/// Atomic automata have one block; a product keeps one block per factor so
/// that its state set never has to be enumerated.
class StateSpace {
 public:
  struct Block {
    std::size_t offset = 0;
    std::size_t width = 0;
    std::set<StateVector> values;

    friend bool operator==(const Block&, const Block&) = default;
  };

  StateSpace() = default;
  StateSpace(std::set<StateVector> values, std::size_t width);

  static StateSpace product(std::span<const StateSpace* const> factors);

  std::size_t dimension() const noexcept { return dimension_; }
  /// Number of states, saturating at UINT64_MAX.
  std::uint64_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }
  bool contains(const StateVector& s) const;
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  /// All states in lexicographic order. Throws CapacityError above `limit`.
  std::set<StateVector> enumerate(std::size_t limit = 1'000'000) const;

  friend bool operator==(const StateSpace& a, const StateSpace& b);

 private:
  std::vector<Block> blocks_;
  std::size_t dimension_ = 0;
};

/// Everything of an NFIOA except its transition relation.
struct Signature {
  std::string name;
  StateSpace states;
  std::vector<ComponentAlphabet> inputs;
  std::vector<ComponentAlphabet> outputs;
  StateVector initial;
  Acceptance acceptance;

  std::size_t dimension() const noexcept { return states.dimension(); }
};

// ---------------------------------------------------------------------------
// Nfioa
// ---------------------------------------------------------------------------

/// A nondeterministic finite I/O automaton (Q, I, O, q0, Acc, Delta).
///
/// Immutable after construction; copies share storage. The transition
/// relation is kept sorted and free of duplicates.
class Nfioa {
 public:
  Nfioa();
  Nfioa(Signature signature, std::vector<Transition> transitions);

  const Signature& signature() const noexcept { return data_->signature; }
  const std::string& name() const noexcept { return data_->signature.name; }
  const StateSpace& states() const noexcept { return data_->signature.states; }
  const std::vector<ComponentAlphabet>& inputs() const noexcept { return data_->signature.inputs; }
  const std::vector<ComponentAlphabet>& outputs() const noexcept { return data_->signature.outputs; }
  const StateVector& initial() const noexcept { return data_->signature.initial; }
  const Acceptance& acceptance() const noexcept { return data_->signature.acceptance; }
  std::size_t dimension() const noexcept { return data_->signature.dimension(); }

  std::span<const Transition> transitions() const noexcept { return data_->transitions; }
  /// Transitions whose source is `state`, in relation order.
  std::span<const Transition> outgoing(const StateVector& state) const;

  Nfioa with_transitions(std::vector<Transition> transitions) const;
  Nfioa renamed(std::string name) const;

 private:
  struct Data {
    Signature signature;
    std::vector<Transition> transitions;
  };
  std::shared_ptr<const Data> data_;
};

/// Fluent construction of dimension-1 automata from identifiers.
///
/// Characters are written "component.character", the empty character "-".
class NfioaBuilder {
 public:
  explicit NfioaBuilder(std::string name) : name_(std::move(name)) {}

  NfioaBuilder& states(const std::vector<std::string>& names);
  NfioaBuilder& initial(std::string_view state);
  NfioaBuilder& input(std::string component, const std::vector<std::string>& characters);
  NfioaBuilder& output(std::string component, const std::vector<std::string>& characters);
  NfioaBuilder& final_states(const std::vector<std::string>& finals);
  NfioaBuilder& muller_set(const std::vector<std::string>& set);
  NfioaBuilder& transition(std::string_view from, std::string_view to, std::string_view input,
                           std::string_view output);

  Nfioa build() const;

 private:
  struct PendingTransition {
    std::string from, to, input, output;
  };
  std::string name_;
  std::vector<std::string> states_;
  std::string initial_;
  std::vector<std::pair<std::string, std::vector<std::string>>> inputs_, outputs_;
  AcceptanceMode mode_ = AcceptanceMode::FinalStates;
  std::vector<std::string> finals_;
  std::vector<std::vector<std::string>> muller_;
  std::vector<PendingTransition> transitions_;
};

/// Parses "component.character" or "-" against `alphabet`. Throws pw::Error
/// for an unknown component name.
VectorChar parse_vector_char(std::string_view text, const std::vector<ComponentAlphabet>& alphabet);

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

/// "remn" for one component, "(try,remn)" otherwise.
std::string to_string(const StateVector& s);
/// "component.character" or "-".
std::string to_string(const VectorChar& c, const std::vector<ComponentAlphabet>& alphabet);
std::string to_string(const Transition& t, const Nfioa& owner);

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

struct Diagnostic {
  enum class Kind {
    EmptyStateSet,
    DimensionMismatch,
    UnknownState,
    MultiComponentCharacter,
    UnknownCharacter,
    EpsilonInAlphabet,
    BadAcceptance,
  };
  Kind kind;
  std::string message;
};

/// One diagnostic per violated invariant; empty iff `a` is well-defined.
std::vector<Diagnostic> validate(const Nfioa& a);

struct Classification {
  bool has_spontaneous = false;
  /// At most one transition per (state, input) pair.
  bool is_function = false;
  /// is_function and no spontaneous transition (DFIOA / Mealy machine).
  bool is_deterministic = false;
};

/// Throws PreconditionError if validate(a) is not empty.
Classification classify(const Nfioa& a);

/// Forward closure of the initial state under all transitions.
std::set<StateVector> reachable_states(const Nfioa& a);

/// Restriction to reachable states and the transitions leaving them.
Nfioa prune_unreachable(const Nfioa& a);

/// A total map on the values of one component. The empty value is fixed.
class ComponentMap {
 public:
  static ComponentMap identity() { return ComponentMap{}; }
  static ComponentMap constant(Symbol value);
  /// Values not listed map to themselves.
  static ComponentMap table(std::map<Symbol, Symbol> entries);

  Symbol operator()(Symbol value) const;
  bool idempotent_on(const std::set<Symbol>& domain) const;

 private:
  std::optional<Symbol> constant_;
  std::map<Symbol, Symbol> table_;
};

/// A componentwise projection (state, input and output maps).
struct Projection {
  std::vector<ComponentMap> state_maps;
  std::vector<ComponentMap> input_maps;
  std::vector<ComponentMap> output_maps;

  static Projection identity(const Nfioa& a);
  /// Keeps the listed components and sends every other one to the empty value.
  static Projection keep(const Nfioa& a, const std::set<std::size_t>& state_components,
                         const std::set<std::size_t>& input_components,
                         const std::set<std::size_t>& output_components);

  StateVector apply_state(const StateVector& s) const;
  VectorChar apply_input(const VectorChar& c) const;
  VectorChar apply_output(const VectorChar& c) const;
};

/// The image automaton pi(a). Throws PreconditionError if a map is not
/// idempotent or the projection does not fit a's dimensions.
Nfioa project(const Nfioa& a, const Projection& p);

/// Equality after pruning unreachable states on both sides: dimensions,
/// alphabets, initial state, acceptance, reachable states and transitions.
/// Returns a description of the first difference, or nullopt when equal.
std::optional<std::string> flattened_difference(const Nfioa& a, const Nfioa& b);

inline bool flattened_equal(const Nfioa& a, const Nfioa& b) { return !flattened_difference(a, b); }

}  // namespace pw

template <>
struct std::hash<pw::StateVector> {
  std::size_t operator()(const pw::StateVector& s) const noexcept { return pw::hash_value(s); }
};
template <>
struct std::hash<pw::VectorChar> {
  std::size_t operator()(const pw::VectorChar& c) const noexcept { return pw::hash_value(c); }
};
template <>
struct std::hash<pw::Transition> {
  std::size_t operator()(const pw::Transition& t) const noexcept { return pw::hash_value(t); }
};
