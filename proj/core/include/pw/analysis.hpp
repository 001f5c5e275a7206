#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pw/channel.hpp"
#include "pw/condition.hpp"
#include "pw/network.hpp"

namespace pw {

// ---------------------------------------------------------------------------
// Random automata
// ---------------------------------------------------------------------------

struct RandomParams {
  std::size_t states = 4;
  std::size_t input_components = 1;
  std::size_t output_components = 1;
  std::size_t max_characters = 3;  // per component, drawn from a shared pool
  double density = 0.3;            // chance of each candidate transition
  double spontaneous = 0.3;        // chance that a transition reads nothing
  double silent = 0.3;             // chance that a transition writes nothing
  std::string name = "A";
};

/// Deterministic per seed; the result always validates. State names are
/// prefixed with `name` so that factors of a product stay distinguishable.
Nfioa random_nfioa(std::uint64_t seed, const RandomParams& params = {});

// ---------------------------------------------------------------------------
// Algebraic laws
// ---------------------------------------------------------------------------

enum class Law { CbrCommute, RestrProductCommute, ProtocolProduct, ChannelConditionCommute, Separation };

std::span<const Law> all_laws();
std::string_view law_name(Law law);
std::optional<Law> parse_law(std::string_view name);

/// cbr by `first` then `second` versus the reverse order versus both at once.
struct CbrCommuteInstance {
  Nfioa a;
  Channel first;
  Channel second;
};

/// Restricting b inside a (x) b versus a (x) (restricted b). Channels are
/// numbered locally to b.
struct RestrProductInstance {
  Nfioa a;
  Nfioa b;
  std::vector<Channel> channels;
};

/// Two protocols, each given by its roles and role-product channels.
struct ProtocolProductInstance {
  std::vector<Nfioa> roles1;
  std::vector<Channel> channels1;
  std::vector<Nfioa> roles2;
  std::vector<Channel> channels2;
};

struct ChannelConditionInstance {
  Nfioa a;
  std::vector<Channel> channels;
  std::vector<Condition> conditions;
};

/// Protocols over roles A_1..A_n and B_1..B_m; the conditions are written
/// over A_n (x) B_1.
struct SeparationInstance {
  std::vector<Nfioa> left;
  std::vector<Channel> left_channels;
  std::vector<Nfioa> right;
  std::vector<Channel> right_channels;
  std::vector<Condition> conditions;
};

using LawInstance = std::variant<CbrCommuteInstance, RestrProductInstance, ProtocolProductInstance,
                                 ChannelConditionInstance, SeparationInstance>;

enum class LawOutcome { Holds, Fails, NotApplicable };

struct LawResult {
  LawOutcome outcome = LawOutcome::Holds;
  std::string detail;
};

/// Computes both sides independently and compares them as flattened
/// automata. Side-condition violations yield NotApplicable.
LawResult check_law(const LawInstance& instance, const Limits& limits = {});

/// A random instance of `law` satisfying its side conditions: at most six
/// states per factor and three characters per component.
LawInstance random_instance(Law law, std::uint64_t seed);

struct LawSuiteReport {
  Law law = Law::CbrCommute;
  std::size_t holds = 0;
  std::size_t fails = 0;
  std::size_t not_applicable = 0;
  std::optional<std::uint64_t> first_failing_seed;
  std::string first_failure;
};

LawSuiteReport run_law_suite(Law law, std::size_t seeds, std::uint64_t first_seed = 1);

// ---------------------------------------------------------------------------
// Observable behavior
// ---------------------------------------------------------------------------

/// A send on a channel, observed when the sending transition fires.
struct Event {
  std::string channel;
  Symbol character;

  friend bool operator==(const Event&, const Event&) = default;
  friend auto operator<=>(const Event&, const Event&) = default;
};

using EventTrace = std::vector<Event>;

/// "u1>a1:req"
std::string to_string(const Event& e);
/// "[u1>a1:req, a1>u1:cf-req]"
std::string to_string(const EventTrace& t);

/// The event fired by `t` in `r`, if its output lands on a channel.
std::optional<Event> event_of(const RestrictedAutomaton& r, const Transition& t);

/// Every (channel label, character) that a channel can carry.
std::set<Event> event_alphabet(const RestrictedAutomaton& r);

/// All event traces of length at most `bound`. Throws CapacityError beyond
/// `max_traces` traces.
std::set<EventTrace> trace_language(const RestrictedAutomaton& r, std::size_t bound,
                                    std::size_t max_traces = 1'000'000);

struct EquivalenceResult {
  bool equivalent = true;
  std::optional<EventTrace> distinguishing;  // shortest
  /// The search explored every reachable pair of event-closed configuration
  /// sets; no longer trace can distinguish the systems.
  bool complete = true;
  /// Number of reachable pairs: a trace bound that makes the bounded check
  /// exhaustive.
  std::size_t sufficient_bound = 0;
  /// Longest trace the search had to look at.
  std::size_t depth = 0;
};

/// Trace equivalence over channel events. Without `bound` the check is
/// complete; with it, traces longer than `bound` are not examined. Throws
/// PreconditionError when the event alphabets differ.
EquivalenceResult trace_equivalent(const RestrictedAutomaton& a, const RestrictedAutomaton& b,
                                   std::optional<std::size_t> bound = std::nullopt,
                                   std::size_t max_pairs = 2'000'000);

// ---------------------------------------------------------------------------
// Safety
// ---------------------------------------------------------------------------

using ConfigPredicate = std::function<bool(const Configuration&)>;

struct SafetyResult {
  bool ok = true;
  std::vector<std::uint32_t> path;         // configuration ids, initial first
  std::vector<std::uint32_t> transitions;  // base() transition per step
  std::size_t explored = 0;
};

/// Shortest path to a configuration satisfying `violation`, if any.
SafetyResult safety_query(const RestrictedAutomaton& r, const ConfigPredicate& violation);

/// Predicate over network configurations.
///
///   expr  := or ;  or := and ('||' and)* ;  and := not ('&&' not)*
///   not   := '!' not | '(' expr ')' | 'true' | 'false' | test | sum CMP sum
///   sum   := term (('+' | '-') term)* ;  CMP := == != < <= > >=
///   term  := NUMBER | 'count' '(' arg (',' arg)* ')' | 'pending' '(' [LABEL ':'] [CHAR] ')'
///   test  := INSTANCE '@' STATE | INSTANCE '@' '{' STATE (',' STATE)* '}'
///
/// An INSTANCE ending in '*' matches every instance with that prefix; as a
/// boolean it holds for some match, inside count() each match counts once.
/// Throws ParseError (line 1) on malformed input.
ConfigPredicate parse_predicate(std::string_view text, const BuiltNetwork& network);

}  // namespace pw
