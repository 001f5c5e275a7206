#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pw/automaton.hpp"

namespace pw {

/// One step of a finite system: (x(t), x(t+1), in(t), out(t+1)) at time t.
struct TraceEntry {
  std::uint64_t time = 0;
  StateVector state;
  StateVector next_state;
  VectorChar input;
  VectorChar output;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

/// A sequential machine driven by the transition function of a DFIOA.
/// Time starts at 0 and advances by one per step.
class FiniteSystem {
 public:
  /// Throws PreconditionError unless `a` validates and is deterministic.
  static FiniteSystem from_dfioa(const Nfioa& a);

  std::uint64_t time() const noexcept { return time_; }
  const StateVector& state() const noexcept { return state_; }
  /// The character read by the last step; empty before the first.
  const VectorChar& input() const noexcept { return input_; }
  /// The character emitted by the last step; empty before the first.
  const VectorChar& output() const noexcept { return output_; }
  const Nfioa& automaton() const noexcept { return automaton_; }

  /// Inputs defined in the current state, sorted.
  std::vector<VectorChar> defined_inputs() const;

  /// Throws PreconditionError for the empty character or an input with no
  /// transition from the current state; the message names both.
  TraceEntry step(const VectorChar& input);

 private:
  explicit FiniteSystem(Nfioa a);

  Nfioa automaton_;
  std::map<std::pair<StateVector, VectorChar>, const Transition*> function_;
  std::uint64_t time_ = 0;
  StateVector state_;
  VectorChar input_;
  VectorChar output_;
};

/// Every entry is a transition of `a`, the first starts in the initial
/// state at time 0, and each entry starts where and one tick after the
/// previous one ended. The empty
/// trace is accepted.
bool specifies(const Nfioa& a, std::span<const TraceEntry> trace);

/// "t\tx\tin\tout'\tx'" with characters as "component.character" or "-".
std::string format_trace_line(const Nfioa& a, const TraceEntry& e);

}  // namespace pw
