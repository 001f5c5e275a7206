#include "pw/executor.hpp"

#include <algorithm>

#include "pw/error.hpp"

namespace pw {

FiniteSystem::FiniteSystem(Nfioa a)
    : automaton_(std::move(a)),
      state_(automaton_.initial()),
      input_(VectorChar::empty(automaton_.inputs().size())),
      output_(VectorChar::empty(automaton_.outputs().size())) {
  for (const auto& t : automaton_.transitions()) function_.emplace(std::pair(t.source, t.input), &t);
}

FiniteSystem FiniteSystem::from_dfioa(const Nfioa& a) {
  const auto c = classify(a);
  if (c.has_spontaneous) throw PreconditionError("'" + a.name() + "' has spontaneous transitions");
  if (!c.is_deterministic) throw PreconditionError("'" + a.name() + "' is not deterministic");
  return FiniteSystem(a);
}

std::vector<VectorChar> FiniteSystem::defined_inputs() const {
  std::vector<VectorChar> out;
  for (const auto& t : automaton_.outgoing(state_)) out.push_back(t.input);
  std::sort(out.begin(), out.end());
  return out;
}

TraceEntry FiniteSystem::step(const VectorChar& input) {
  const auto it = function_.find(std::pair(state_, input));
  if (input.is_empty() || it == function_.end()) {
    throw PreconditionError("no transition from " + to_string(state_) + " on " +
                            to_string(input, automaton_.inputs()));
  }
  const Transition& t = *it->second;
  TraceEntry e{time_, state_, t.target, input, t.output};
  ++time_;
  state_ = t.target;
  input_ = input;
  output_ = t.output;
  return e;
}

bool specifies(const Nfioa& a, std::span<const TraceEntry> trace) {
  if (trace.empty()) return true;
  if (trace.front().state != a.initial() || trace.front().time != 0) return false;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& e = trace[i];
    if (i > 0 && (trace[i - 1].next_state != e.state || trace[i - 1].time + 1 != e.time)) return false;
    const Transition t{e.state, e.next_state, e.input, e.output};
    const auto out = a.outgoing(e.state);
    if (std::find(out.begin(), out.end(), t) == out.end()) return false;
  }
  return true;
}

std::string format_trace_line(const Nfioa& a, const TraceEntry& e) {
  return std::to_string(e.time) + "\t" + to_string(e.state) + "\t" + to_string(e.input, a.inputs()) + "\t" +
         to_string(e.output, a.outputs()) + "\t" + to_string(e.next_state);
}

}  // namespace pw
