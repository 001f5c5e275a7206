#include "pw/condition.hpp"

#include <algorithm>
#include <map>

#include "config_system.hpp"
#include "consistency.hpp"

namespace pw {

bool matches(const StatePattern& p, const StateVector& s) {
  if (p.empty()) return true;
  if (p.size() != s.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] && *p[i] != s[i]) return false;
  }
  return true;
}

bool CharPattern::matches(const VectorChar& c) const {
  switch (kind) {
    case Kind::Any: return true;
    case Kind::Spontaneous: return c.is_empty();
    case Kind::Component: return component < c.width() && !c.components[component].is_epsilon();
    case Kind::Literal: return component < c.width() && c.components[component] == character && !character.is_epsilon();
  }
  return false;
}

bool ConditionScope::involves(const Transition& t) const {
  for (std::size_t i : states) {
    if (t.source.values.at(i) != t.target.values.at(i)) return true;
  }
  for (std::size_t k : inputs) {
    if (!t.input.components.at(k).is_epsilon()) return true;
  }
  for (std::size_t k : outputs) {
    if (!t.output.components.at(k).is_epsilon()) return true;
  }
  return false;
}

namespace {

/// Target entries the source leaves open must be entered by the transition.
bool entered(const StatePattern& source, const StatePattern& target, const Transition& t) {
  for (std::size_t i = 0; i < target.size(); ++i) {
    const bool open = source.empty() || !source[i];
    if (open && target[i] && t.source.values.at(i) == t.target.values.at(i)) return false;
  }
  return true;
}

}  // namespace

bool Condition::matches_stutter() const {
  auto empty_ok = [](const CharPattern& p) {
    return p.kind == CharPattern::Kind::Any || p.kind == CharPattern::Kind::Spontaneous;
  };
  if (!empty_ok(input) || !empty_ok(output)) return false;
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (!target[i]) continue;
    if (source.empty() || !source[i]) return false;
    if (*source[i] != *target[i]) return false;
  }
  return true;
}

bool Condition::matches(const Transition& t) const {
  if (scope && !scope->involves(t)) return false;
  return pw::matches(source, t.source) && pw::matches(target, t.target) && entered(source, target, t) &&
         input.matches(t.input) && output.matches(t.output);
}

Condition embed(const Condition& c, const std::vector<std::size_t>& states, std::size_t dimension,
                const std::vector<std::size_t>& inputs, const std::vector<std::size_t>& outputs) {
  auto place = [&](const StatePattern& p) {
    if (p.empty()) return p;
    if (p.size() != states.size()) throw PreconditionError("condition '" + c.name + "': pattern width mismatch");
    StatePattern out(dimension);
    for (std::size_t i = 0; i < p.size(); ++i) out.at(states[i]) = p[i];
    return out;
  };
  auto move = [&](CharPattern p, const std::vector<std::size_t>& map) {
    if (p.kind == CharPattern::Kind::Component || p.kind == CharPattern::Kind::Literal) p.component = map.at(p.component);
    return p;
  };
  ConditionScope scope;
  if (c.scope) {
    for (std::size_t i : c.scope->states) scope.states.push_back(states.at(i));
    for (std::size_t k : c.scope->inputs) scope.inputs.push_back(inputs.at(k));
    for (std::size_t k : c.scope->outputs) scope.outputs.push_back(outputs.at(k));
  } else {
    scope = ConditionScope{states, inputs, outputs};
  }
  return Condition{c.name,           place(c.source),  place(c.target), move(c.input, inputs),
                   move(c.output, outputs), std::move(scope)};
}

Condition shift(const Condition& c, std::size_t dimension, Slice states, Slice inputs, Slice outputs) {
  auto range = [](Slice s) {
    std::vector<std::size_t> v(s.width);
    for (std::size_t i = 0; i < s.width; ++i) v[i] = s.offset + i;
    return v;
  };
  return embed(c, range(states), dimension, range(inputs), range(outputs));
}

namespace {

bool killed(std::span<const Condition> conditions, const Transition& t) {
  return std::any_of(conditions.begin(), conditions.end(), [&](const Condition& e) { return e.matches(t); });
}

}  // namespace

Nfioa cond(const Nfioa& a, std::span<const Condition> conditions) {
  const auto reach = reachable_states(a);
  std::vector<Transition> ts;
  for (const auto& t : a.transitions()) {
    if (reach.count(t.source) && !killed(conditions, t)) ts.push_back(t);
  }
  return a.with_transitions(std::move(ts));
}

Nfioa cond_strict(const Nfioa& a, std::span<const Condition> conditions) {
  const Nfioa letter = cond(a, conditions);
  const auto reach = reachable_states(letter);
  std::vector<Transition> ts;
  for (const auto& t : letter.transitions()) {
    if (reach.count(t.source)) ts.push_back(t);
  }
  return a.with_transitions(std::move(ts));
}

RestrictedAutomaton cond(const RestrictedAutomaton& r, std::span<const Condition> conditions, const Limits& limits) {
  auto sys = detail::condition_filter(detail::graph_system(r), {conditions.begin(), conditions.end()});
  return detail::explore(*sys, limits);
}

namespace {

QuasiDeterminismResult first_competition(std::string location, std::span<const Transition* const> ts) {
  std::map<VectorChar, std::vector<Transition>> by_input;
  for (const Transition* t : ts) by_input[t->input].push_back(*t);
  for (auto& [input, list] : by_input) {
    if (list.size() > 1) return {false, std::move(location), input, std::move(list)};
  }
  return {};
}

}  // namespace

QuasiDeterminismResult is_quasi_deterministic(const Nfioa& a) {
  for (const auto& s : reachable_states(a)) {
    std::vector<const Transition*> ts;
    for (const auto& t : a.outgoing(s)) ts.push_back(&t);
    if (auto r = first_competition(to_string(s), ts); !r) return r;
  }
  return {};
}

QuasiDeterminismResult is_quasi_deterministic(const RestrictedAutomaton& r) {
  for (std::uint32_t i = 0; i < r.config_count(); ++i) {
    std::vector<const Transition*> ts;
    for (const auto& e : r.edges(i)) ts.push_back(&r.transition(e));
    if (auto q = first_competition(to_string(r.config(i)), ts); !q) return q;
  }
  return {};
}

bool is_unaffected(const Nfioa& a, std::span<const Condition> conditions, const Projection& p) {
  return flattened_equal(project(a, p), project(cond(a, conditions), p));
}

ConsistencyResult is_consistent_cond(const Nfioa& a) {
  const auto reach = reachable_states(a);
  std::vector<StateVector> nodes;
  nodes.reserve(reach.size());
  nodes.push_back(a.initial());
  for (const auto& s : reach) {
    if (s != a.initial()) nodes.push_back(s);
  }
  std::map<StateVector, std::uint32_t> ids;
  for (std::uint32_t i = 0; i < nodes.size(); ++i) ids.emplace(nodes[i], i);

  detail::StateGraph g;
  g.successors.resize(nodes.size());
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    g.states.push_back(&nodes[i]);
    for (const auto& t : a.outgoing(nodes[i])) g.successors[i].push_back(ids.at(t.target));
  }
  if (auto bad = detail::first_inconsistent(g, a.acceptance())) return {false, nodes[*bad]};
  return {};
}

}  // namespace pw
