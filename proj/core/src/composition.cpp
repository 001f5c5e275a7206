#include "pw/composition.hpp"

#include <algorithm>
#include <limits>

namespace pw {

namespace {

Slice span_of(const std::vector<Slice>& leaves, const std::vector<std::size_t>& group) {
  if (group.empty()) return {};
  const Slice& first = leaves[group.front()];
  const Slice& last = leaves[group.back()];
  return Slice{first.offset, last.offset + last.width - first.offset};
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

}  // namespace

Slice ProductIndex::state_slice(std::size_t f) const { return span_of(states, groups.at(f)); }
Slice ProductIndex::input_slice(std::size_t f) const { return span_of(inputs, groups.at(f)); }
Slice ProductIndex::output_slice(std::size_t f) const { return span_of(outputs, groups.at(f)); }

ProductIndex ProductIndex::single(const Nfioa& a) {
  return ProductIndex{{Slice{0, a.dimension()}}, {Slice{0, a.inputs().size()}}, {Slice{0, a.outputs().size()}}, {{0}}};
}

Signature product_signature(std::span<const Signature* const> factors) {
  Signature sig;
  std::vector<const StateSpace*> spaces;
  std::optional<AcceptanceMode> mode;
  std::size_t offset = 0;
  for (const Signature* f : factors) {
    if (!sig.name.empty()) sig.name += '*';
    sig.name += f->name;
    spaces.push_back(&f->states);
    sig.inputs.insert(sig.inputs.end(), f->inputs.begin(), f->inputs.end());
    sig.outputs.insert(sig.outputs.end(), f->outputs.begin(), f->outputs.end());
    sig.initial.values.insert(sig.initial.values.end(), f->initial.values.begin(), f->initial.values.end());
    if (!f->acceptance.factors.empty()) {
      if (mode && *mode != f->acceptance.mode) {
        throw PreconditionError("product: factor '" + f->name + "' mixes final-state and Muller acceptance");
      }
      mode = f->acceptance.mode;
    }
    for (auto factor : f->acceptance.factors) {
      factor.offset += offset;
      sig.acceptance.factors.push_back(std::move(factor));
    }
    offset += f->dimension();
  }
  sig.acceptance.mode = mode.value_or(AcceptanceMode::FinalStates);
  sig.states = StateSpace::product(spaces);
  return sig;
}

Transition lift_transition(const Transition& t, const StateVector& context, Slice states, Slice inputs,
                           std::size_t input_width, Slice outputs, std::size_t output_width) {
  Transition out{context, context, VectorChar::empty(input_width), VectorChar::empty(output_width)};
  std::copy(t.source.values.begin(), t.source.values.end(), out.source.values.begin() + states.offset);
  std::copy(t.target.values.begin(), t.target.values.end(), out.target.values.begin() + states.offset);
  std::copy(t.input.components.begin(), t.input.components.end(), out.input.components.begin() + inputs.offset);
  std::copy(t.output.components.begin(), t.output.components.end(), out.output.components.begin() + outputs.offset);
  return out;
}

Composite weak_product(std::span<const Nfioa> factors, const Limits& limits) {
  if (factors.empty()) throw PreconditionError("product: at least one factor is required");
  std::vector<const Signature*> sigs;
  ProductIndex index;
  std::vector<std::set<StateVector>> reach;
  std::size_t so = 0, io = 0, oo = 0;
  for (const auto& f : factors) {
    if (!validate(f).empty()) throw PreconditionError("product: factor '" + f.name() + "' does not validate");
    sigs.push_back(&f.signature());
    index.groups.push_back({index.states.size()});
    index.states.push_back({so, f.dimension()});
    index.inputs.push_back({io, f.inputs().size()});
    index.outputs.push_back({oo, f.outputs().size()});
    so += f.dimension();
    io += f.inputs().size();
    oo += f.outputs().size();
    reach.push_back(reachable_states(f));
  }
  Signature sig = product_signature(sigs);

  // Sources range over the product of per-factor reachable sets.
  std::uint64_t sources = 1;
  std::uint64_t count = 0;
  for (const auto& r : reach) sources = saturating_mul(sources, r.size());
  for (std::size_t k = 0; k < factors.size(); ++k) {
    std::uint64_t local = 0;
    for (const auto& s : reach[k]) local += factors[k].outgoing(s).size();
    count += saturating_mul(local, sources / reach[k].size());
  }
  if (sources > limits.max_states) {
    throw CapacityError("product: " + std::to_string(sources) + " reachable source states exceed the cap of " +
                        std::to_string(limits.max_states));
  }
  if (count > limits.max_transitions) {
    throw CapacityError("product: " + std::to_string(count) + " transitions exceed the cap of " +
                        std::to_string(limits.max_transitions));
  }

  std::vector<std::vector<StateVector>> reach_list;
  for (const auto& r : reach) reach_list.emplace_back(r.begin(), r.end());

  std::vector<Transition> ts;
  ts.reserve(count);
  StateVector context{std::vector<Symbol>(so)};
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == factors.size()) {
      for (std::size_t j = 0; j < factors.size(); ++j) {
        const Slice s = index.states[j];
        for (const auto& t : factors[j].outgoing(context.slice(s.offset, s.width))) {
          ts.push_back(lift_transition(t, context, s, index.inputs[j], io, index.outputs[j], oo));
        }
      }
      return;
    }
    for (const auto& v : reach_list[k]) {
      std::copy(v.values.begin(), v.values.end(), context.values.begin() + index.states[k].offset);
      self(self, k + 1);
    }
  };
  rec(rec, 0);
  return Composite{Nfioa(std::move(sig), std::move(ts)), std::move(index)};
}

Composite weak_product(std::span<const Composite> factors, const Limits& limits) {
  std::vector<Nfioa> automata;
  for (const auto& c : factors) automata.push_back(c.automaton);
  Composite out = weak_product(std::span<const Nfioa>(automata), limits);

  ProductIndex index;
  std::size_t so = 0, io = 0, oo = 0;
  for (const auto& c : factors) {
    std::vector<std::size_t> group;
    for (std::size_t leaf = 0; leaf < c.index.leaf_count(); ++leaf) {
      group.push_back(index.states.size());
      index.states.push_back({so + c.index.states[leaf].offset, c.index.states[leaf].width});
      index.inputs.push_back({io + c.index.inputs[leaf].offset, c.index.inputs[leaf].width});
      index.outputs.push_back({oo + c.index.outputs[leaf].offset, c.index.outputs[leaf].width});
    }
    index.groups.push_back(std::move(group));
    so += c.automaton.dimension();
    io += c.automaton.inputs().size();
    oo += c.automaton.outputs().size();
  }
  out.index = std::move(index);
  return out;
}

Composite associate(const Composite& c, const std::vector<std::vector<std::size_t>>& regrouping) {
  std::size_t next = 0;
  for (const auto& group : regrouping) {
    if (group.empty()) throw PreconditionError("associate: empty group");
    for (std::size_t leaf : group) {
      if (leaf != next) {
        throw PreconditionError("associate: regrouping permutes or skips leaf " + std::to_string(next) +
                                "; only re-bracketing is supported");
      }
      ++next;
    }
  }
  if (next != c.index.leaf_count()) {
    throw PreconditionError("associate: regrouping covers " + std::to_string(next) + " of " +
                            std::to_string(c.index.leaf_count()) + " leaves");
  }
  Composite out = c;
  out.index.groups = regrouping;
  return out;
}

}  // namespace pw
