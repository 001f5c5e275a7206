#include "pw/network.hpp"

#include "config_system.hpp"

namespace pw {

std::optional<std::size_t> NetworkSpec::instance(std::string_view n) const {
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (instances[i].name == n) return i;
  }
  return std::nullopt;
}

std::vector<Nfioa> qualified_instances(const NetworkSpec& spec) {
  std::vector<Nfioa> out;
  for (const auto& inst : spec.instances) {
    Signature sig = inst.automaton.signature();
    sig.name = inst.name;
    for (auto& c : sig.inputs) c.name = inst.name + "." + c.name;
    for (auto& c : sig.outputs) c.name = inst.name + "." + c.name;
    const auto ts = inst.automaton.transitions();
    out.emplace_back(std::move(sig), std::vector<Transition>(ts.begin(), ts.end()));
  }
  return out;
}

ProductIndex network_index(const NetworkSpec& spec) {
  ProductIndex index;
  std::size_t so = 0, io = 0, oo = 0;
  for (const auto& inst : spec.instances) {
    const Nfioa& a = inst.automaton;
    index.groups.push_back({index.states.size()});
    index.states.push_back({so, a.dimension()});
    index.inputs.push_back({io, a.inputs().size()});
    index.outputs.push_back({oo, a.outputs().size()});
    so += a.dimension();
    io += a.inputs().size();
    oo += a.outputs().size();
  }
  return index;
}

std::vector<Channel> global_channels(const NetworkSpec& spec, const ProductIndex& index) {
  std::vector<Channel> out;
  for (const auto& c : spec.channels) {
    if (c.from >= spec.instances.size() || c.to >= spec.instances.size() ||
        c.out >= spec.instances[c.from].automaton.outputs().size() ||
        c.in >= spec.instances[c.to].automaton.inputs().size()) {
      throw PreconditionError("network '" + spec.name + "': channel '" + c.label + "' references a missing component");
    }
    std::string label = c.label;
    if (label.empty()) {
      label = spec.instances[c.from].name + "." + spec.instances[c.from].automaton.outputs()[c.out].name + ">" +
              spec.instances[c.to].name + "." + spec.instances[c.to].automaton.inputs()[c.in].name;
    }
    out.push_back(Channel{index.outputs[c.from].offset + c.out, index.inputs[c.to].offset + c.in, std::move(label)});
  }
  return out;
}

std::vector<Condition> global_conditions(const NetworkSpec& spec, const ProductIndex& index) {
  std::vector<Condition> out;
  const std::size_t dim = index.states.empty() ? 0 : index.states.back().offset + index.states.back().width;
  for (const auto& c : spec.conditions) {
    std::vector<std::size_t> states, inputs, outputs;
    for (std::size_t f : c.scope) {
      if (f >= spec.instances.size()) {
        throw PreconditionError("network '" + spec.name + "': condition '" + c.condition.name +
                                "' references a missing instance");
      }
      for (std::size_t i = 0; i < index.states[f].width; ++i) states.push_back(index.states[f].offset + i);
      for (std::size_t i = 0; i < index.inputs[f].width; ++i) inputs.push_back(index.inputs[f].offset + i);
      for (std::size_t i = 0; i < index.outputs[f].width; ++i) outputs.push_back(index.outputs[f].offset + i);
    }
    out.push_back(embed(c.condition, states, dim, inputs, outputs));
  }
  return out;
}

BuiltNetwork build_network(const NetworkSpec& spec, const Limits& limits) {
  if (spec.instances.empty()) throw PreconditionError("network '" + spec.name + "' has no instances");
  BuiltNetwork out;
  out.spec = spec;
  out.index = network_index(spec);
  out.channels = global_channels(spec, out.index);
  out.conditions = global_conditions(spec, out.index);

  const auto factors = qualified_instances(spec);
  std::vector<detail::SystemPtr> systems;
  std::vector<const Signature*> sigs;
  for (const auto& f : factors) {
    if (!validate(f).empty()) throw PreconditionError("network '" + spec.name + "': instance '" + f.name() + "' does not validate");
    systems.push_back(detail::nfioa_system(f));
    sigs.push_back(&f.signature());
  }
  Nfioa shape(product_signature(sigs), {});
  shape = shape.renamed(spec.name);
  check_channels(shape, out.channels);

  detail::SystemPtr sys = detail::product_system(std::move(systems));
  if (!out.conditions.empty()) sys = detail::condition_filter(std::move(sys), out.conditions);
  sys = detail::restriction_system(std::move(sys), out.channels);
  out.graph = detail::explore(*sys, limits, spec.name);
  return out;
}

Composite condition_product(const NetworkSpec& spec, const Limits& limits) {
  const auto factors = qualified_instances(spec);
  Composite c = weak_product(std::span<const Nfioa>(factors), limits);
  const auto conditions = global_conditions(spec, c.index);
  c.automaton = cond(c.automaton, conditions).renamed(spec.name);
  return c;
}

}  // namespace pw
