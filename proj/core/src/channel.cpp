#include "pw/channel.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "config_system.hpp"
#include "consistency.hpp"

namespace pw {

std::size_t hash_value(const Configuration& c) noexcept {
  std::size_t h = hash_value(c.state);
  if (c.pending) {
    h ^= (c.pending->channel.out_component * 0x9e3779b97f4a7c15ULL) + c.pending->character.hash() + (h << 6);
  }
  return h;
}

std::string to_string(const Configuration& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.state.size(); ++i) {
    if (i) out += ',';
    out += c.state[i].name();
  }
  out += '|';
  out += c.pending ? c.pending->character.name() : kEpsilonText;
  return out + ")";
}

RestrictedAutomaton::RestrictedAutomaton(Nfioa base, std::vector<Channel> channels, std::vector<Configuration> configs,
                                         std::vector<std::vector<Edge>> edges) {
  auto d = std::make_shared<Data>();
  d->base = std::move(base);
  d->channels = std::move(channels);
  d->edge_offsets.reserve(edges.size() + 1);
  d->edge_offsets.push_back(0);
  for (auto& list : edges) {
    d->edges.insert(d->edges.end(), list.begin(), list.end());
    d->edge_offsets.push_back(d->edges.size());
  }
  d->ids.reserve(configs.size());
  for (std::uint32_t i = 0; i < configs.size(); ++i) d->ids.emplace(configs[i], i);
  d->configs = std::move(configs);
  data_ = std::move(d);
}

std::span<const RestrictedAutomaton::Edge> RestrictedAutomaton::edges(std::uint32_t id) const {
  if (id >= data_->configs.size()) throw PreconditionError("unknown configuration id " + std::to_string(id));
  return std::span<const Edge>(data_->edges).subspan(data_->edge_offsets[id],
                                                     data_->edge_offsets[id + 1] - data_->edge_offsets[id]);
}

std::optional<std::uint32_t> RestrictedAutomaton::find(const Configuration& c) const {
  auto it = data_->ids.find(c);
  if (it == data_->ids.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------

namespace {

void check_channels_against(const Nfioa& a, std::span<const Channel> existing, std::span<const Channel> channels) {
  std::set<std::size_t> outs, ins;
  for (const auto& ch : existing) {
    outs.insert(ch.out_component);
    ins.insert(ch.in_component);
  }
  for (const auto& ch : channels) {
    const std::string name = "channel (" + std::to_string(ch.out_component) + "," + std::to_string(ch.in_component) + ")";
    if (ch.out_component >= a.outputs().size() || ch.in_component >= a.inputs().size()) {
      throw PreconditionError(name + " references a missing component");
    }
    const auto& o = a.outputs()[ch.out_component].characters;
    const auto& i = a.inputs()[ch.in_component].characters;
    if (!std::includes(i.begin(), i.end(), o.begin(), o.end())) {
      throw PreconditionError(name + ": output alphabet of '" + a.outputs()[ch.out_component].name +
                              "' is not contained in input alphabet of '" + a.inputs()[ch.in_component].name + "'");
    }
    if (!outs.insert(ch.out_component).second) throw PreconditionError(name + " reuses an output component");
    if (!ins.insert(ch.in_component).second) throw PreconditionError(name + " reuses an input component");
  }
}

}  // namespace

void check_channels(const Nfioa& a, std::span<const Channel> channels) { check_channels_against(a, {}, channels); }

RestrictedAutomaton cbr(const Nfioa& a, std::span<const Channel> channels, const Limits& limits) {
  check_channels(a, channels);
  auto sys = detail::restriction_system(detail::nfioa_system(a), {channels.begin(), channels.end()});
  return detail::explore(*sys, limits);
}

RestrictedAutomaton cbr(const RestrictedAutomaton& r, std::span<const Channel> channels, const Limits& limits) {
  check_channels_against(r.base(), r.channels(), channels);
  auto sys = detail::restriction_system(detail::graph_system(r), {channels.begin(), channels.end()});
  return detail::explore(*sys, limits);
}

RestrictedAutomaton as_restricted(const Nfioa& a, const Limits& limits) {
  return detail::explore(*detail::nfioa_system(a), limits);
}

RestrictedAutomaton restricted_product(std::span<const RestrictedAutomaton> factors, const Limits& limits) {
  if (factors.empty()) throw PreconditionError("product: at least one factor is required");
  std::vector<detail::SystemPtr> systems;
  for (const auto& f : factors) systems.push_back(detail::graph_system(f));
  return detail::explore(*detail::product_system(std::move(systems)), limits);
}

Excitation classify_config(const RestrictedAutomaton& r, const Configuration& c) {
  if (!r.find(c)) throw PreconditionError("configuration " + to_string(c) + " is not a node of the graph");
  return c.excited() ? Excitation::Excited : Excitation::Relaxed;
}

std::vector<std::pair<Transition, Configuration>> enabled(const RestrictedAutomaton& r, const Configuration& c) {
  const auto id = r.find(c);
  if (!id) throw PreconditionError("configuration " + to_string(c) + " is not a node of the graph");
  std::vector<std::pair<Transition, Configuration>> out;
  for (const auto& e : r.edges(*id)) out.emplace_back(r.transition(e), r.config(e.target));
  return out;
}

CheckResult is_well_formed(const RestrictedAutomaton& r) {
  for (std::uint32_t i = 0; i < r.config_count(); ++i) {
    if (r.config(i).excited() && r.edges(i).empty()) {
      return {false, i, "excited configuration " + to_string(r.config(i)) + " has no consuming transition"};
    }
  }
  return {};
}

CheckResult is_consistent(const RestrictedAutomaton& r) {
  if (auto wf = is_well_formed(r); !wf) throw PreconditionError("consistency: automaton is not well-formed: " + wf.detail);
  detail::StateGraph g;
  g.states.reserve(r.config_count());
  g.successors.resize(r.config_count());
  for (std::uint32_t i = 0; i < r.config_count(); ++i) {
    g.states.push_back(&r.config(i).state);
    for (const auto& e : r.edges(i)) g.successors[i].push_back(e.target);
  }
  if (auto bad = detail::first_inconsistent(g, r.base().acceptance())) {
    return {false, *bad, "no continuation from " + to_string(r.config(*bad)) + " meets the acceptance condition"};
  }
  return {};
}

OpenComponents open_components(const Nfioa& a, std::span<const Channel> channels) {
  OpenComponents out;
  for (std::size_t l = 0; l < a.inputs().size(); ++l) {
    if (std::none_of(channels.begin(), channels.end(), [&](const Channel& c) { return c.in_component == l; })) {
      out.inputs.push_back(l);
    }
  }
  for (std::size_t k = 0; k < a.outputs().size(); ++k) {
    if (std::none_of(channels.begin(), channels.end(), [&](const Channel& c) { return c.out_component == k; })) {
      out.outputs.push_back(k);
    }
  }
  return out;
}

bool is_protocol(const RestrictedAutomaton& r) {
  const auto open = open_components(r.base(), r.channels());
  return open.inputs.empty() && open.outputs.empty();
}

// ---------------------------------------------------------------------------

std::vector<Run> run(const RestrictedAutomaton& r, const Scheduler& scheduler, std::size_t step_bound,
                     std::size_t max_runs) {
  auto single = [&](auto&& choose) {
    Run out;
    out.configs.push_back(0);
    while (out.transitions.size() < step_bound) {
      const auto es = r.edges(out.configs.back());
      if (es.empty()) break;
      const auto pick = choose(es.size());
      if (!pick) break;
      out.transitions.push_back(es[*pick].transition);
      out.configs.push_back(es[*pick].target);
    }
    return std::vector<Run>{std::move(out)};
  };

  if (const auto* rs = std::get_if<RandomScheduler>(&scheduler)) {
    std::mt19937_64 rng(rs->seed);
    return single([&](std::size_t n) -> std::optional<std::size_t> {
      return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    });
  }
  if (const auto* ss = std::get_if<ScriptedScheduler>(&scheduler)) {
    std::size_t next = 0;
    return single([&](std::size_t n) -> std::optional<std::size_t> {
      if (n == 1) return 0;
      if (next == ss->choices.size()) return std::nullopt;
      const std::size_t c = ss->choices[next++];
      if (c >= n) {
        throw PreconditionError("scripted choice " + std::to_string(c) + " out of range: " + std::to_string(n) +
                                " transitions enabled");
      }
      return c;
    });
  }

  std::vector<Run> runs;
  Run current;
  current.configs.push_back(0);
  auto dfs = [&](auto&& self) -> void {
    const auto es = r.edges(current.configs.back());
    if (current.transitions.size() == step_bound || es.empty()) {
      if (runs.size() == max_runs) {
        throw CapacityError("exhaustive run enumeration exceeded " + std::to_string(max_runs) + " runs");
      }
      runs.push_back(current);
      return;
    }
    for (const auto& e : es) {
      current.transitions.push_back(e.transition);
      current.configs.push_back(e.target);
      self(self);
      current.transitions.pop_back();
      current.configs.pop_back();
    }
  };
  dfs(dfs);
  return runs;
}

// ---------------------------------------------------------------------------

namespace {

constexpr TransitionClass kClasses[] = {
    {Excitation::Relaxed, InputClass::Empty, OutputClass::Empty, Excitation::Relaxed},
    {Excitation::Relaxed, InputClass::Empty, OutputClass::Channel, Excitation::Excited},
    {Excitation::Relaxed, InputClass::Empty, OutputClass::Other, Excitation::Relaxed},
    {Excitation::Relaxed, InputClass::Open, OutputClass::Empty, Excitation::Relaxed},
    {Excitation::Relaxed, InputClass::Open, OutputClass::Channel, Excitation::Excited},
    {Excitation::Relaxed, InputClass::Open, OutputClass::Other, Excitation::Relaxed},
    {Excitation::Excited, InputClass::Channel, OutputClass::Empty, Excitation::Relaxed},
    {Excitation::Excited, InputClass::Channel, OutputClass::Channel, Excitation::Excited},
    {Excitation::Excited, InputClass::Channel, OutputClass::Other, Excitation::Relaxed},
};

const char* name(Excitation e) { return e == Excitation::Excited ? "excited" : "relaxed"; }
const char* name(InputClass c) {
  switch (c) {
    case InputClass::Empty: return "empty";
    case InputClass::Open: return "open";
    case InputClass::Channel: return "channel";
  }
  return "?";
}
const char* name(OutputClass c) {
  switch (c) {
    case OutputClass::Empty: return "empty";
    case OutputClass::Channel: return "channel";
    case OutputClass::Other: return "other";
  }
  return "?";
}

}  // namespace

std::span<const TransitionClass> transition_classes() { return kClasses; }

std::string to_string(const TransitionClass& c) {
  return std::string(name(c.start)) + " | " + name(c.input) + " | " + name(c.output) + " | " + name(c.target);
}

std::optional<std::size_t> classify_edge(const RestrictedAutomaton& r, std::uint32_t config,
                                         const RestrictedAutomaton::Edge& e) {
  const Configuration& from = r.config(config);
  const Configuration& to = r.config(e.target);
  const Transition& t = r.transition(e);
  const auto& chans = r.channels();

  TransitionClass c{from.excited() ? Excitation::Excited : Excitation::Relaxed, InputClass::Empty,
                    OutputClass::Empty, to.excited() ? Excitation::Excited : Excitation::Relaxed};
  if (t.input.non_empty_count() > 1 || t.output.non_empty_count() > 1) return std::nullopt;
  if (const auto l = t.input.active_component()) {
    const bool wired = std::any_of(chans.begin(), chans.end(), [&](const Channel& ch) { return ch.in_component == *l; });
    c.input = wired ? InputClass::Channel : InputClass::Open;
    if (from.excited() && (*l != from.pending->channel.in_component || t.input.components[*l] != from.pending->character)) {
      return std::nullopt;
    }
  }
  if (const auto k = t.output.active_component()) {
    const auto ch = std::find_if(chans.begin(), chans.end(), [&](const Channel& x) { return x.out_component == *k; });
    c.output = ch == chans.end() ? OutputClass::Other : OutputClass::Channel;
    if (ch != chans.end() && (!to.pending || to.pending->channel != *ch || to.pending->character != t.output.components[*k])) {
      return std::nullopt;
    }
  }
  for (std::size_t row = 0; row < std::size(kClasses); ++row) {
    const auto& k = kClasses[row];
    if (k.start == c.start && k.input == c.input && k.output == c.output && k.target == c.target) return row;
  }
  return std::nullopt;
}

}  // namespace pw
