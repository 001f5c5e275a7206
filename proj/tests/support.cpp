#include "support.hpp"

#include <deque>

namespace pwtest {

Nfioa mutex_user(std::string name) {
  return NfioaBuilder(std::move(name))
      .states({"remn", "try", "crit", "exit"})
      .initial("remn")
      .input("in", {"cf-req", "cf-fin"})
      .output("out", {"req", "fin"})
      .muller_set({"remn", "try", "crit", "exit"})
      .transition("remn", "try", "-", "out.req")
      .transition("try", "crit", "in.cf-req", "-")
      .transition("crit", "exit", "-", "out.fin")
      .transition("exit", "remn", "in.cf-fin", "-")
      .build();
}

Nfioa mutex_admin(std::string name) {
  return NfioaBuilder(std::move(name))
      .states({"remn", "try", "crit", "exit"})
      .initial("remn")
      .input("in", {"req", "fin"})
      .output("out", {"cf-req", "cf-fin"})
      .muller_set({"remn", "try", "crit", "exit"})
      .transition("remn", "try", "in.req", "-")
      .transition("try", "crit", "-", "out.cf-req")
      .transition("crit", "exit", "in.fin", "-")
      .transition("exit", "remn", "-", "out.cf-fin")
      .build();
}

Nfioa gen_automaton(Gen& g, const std::string& prefix, std::size_t ins, std::size_t outs) {
  const std::size_t n = g.between(2, 5);
  std::vector<std::string> states;
  for (std::size_t i = 0; i < n; ++i) states.push_back(prefix + std::to_string(i));
  NfioaBuilder b(prefix);
  b.states(states).initial(states[0]);
  std::vector<std::string> in_chars, out_chars;
  for (std::size_t k = 0; k < ins; ++k) {
    std::vector<std::string> cs;
    for (std::size_t c = 0; c < 3; ++c) {
      if (cs.empty() || g.coin()) cs.push_back("c" + std::to_string(c));
    }
    for (const auto& c : cs) in_chars.push_back("i" + std::to_string(k) + "." + c);
    b.input("i" + std::to_string(k), cs);
  }
  for (std::size_t k = 0; k < outs; ++k) {
    std::vector<std::string> cs;
    for (std::size_t c = 0; c < 3; ++c) {
      if (cs.empty() || g.coin()) cs.push_back("c" + std::to_string(c));
    }
    for (const auto& c : cs) out_chars.push_back("o" + std::to_string(k) + "." + c);
    b.output("o" + std::to_string(k), cs);
  }
  std::vector<std::string> final_set;
  for (const auto& s : states) {
    if (g.coin()) final_set.push_back(s);
  }
  b.muller_set(final_set.empty() ? states : final_set);
  const std::size_t m = g.between(n, 3 * n);
  for (std::size_t i = 0; i < m; ++i) {
    const std::string in = in_chars.empty() || g.coin(0.3) ? "-" : in_chars[g.below(in_chars.size())];
    const std::string out = out_chars.empty() || g.coin(0.3) ? "-" : out_chars[g.below(out_chars.size())];
    b.transition(states[g.below(n)], states[g.below(n)], in, out);
  }
  return b.build();
}

std::pair<Nfioa, std::vector<Channel>> gen_channels(Gen& g, const Nfioa& a, std::size_t count) {
  std::vector<std::size_t> outs, ins;
  for (std::size_t i = 0; i < a.outputs().size(); ++i) outs.push_back(i);
  for (std::size_t i = 0; i < a.inputs().size(); ++i) ins.push_back(i);
  std::vector<Channel> channels;
  while (channels.size() < count && !outs.empty() && !ins.empty()) {
    const std::size_t o = g.below(outs.size()), i = g.below(ins.size());
    channels.push_back(Channel{outs[o], ins[i], "k" + std::to_string(channels.size())});
    outs.erase(outs.begin() + static_cast<std::ptrdiff_t>(o));
    ins.erase(ins.begin() + static_cast<std::ptrdiff_t>(i));
  }
  Signature sig = a.signature();
  for (const auto& ch : channels) {
    const auto& o = sig.outputs[ch.out_component].characters;
    sig.inputs[ch.in_component].characters.insert(o.begin(), o.end());
  }
  return {Nfioa(sig, {a.transitions().begin(), a.transitions().end()}), channels};
}

std::pair<std::set<Configuration>, std::set<Edge>> oracle_cbr(const Nfioa& a, const std::vector<Channel>& channels) {
  auto pending_after = [&](const Transition& t) -> std::optional<Pending> {
    for (std::size_t k = 0; k < t.output.width(); ++k) {
      if (t.output.components[k].is_epsilon()) continue;
      for (const auto& ch : channels) {
        if (ch.out_component == k) return Pending{ch, t.output.components[k]};
      }
    }
    return std::nullopt;
  };
  auto reads_channel = [&](const Transition& t) {
    for (std::size_t k = 0; k < t.input.width(); ++k) {
      if (t.input.components[k].is_epsilon()) continue;
      for (const auto& ch : channels) {
        if (ch.in_component == k) return true;
      }
    }
    return false;
  };

  std::set<Configuration> seen;
  std::set<Edge> edges;
  std::deque<Configuration> queue;
  const Configuration init{a.initial(), std::nullopt};
  seen.insert(init);
  queue.push_back(init);
  while (!queue.empty()) {
    const Configuration c = queue.front();
    queue.pop_front();
    for (const auto& t : a.transitions()) {
      if (t.source != c.state) continue;
      if (c.pending) {
        VectorChar want = VectorChar::empty(a.inputs().size());
        want.components[c.pending->channel.in_component] = c.pending->character;
        if (t.input != want) continue;
      } else if (reads_channel(t)) {
        continue;
      }
      const Configuration next{t.target, pending_after(t)};
      edges.insert({c, t, next});
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return {seen, edges};
}

std::pair<std::set<Configuration>, std::set<Edge>> graph_sets(const RestrictedAutomaton& r) {
  std::set<Configuration> configs;
  std::set<Edge> edges;
  for (std::uint32_t i = 0; i < r.config_count(); ++i) {
    configs.insert(r.config(i));
    for (const auto& e : r.edges(i)) edges.insert({r.config(i), r.transition(e), r.config(e.target)});
  }
  return {configs, edges};
}

std::set<Transition> oracle_weak_product(const std::vector<Nfioa>& factors) {
  std::vector<std::vector<StateVector>> reach;
  for (const auto& f : factors) {
    const auto r = reachable_states(f);
    reach.emplace_back(r.begin(), r.end());
  }
  std::set<Transition> out;
  for (std::size_t mover = 0; mover < factors.size(); ++mover) {
    // Odometer over the reachable states of the other factors.
    std::vector<std::size_t> pick(factors.size(), 0);
    for (;;) {
      for (const auto& t : factors[mover].transitions()) {
        if (!reachable_states(factors[mover]).count(t.source)) continue;
        Transition lifted;
        for (std::size_t f = 0; f < factors.size(); ++f) {
          const StateVector& here = f == mover ? t.source : reach[f][pick[f]];
          const StateVector& there = f == mover ? t.target : reach[f][pick[f]];
          lifted.source.values.insert(lifted.source.values.end(), here.values.begin(), here.values.end());
          lifted.target.values.insert(lifted.target.values.end(), there.values.begin(), there.values.end());
          const auto in = f == mover ? t.input : VectorChar::empty(factors[f].inputs().size());
          const auto o = f == mover ? t.output : VectorChar::empty(factors[f].outputs().size());
          lifted.input.components.insert(lifted.input.components.end(), in.components.begin(), in.components.end());
          lifted.output.components.insert(lifted.output.components.end(), o.components.begin(), o.components.end());
        }
        out.insert(lifted);
      }
      std::size_t f = 0;
      for (; f < factors.size(); ++f) {
        if (f == mover) continue;
        if (++pick[f] < reach[f].size()) break;
        pick[f] = 0;
      }
      if (f == factors.size()) break;
    }
  }
  return out;
}

}  // namespace pwtest
