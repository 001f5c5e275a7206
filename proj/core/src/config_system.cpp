#include "config_system.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace pw::detail {

namespace {

class NfioaSystem final : public ConfigSystem {
 public:
  explicit NfioaSystem(Nfioa a) : a_(std::move(a)) {}

  const Signature& signature() const override { return a_.signature(); }
  const std::vector<Channel>& channels() const override { return channels_; }
  Configuration initial() const override { return {a_.initial(), std::nullopt}; }

  void successors(const Configuration& c, std::vector<Step>& out) const override {
    if (c.pending) return;
    for (const auto& t : a_.outgoing(c.state)) out.push_back(Step{t, Configuration{t.target, std::nullopt}});
  }

 private:
  Nfioa a_;
  std::vector<Channel> channels_;
};

class GraphSystem final : public ConfigSystem {
 public:
  explicit GraphSystem(RestrictedAutomaton r) : r_(std::move(r)) {}

  const Signature& signature() const override { return r_.base().signature(); }
  const std::vector<Channel>& channels() const override { return r_.channels(); }
  Configuration initial() const override { return r_.config(0); }

  void successors(const Configuration& c, std::vector<Step>& out) const override {
    const auto id = r_.find(c);
    if (!id) return;
    for (const auto& e : r_.edges(*id)) out.push_back(Step{r_.transition(e), r_.config(e.target)});
  }

 private:
  RestrictedAutomaton r_;
};

class ProductSystem final : public ConfigSystem {
 public:
  explicit ProductSystem(std::vector<SystemPtr> factors) : factors_(std::move(factors)) {
    std::vector<const Signature*> sigs;
    for (const auto& f : factors_) {
      const Signature& s = f->signature();
      sigs.push_back(&s);
      Layout l{{dim_, s.dimension()}, {in_width_, s.inputs.size()}, {out_width_, s.outputs.size()}};
      for (Channel ch : f->channels()) {
        ch.out_component += l.outputs.offset;
        ch.in_component += l.inputs.offset;
        channels_.push_back(std::move(ch));
      }
      dim_ += l.states.width;
      in_width_ += l.inputs.width;
      out_width_ += l.outputs.width;
      layout_.push_back(l);
    }
    signature_ = product_signature(sigs);
  }

  const Signature& signature() const override { return signature_; }
  const std::vector<Channel>& channels() const override { return channels_; }
  Configuration initial() const override {
    Configuration c{StateVector(std::vector<Symbol>(dim_)), std::nullopt};
    for (std::size_t k = 0; k < factors_.size(); ++k) {
      const Configuration sub = factors_[k]->initial();
      std::copy(sub.state.values.begin(), sub.state.values.end(), c.state.values.begin() + layout_[k].states.offset);
      if (sub.pending) c.pending = lift(*sub.pending, k);
    }
    return c;
  }

  void successors(const Configuration& c, std::vector<Step>& out) const override {
    if (c.pending) {
      const std::size_t k = owner(c.pending->channel);
      expand(c, k, lower(*c.pending, k), out);
      return;
    }
    for (std::size_t k = 0; k < factors_.size(); ++k) expand(c, k, std::nullopt, out);
  }

 private:
  struct Layout {
    Slice states, inputs, outputs;
  };

  std::size_t owner(const Channel& ch) const {
    for (std::size_t k = 0; k < layout_.size(); ++k) {
      const Slice o = layout_[k].outputs;
      if (ch.out_component >= o.offset && ch.out_component < o.offset + o.width) return k;
    }
    throw Error("product: pending character on an unknown channel");
  }

  Pending lift(Pending p, std::size_t k) const {
    p.channel.out_component += layout_[k].outputs.offset;
    p.channel.in_component += layout_[k].inputs.offset;
    return p;
  }

  Pending lower(Pending p, std::size_t k) const {
    p.channel.out_component -= layout_[k].outputs.offset;
    p.channel.in_component -= layout_[k].inputs.offset;
    return p;
  }

  void expand(const Configuration& c, std::size_t k, std::optional<Pending> pending, std::vector<Step>& out) const {
    const Layout& l = layout_[k];
    const Configuration sub{c.state.slice(l.states.offset, l.states.width), std::move(pending)};
    scratch_.clear();
    factors_[k]->successors(sub, scratch_);
    for (const auto& s : scratch_) {
      Step lifted{lift_transition(s.transition, c.state, l.states, l.inputs, in_width_, l.outputs, out_width_),
                  Configuration{}};
      lifted.target.state = lifted.transition.target;
      if (s.target.pending) lifted.target.pending = lift(*s.target.pending, k);
      out.push_back(std::move(lifted));
    }
  }

  std::vector<SystemPtr> factors_;
  std::vector<Layout> layout_;
  std::vector<Channel> channels_;
  Signature signature_;
  std::size_t dim_ = 0, in_width_ = 0, out_width_ = 0;
  // Exploration is single-threaded per system; reused to avoid reallocation.
  mutable std::vector<Step> scratch_;
};

class RestrictionSystem final : public ConfigSystem {
 public:
  RestrictionSystem(SystemPtr inner, std::vector<Channel> extra) : inner_(std::move(inner)), extra_(std::move(extra)) {
    channels_ = inner_->channels();
    channels_.insert(channels_.end(), extra_.begin(), extra_.end());
    in_width_ = inner_->signature().inputs.size();
  }

  const Signature& signature() const override { return inner_->signature(); }
  const std::vector<Channel>& channels() const override { return channels_; }
  Configuration initial() const override { return inner_->initial(); }

  void successors(const Configuration& c, std::vector<Step>& out) const override {
    scratch_.clear();
    const bool outer_pending = c.pending && is_extra(c.pending->channel);
    if (c.pending && !outer_pending) {
      inner_->successors(c, scratch_);
    } else {
      inner_->successors(Configuration{c.state, std::nullopt}, scratch_);
    }
    for (auto& s : scratch_) {
      if (outer_pending) {
        if (s.transition.input != VectorChar::unit(in_width_, c.pending->channel.in_component, c.pending->character)) {
          continue;
        }
      } else if (!c.pending) {
        const auto k = s.transition.input.active_component();
        if (k && reads_extra(*k)) continue;
      }
      if (!s.target.pending) {
        if (const auto k = s.transition.output.active_component()) {
          for (const auto& ch : extra_) {
            if (ch.out_component == *k) s.target.pending = Pending{ch, s.transition.output.components[*k]};
          }
        }
      }
      out.push_back(std::move(s));
    }
  }

 private:
  bool is_extra(const Channel& ch) const { return std::find(extra_.begin(), extra_.end(), ch) != extra_.end(); }
  bool reads_extra(std::size_t in) const {
    return std::any_of(extra_.begin(), extra_.end(), [&](const Channel& ch) { return ch.in_component == in; });
  }

  SystemPtr inner_;
  std::vector<Channel> extra_;
  std::vector<Channel> channels_;
  std::size_t in_width_ = 0;
  mutable std::vector<Step> scratch_;
};

class ConditionFilter final : public ConfigSystem {
 public:
  ConditionFilter(SystemPtr inner, std::vector<Condition> conditions)
      : inner_(std::move(inner)), conditions_(std::move(conditions)) {}

  const Signature& signature() const override { return inner_->signature(); }
  const std::vector<Channel>& channels() const override { return inner_->channels(); }
  Configuration initial() const override { return inner_->initial(); }

  void successors(const Configuration& c, std::vector<Step>& out) const override {
    const std::size_t first = out.size();
    inner_->successors(c, out);
    auto killed = [&](const Step& s) {
      return std::any_of(conditions_.begin(), conditions_.end(),
                         [&](const Condition& e) { return e.matches(s.transition); });
    };
    out.erase(std::remove_if(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(), killed), out.end());
  }

 private:
  SystemPtr inner_;
  std::vector<Condition> conditions_;
};

}  // namespace

SystemPtr nfioa_system(Nfioa a) { return std::make_shared<NfioaSystem>(std::move(a)); }
SystemPtr graph_system(RestrictedAutomaton r) { return std::make_shared<GraphSystem>(std::move(r)); }
SystemPtr product_system(std::vector<SystemPtr> factors) {
  return std::make_shared<ProductSystem>(std::move(factors));
}
SystemPtr restriction_system(SystemPtr inner, std::vector<Channel> extra) {
  return std::make_shared<RestrictionSystem>(std::move(inner), std::move(extra));
}
SystemPtr condition_filter(SystemPtr inner, std::vector<Condition> conditions) {
  return std::make_shared<ConditionFilter>(std::move(inner), std::move(conditions));
}

RestrictedAutomaton explore(const ConfigSystem& system, const Limits& limits, const std::string& name) {
  using Edge = RestrictedAutomaton::Edge;
  std::unordered_map<Configuration, std::uint32_t> ids;
  std::vector<Configuration> configs;
  std::vector<std::vector<Edge>> edges;
  std::unordered_map<Transition, std::uint32_t> pool_ids;
  std::vector<Transition> pool;
  std::size_t edge_total = 0;

  configs.push_back(system.initial());
  ids.emplace(configs.back(), 0);
  std::vector<Step> steps;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    steps.clear();
    system.successors(configs[i], steps);
    std::sort(steps.begin(), steps.end(), [](const Step& a, const Step& b) {
      if (a.transition != b.transition) return a.transition < b.transition;
      return a.target < b.target;
    });
    steps.erase(std::unique(steps.begin(), steps.end(),
                            [](const Step& a, const Step& b) {
                              return a.transition == b.transition && a.target == b.target;
                            }),
                steps.end());
    std::vector<Edge> out;
    out.reserve(steps.size());
    for (auto& s : steps) {
      auto [tp, tnew] = pool_ids.try_emplace(s.transition, static_cast<std::uint32_t>(pool.size()));
      if (tnew) pool.push_back(s.transition);
      auto it = ids.find(s.target);
      if (it == ids.end()) {
        if (configs.size() >= limits.max_states) {
          throw CapacityError("exploration exceeded the cap of " + std::to_string(limits.max_states) +
                              " configurations");
        }
        it = ids.emplace(s.target, static_cast<std::uint32_t>(configs.size())).first;
        configs.push_back(std::move(s.target));
      }
      out.push_back(Edge{tp->second, it->second});
    }
    edge_total += out.size();
    if (edge_total > limits.max_transitions) {
      throw CapacityError("exploration exceeded the cap of " + std::to_string(limits.max_transitions) + " edges");
    }
    edges.push_back(std::move(out));
  }

  // Renumber the pool in relation order so edge indices address base().
  std::vector<std::uint32_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return pool[a] < pool[b]; });
  std::vector<std::uint32_t> rank(pool.size());
  std::vector<Transition> sorted;
  sorted.reserve(pool.size());
  for (std::uint32_t r = 0; r < order.size(); ++r) {
    rank[order[r]] = r;
    sorted.push_back(std::move(pool[order[r]]));
  }
  for (auto& list : edges) {
    for (auto& e : list) e.transition = rank[e.transition];
  }
  Signature sig = system.signature();
  if (!name.empty()) sig.name = name;
  return RestrictedAutomaton(Nfioa(std::move(sig), std::move(sorted)), system.channels(), std::move(configs),
                             std::move(edges));
}

}  // namespace pw::detail
