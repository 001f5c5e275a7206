#include <algorithm>
#include <deque>
#include <map>

#include "pw/analysis.hpp"

namespace pw {

std::string to_string(const Event& e) { return e.channel + ":" + std::string(e.character.name()); }

std::string to_string(const EventTrace& t) {
  std::string out = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += to_string(t[i]);
  }
  return out + "]";
}

std::optional<Event> event_of(const RestrictedAutomaton& r, const Transition& t) {
  const auto k = t.output.active_component();
  if (!k) return std::nullopt;
  for (const auto& ch : r.channels()) {
    if (ch.out_component == *k) return Event{ch.label, t.output.components[*k]};
  }
  return std::nullopt;
}

std::set<Event> event_alphabet(const RestrictedAutomaton& r) {
  std::set<Event> out;
  for (const auto& ch : r.channels()) {
    for (Symbol c : r.base().outputs().at(ch.out_component).characters) out.insert(Event{ch.label, c});
  }
  return out;
}

namespace {

constexpr std::uint32_t kSilent = UINT32_MAX;

/// Subset construction over channel events; silent edges are closed over.
class Determinizer {
 public:
  Determinizer(const RestrictedAutomaton& r, const std::vector<Event>& events) : r_(r) {
    const auto ts = r.base().transitions();
    event_of_transition_.assign(ts.size(), kSilent);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (auto e = event_of(r, ts[i])) {
        event_of_transition_[i] =
            static_cast<std::uint32_t>(std::lower_bound(events.begin(), events.end(), *e) - events.begin());
      }
    }
    initial_ = intern(closure({0}));
  }

  std::uint32_t initial() const { return initial_; }
  std::size_t size() const { return sets_.size(); }

  /// Event id -> successor set id, for every event enabled in `set`.
  const std::map<std::uint32_t, std::uint32_t>& successors(std::uint32_t set) {
    if (set < done_.size() && done_[set]) return succ_[set];
    std::map<std::uint32_t, std::vector<std::uint32_t>> targets;
    for (auto c : sets_[set]) {
      for (const auto& e : r_.edges(c)) {
        const auto ev = event_of_transition_[e.transition];
        if (ev != kSilent) targets[ev].push_back(e.target);
      }
    }
    std::map<std::uint32_t, std::uint32_t> out;
    for (auto& [ev, ts] : targets) out.emplace(ev, intern(closure(std::move(ts))));
    if (succ_.size() <= set) {
      succ_.resize(set + 1);
      done_.resize(set + 1, 0);
    }
    succ_[set] = std::move(out);
    done_[set] = 1;
    return succ_[set];
  }

 private:
  std::vector<std::uint32_t> closure(std::vector<std::uint32_t> seeds) {
    std::vector<char> seen(r_.config_count(), 0);
    std::vector<std::uint32_t> out;
    std::deque<std::uint32_t> queue;
    for (auto s : seeds) {
      if (!seen[s]) {
        seen[s] = 1;
        queue.push_back(s);
      }
    }
    while (!queue.empty()) {
      const auto c = queue.front();
      queue.pop_front();
      out.push_back(c);
      for (const auto& e : r_.edges(c)) {
        if (event_of_transition_[e.transition] == kSilent && !seen[e.target]) {
          seen[e.target] = 1;
          queue.push_back(e.target);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::uint32_t intern(std::vector<std::uint32_t> set) {
    auto [it, fresh] = ids_.try_emplace(std::move(set), static_cast<std::uint32_t>(sets_.size()));
    if (fresh) sets_.push_back(it->first);
    return it->second;
  }

  const RestrictedAutomaton& r_;
  std::vector<std::uint32_t> event_of_transition_;
  std::map<std::vector<std::uint32_t>, std::uint32_t> ids_;
  std::vector<std::vector<std::uint32_t>> sets_;
  std::vector<std::map<std::uint32_t, std::uint32_t>> succ_;
  std::vector<char> done_;
  std::uint32_t initial_ = 0;
};

std::vector<Event> sorted_events(const std::set<Event>& s) { return {s.begin(), s.end()}; }

}  // namespace

std::set<EventTrace> trace_language(const RestrictedAutomaton& r, std::size_t bound, std::size_t max_traces) {
  const auto events = sorted_events(event_alphabet(r));
  Determinizer det(r, events);
  std::set<EventTrace> out;
  EventTrace current;
  auto rec = [&](auto&& self, std::uint32_t set) -> void {
    if (out.size() >= max_traces) {
      throw CapacityError("trace language exceeds " + std::to_string(max_traces) + " traces");
    }
    out.insert(current);
    if (current.size() == bound) return;
    // Copy: successors() may grow the cache and invalidate references.
    const auto succ = det.successors(set);
    for (const auto& [ev, next] : succ) {
      current.push_back(events[ev]);
      self(self, next);
      current.pop_back();
    }
  };
  rec(rec, det.initial());
  return out;
}

EquivalenceResult trace_equivalent(const RestrictedAutomaton& a, const RestrictedAutomaton& b,
                                   std::optional<std::size_t> bound, std::size_t max_pairs) {
  const auto alpha = event_alphabet(a);
  if (alpha != event_alphabet(b)) throw PreconditionError("trace equivalence: event alphabets differ");
  const auto events = sorted_events(alpha);
  Determinizer da(a, events), db(b, events);

  using Pair = std::pair<std::uint32_t, std::uint32_t>;
  struct Visit {
    std::size_t parent;
    std::uint32_t event;
    std::size_t depth;
  };
  std::map<Pair, std::size_t> ids;
  std::vector<Pair> pairs;
  std::vector<Visit> visits;
  auto trace_to = [&](std::size_t id) {
    EventTrace t;
    while (id != 0) {
      t.push_back(events[visits[id].event]);
      id = visits[id].parent;
    }
    std::reverse(t.begin(), t.end());
    return t;
  };

  EquivalenceResult result;
  pairs.push_back({da.initial(), db.initial()});
  visits.push_back({0, 0, 0});
  ids.emplace(pairs.back(), 0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [sa, sb] = pairs[i];
    const std::size_t depth = visits[i].depth;
    result.depth = std::max(result.depth, depth);
    if (bound && depth >= *bound) {
      result.complete = false;
      continue;
    }
    const auto na = da.successors(sa);
    const auto nb = db.successors(sb);
    for (std::uint32_t ev = 0; ev < events.size(); ++ev) {
      const auto ia = na.find(ev);
      const auto ib = nb.find(ev);
      if ((ia == na.end()) != (ib == nb.end())) {
        result.equivalent = false;
        result.distinguishing = trace_to(i);
        result.distinguishing->push_back(events[ev]);
        result.depth = depth + 1;
        result.sufficient_bound = pairs.size();
        return result;
      }
      if (ia == na.end()) continue;
      const Pair next{ia->second, ib->second};
      if (ids.emplace(next, pairs.size()).second) {
        if (pairs.size() >= max_pairs) {
          throw CapacityError("trace equivalence exceeded " + std::to_string(max_pairs) + " explored pairs");
        }
        pairs.push_back(next);
        visits.push_back({i, ev, depth + 1});
      }
    }
  }
  result.sufficient_bound = pairs.size();
  return result;
}

SafetyResult safety_query(const RestrictedAutomaton& r, const ConfigPredicate& violation) {
  SafetyResult result;
  const std::size_t n = r.config_count();
  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> parent(n, kNone), via(n, kNone);
  std::vector<char> seen(n, 0);
  std::deque<std::uint32_t> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    const auto c = queue.front();
    queue.pop_front();
    ++result.explored;
    if (violation(r.config(c))) {
      result.ok = false;
      for (std::uint32_t x = c; x != kNone; x = parent[x]) {
        result.path.push_back(x);
        if (via[x] != kNone) result.transitions.push_back(via[x]);
      }
      std::reverse(result.path.begin(), result.path.end());
      std::reverse(result.transitions.begin(), result.transitions.end());
      return result;
    }
    for (const auto& e : r.edges(c)) {
      if (!seen[e.target]) {
        seen[e.target] = 1;
        parent[e.target] = c;
        via[e.target] = e.transition;
        queue.push_back(e.target);
      }
    }
  }
  return result;
}

}  // namespace pw
