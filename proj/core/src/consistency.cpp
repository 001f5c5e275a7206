#include "consistency.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "pw/error.hpp"

namespace pw::detail {

namespace {

constexpr std::size_t kMaxMullerCombinations = 1U << 14;

// Strongly connected components of the subgraph induced by `allowed`.
// Iterative Tarjan; components are returned as node lists.
std::vector<std::vector<std::uint32_t>> sccs(const StateGraph& g, const std::vector<char>& allowed) {
  const std::uint32_t n = static_cast<std::uint32_t>(g.states.size());
  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  std::vector<std::vector<std::uint32_t>> out;
  std::uint32_t counter = 0;

  struct Frame {
    std::uint32_t node;
    std::size_t next;
  };
  std::vector<Frame> call;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (!allowed[root] || index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& succ = g.successors[f.node];
      if (f.next < succ.size()) {
        const std::uint32_t w = succ[f.next++];
        if (!allowed[w]) continue;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const std::uint32_t v = f.node;
      call.pop_back();
      if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::uint32_t> comp;
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        out.push_back(std::move(comp));
      }
    }
  }
  return out;
}

bool nontrivial(const StateGraph& g, const std::vector<std::uint32_t>& comp) {
  if (comp.size() > 1) return true;
  const auto& succ = g.successors[comp.front()];
  return std::find(succ.begin(), succ.end(), comp.front()) != succ.end();
}

std::vector<char> muller_targets(const StateGraph& g, const Acceptance& acc) {
  const std::size_t n = g.states.size();
  std::vector<char> good(n, 0);
  std::vector<std::vector<const std::set<StateVector>*>> options;
  std::size_t combos = 1;
  for (const auto& f : acc.factors) {
    options.emplace_back();
    for (const auto& m : f.muller_sets) options.back().push_back(&m);
    combos *= options.back().size();
    if (combos > kMaxMullerCombinations) {
      throw CapacityError("consistency: too many combinations of Muller sets");
    }
  }
  if (combos == 0) return good;

  std::vector<std::size_t> pick(options.size(), 0);
  for (std::size_t c = 0; c < combos; ++c) {
    std::size_t rest = c;
    for (std::size_t f = 0; f < options.size(); ++f) {
      pick[f] = rest % options[f].size();
      rest /= options[f].size();
    }
    std::vector<char> allowed(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      bool ok = true;
      for (std::size_t f = 0; f < options.size() && ok; ++f) {
        const auto& fac = acc.factors[f];
        ok = options[f][pick[f]]->count(g.states[v]->slice(fac.offset, fac.width)) > 0;
      }
      allowed[v] = ok;
    }
    for (const auto& comp : sccs(g, allowed)) {
      if (!nontrivial(g, comp)) continue;
      bool exact = true;
      for (std::size_t f = 0; f < options.size() && exact; ++f) {
        const auto& fac = acc.factors[f];
        std::set<StateVector> seen;
        for (auto v : comp) seen.insert(g.states[v]->slice(fac.offset, fac.width));
        exact = seen == *options[f][pick[f]];
      }
      if (exact) {
        for (auto v : comp) good[v] = 1;
      }
    }
  }
  return good;
}

}  // namespace

std::optional<std::uint32_t> first_inconsistent(const StateGraph& g, const Acceptance& acc) {
  const std::size_t n = g.states.size();
  std::vector<char> good(n, 0);
  if (acc.mode == AcceptanceMode::FinalStates) {
    for (std::size_t v = 0; v < n; ++v) good[v] = acc.accepts_state(*g.states[v]);
  } else {
    good = muller_targets(g, acc);
  }

  std::vector<std::vector<std::uint32_t>> pred(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (auto w : g.successors[v]) pred[w].push_back(v);
  }
  std::deque<std::uint32_t> queue;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (good[v]) queue.push_back(v);
  }
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto u : pred[v]) {
      if (!good[u]) {
        good[u] = 1;
        queue.push_back(u);
      }
    }
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!good[v]) return v;
  }
  return std::nullopt;
}

}  // namespace pw::detail
