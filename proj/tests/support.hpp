#pragma once

// Fixtures, a seeded generator and brute-force oracles shared by the tests.
// The oracles follow the definitions directly and share no code with the
// library beyond its value types.

#include <cstdint>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "pw/analysis.hpp"

namespace pwtest {

using namespace pw;

/// remn -out.req-> try -in.cf-req-> crit -out.fin-> exit -in.cf-fin-> remn
Nfioa mutex_user(std::string name = "U");
/// The mirror image of mutex_user().
Nfioa mutex_admin(std::string name = "C");

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed * 0x2545F4914F6CDD1DULL + 17) {}
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool coin(double p = 0.5) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }

 private:
  std::mt19937_64 rng_;
};

/// A random dimension-1 automaton over characters c0..c2, with `ins` input
/// and `outs` output components. State names carry `prefix`.
Nfioa gen_automaton(Gen& g, const std::string& prefix, std::size_t ins, std::size_t outs);

/// Channels between distinct, randomly chosen components, with input
/// alphabets enlarged to satisfy the inclusion precondition.
std::pair<Nfioa, std::vector<Channel>> gen_channels(Gen& g, const Nfioa& a, std::size_t count);

using Edge = std::tuple<Configuration, Transition, Configuration>;

/// Reachable configurations and labelled edges of cbr(a, channels),
/// straight from the excited/relaxed rules.
std::pair<std::set<Configuration>, std::set<Edge>> oracle_cbr(const Nfioa& a, const std::vector<Channel>& channels);

/// The same sets read off a library result.
std::pair<std::set<Configuration>, std::set<Edge>> graph_sets(const RestrictedAutomaton& r);

/// Transitions of the weak product from states whose components are all
/// reachable in their factor.
std::set<Transition> oracle_weak_product(const std::vector<Nfioa>& factors);

}  // namespace pwtest
