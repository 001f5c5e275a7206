#include <doctest.h>

#include "support.hpp"

using namespace pwtest;

namespace {

struct Mutex {
  Composite product;
  std::vector<Channel> channels;
  RestrictedAutomaton closed;
};

// Product numbering: inputs [U.in, C.in], outputs [U.out, C.out].
Mutex closed_mutex() {
  const Nfioa roles[] = {mutex_user(), mutex_admin()};
  Mutex m;
  m.product = weak_product(roles);
  m.channels = {Channel{0, 1, "u>c"}, Channel{1, 0, "c>u"}};
  m.closed = cbr(m.product.automaton, m.channels);
  return m;
}

}  // namespace

TEST_CASE("closed mutex: eight configurations on a single cycle") {
  const auto m = closed_mutex();
  const auto& r = m.closed;
  REQUIRE(r.config_count() == 8);
  // Derived by hand from the role cycles: each send is consumed at once.
  const std::vector<std::string> expected{
      "(remn,remn|-)", "(try,remn|req)",  "(try,try|-)",  "(try,crit|cf-req)",
      "(crit,crit|-)", "(exit,crit|fin)", "(exit,exit|-)", "(exit,remn|cf-fin)"};
  std::uint32_t at = 0;
  for (std::size_t step = 0; step < 8; ++step) {
    CHECK(to_string(r.config(at)) == expected[step]);
    REQUIRE(r.edges(at).size() == 1);
    at = r.edges(at)[0].target;
  }
  CHECK(at == 0);
  CHECK(r.edge_count() == 8);
}

TEST_CASE("closed mutex is a well-formed, consistent protocol") {
  const auto m = closed_mutex();
  CHECK(is_well_formed(m.closed));
  CHECK(is_consistent(m.closed));
  CHECK(is_protocol(m.closed));
  const auto open = open_components(m.product.automaton, m.channels);
  CHECK(open.inputs.empty());
  CHECK(open.outputs.empty());
}

TEST_CASE("a user without its administrator has open components") {
  const Nfioa roles[] = {mutex_user(), mutex_admin()};
  const auto p = weak_product(roles);
  const Channel one[] = {Channel{0, 1, ""}};
  const auto half = cbr(p.automaton, one);
  CHECK_FALSE(is_protocol(half));
  const auto open = open_components(p.automaton, one);
  CHECK(open.inputs == std::vector<std::size_t>{0});
  CHECK(open.outputs == std::vector<std::size_t>{1});
}

TEST_CASE("deleting the administrator's fin reception breaks well-formedness") {
  const auto c = mutex_admin();
  std::vector<Transition> ts;
  for (const auto& t : c.transitions()) {
    if (t.input.active_character() != Symbol("fin")) ts.push_back(t);
  }
  const Nfioa roles[] = {mutex_user(), c.with_transitions(ts)};
  const auto p = weak_product(roles);
  const Channel chans[] = {Channel{0, 1, ""}, Channel{1, 0, ""}};
  const auto r = cbr(p.automaton, chans);
  const auto w = is_well_formed(r);
  REQUIRE_FALSE(w);
  REQUIRE(w.witness);
  CHECK(to_string(r.config(*w.witness)) == "(exit,crit|fin)");
  CHECK_THROWS_AS(is_consistent(r), PreconditionError);
}

TEST_CASE("a livelock makes the graph inconsistent") {
  // Muller acceptance demands {a, b} to recur, but from c only c recurs.
  const auto a = NfioaBuilder("L")
                     .states({"a", "b", "c"})
                     .muller_set({"a", "b"})
                     .transition("a", "b", "-", "-")
                     .transition("b", "a", "-", "-")
                     .transition("b", "c", "-", "-")
                     .transition("c", "c", "-", "-")
                     .build();
  const auto r = as_restricted(a);
  const auto c = is_consistent(r);
  REQUIRE_FALSE(c);
  REQUIRE(c.witness);
  CHECK(r.config(*c.witness).state == StateVector{"c"});
}

TEST_CASE("final-state acceptance: a dead end before any final state is inconsistent") {
  const auto a = NfioaBuilder("F")
                     .states({"a", "b", "c"})
                     .final_states({"c"})
                     .transition("a", "b", "-", "-")
                     .transition("a", "c", "-", "-")
                     .build();
  const auto c = is_consistent(as_restricted(a));
  REQUIRE_FALSE(c);
  CHECK(as_restricted(a).config(*c.witness).state == StateVector{"b"});
}

TEST_CASE("cbr agrees with the definition on random automata") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    Gen g(seed);
    const auto raw = gen_automaton(g, "q", g.between(1, 3), g.between(1, 3));
    const auto [a, chans] = gen_channels(g, raw, g.between(1, 2));
    const auto r = cbr(a, chans);
    CHECK_MESSAGE(graph_sets(r) == oracle_cbr(a, chans), "seed " << seed);
    CHECK(r.config(0) == Configuration{a.initial(), std::nullopt});
  }
}

TEST_CASE("channel preconditions") {
  const Nfioa roles[] = {mutex_user(), mutex_admin()};
  const auto p = weak_product(roles).automaton;
  SUBCASE("inclusion") {
    // U.out carries req and fin; U.in only takes cf-req and cf-fin.
    const Channel bad[] = {Channel{0, 0, ""}};
    CHECK_THROWS_AS(check_channels(p, bad), PreconditionError);
    CHECK_THROWS_AS(cbr(p, bad), PreconditionError);
  }
  SUBCASE("distinct components") {
    const Channel twice[] = {Channel{0, 1, ""}, Channel{0, 1, "again"}};
    CHECK_THROWS_AS(cbr(p, twice), PreconditionError);
  }
  SUBCASE("out of range") {
    const Channel far[] = {Channel{5, 1, ""}};
    CHECK_THROWS_AS(cbr(p, far), PreconditionError);
  }
}

TEST_CASE("restriction in stages equals restriction at once on the mutex") {
  const auto m = closed_mutex();
  const Channel first[] = {m.channels[0]};
  const Channel second[] = {m.channels[1]};
  const auto staged = cbr(cbr(m.product.automaton, first), second);
  CHECK(flattened_equal(flatten(staged), flatten(m.closed)));
  CHECK(staged.config_count() == 8);
}

TEST_CASE("restricted product of the mutex with an unrelated ring role") {
  const auto m = closed_mutex();
  const auto t = NfioaBuilder("T")
                     .states({"wait", "triggered"})
                     .input("in", {"trigger"})
                     .output("out", {"timeout"})
                     .muller_set({"wait", "triggered"})
                     .transition("wait", "triggered", "in.trigger", "-")
                     .transition("triggered", "wait", "-", "out.timeout")
                     .build();
  const RestrictedAutomaton factors[] = {m.closed, as_restricted(t)};
  const auto p = restricted_product(factors);
  // Relaxed mutex configurations combine with both timer states; excited
  // ones freeze the timer.
  CHECK(p.config_count() == 4 * 2 + 4 * 1 + 4);
  for (std::uint32_t i = 0; i < p.config_count(); ++i) {
    if (!p.config(i).excited()) continue;
    for (const auto& e : p.edges(i)) CHECK(p.transition(e).source[2] == p.transition(e).target[2]);
  }
}

TEST_CASE("every closed-mutex edge fits exactly one class") {
  const auto m = closed_mutex();
  const auto rows = transition_classes();
  CHECK(rows.size() == 9);
  std::set<std::size_t> used;
  for (std::uint32_t i = 0; i < m.closed.config_count(); ++i) {
    for (const auto& e : m.closed.edges(i)) {
      const auto row = classify_edge(m.closed, i, e);
      REQUIRE(row);
      used.insert(*row);
    }
  }
  // Spontaneous send into a channel, and channel reception without output.
  CHECK(used == std::set<std::size_t>{1, 6});
  CHECK(to_string(rows[1]) == "relaxed | empty | channel | excited");
}

TEST_CASE("configuration queries") {
  const auto m = closed_mutex();
  const auto& r = m.closed;
  CHECK(classify_config(r, r.config(0)) == Excitation::Relaxed);
  CHECK(classify_config(r, r.config(1)) == Excitation::Excited);
  CHECK(enabled(r, r.config(0)).size() == 1);
  CHECK_THROWS_AS(classify_config(r, Configuration{StateVector{"crit", "remn"}, std::nullopt}), PreconditionError);
  CHECK_THROWS_AS(enabled(r, Configuration{StateVector{"crit", "remn"}, std::nullopt}), PreconditionError);
  CHECK(r.find(r.config(3)) == 3u);
}

TEST_CASE("runs") {
  const auto m = closed_mutex();
  SUBCASE("a cycle has one run per bound") {
    const auto runs = run(m.closed, ExhaustiveScheduler{}, 20);
    REQUIRE(runs.size() == 1);
    CHECK(runs[0].transitions.size() == 20);
    CHECK(runs[0].configs.size() == 21);
    CHECK(runs[0].configs[8] == 0);
  }
  SUBCASE("random runs are reproducible per seed") {
    Gen g(3);
    const auto raw = gen_automaton(g, "q", 1, 1);
    const auto r = as_restricted(raw);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto a = run(r, RandomScheduler{seed}, 30);
      const auto b = run(r, RandomScheduler{seed}, 30);
      REQUIRE(a.size() == 1);
      CHECK(a[0].configs == b[0].configs);
    }
  }
  SUBCASE("exhaustive runs enumerate every branch") {
    const auto a = NfioaBuilder("B")
                       .states({"s", "l", "r"})
                       .final_states({"s"})
                       .transition("s", "l", "-", "-")
                       .transition("s", "r", "-", "-")
                       .transition("l", "s", "-", "-")
                       .build();
    const auto runs = run(as_restricted(a), ExhaustiveScheduler{}, 3);
    // s l s {l, r} and s r (dead end).
    CHECK(runs.size() == 3);
    // Two loops through s double the run count at every visit.
    const auto both = NfioaBuilder("D")
                          .states({"s", "l", "r"})
                          .final_states({"s"})
                          .transition("s", "l", "-", "-")
                          .transition("s", "r", "-", "-")
                          .transition("l", "s", "-", "-")
                          .transition("r", "s", "-", "-")
                          .build();
    CHECK(run(as_restricted(both), ExhaustiveScheduler{}, 6).size() == 8);
    CHECK_THROWS_AS(run(as_restricted(both), ExhaustiveScheduler{}, 40, 100), CapacityError);
    const auto scripted = run(as_restricted(a), ScriptedScheduler{{1}}, 10);
    REQUIRE(scripted.size() == 1);
    CHECK(scripted[0].transitions.size() == 1);
    CHECK(as_restricted(a).config(scripted[0].configs.back()).state == StateVector{"r"});
    CHECK_THROWS_AS(run(as_restricted(a), ScriptedScheduler{{7}}, 10), PreconditionError);
  }
}

TEST_CASE("exploration refuses graphs beyond the configured limit") {
  const auto m = closed_mutex();
  Limits tight;
  tight.max_states = 5;
  CHECK_THROWS_AS(cbr(m.product.automaton, m.channels, tight), CapacityError);
}
