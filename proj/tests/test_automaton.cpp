#include <doctest.h>

#include "support.hpp"

using namespace pwtest;

TEST_CASE("symbols intern by text and order lexicographically") {
  const Symbol a("alpha"), a2("alpha"), b("beta");
  CHECK(a == a2);
  CHECK(a != b);
  CHECK(a < b);
  CHECK(Symbol() == Symbol::epsilon());
  CHECK(Symbol().name() == "-");
  CHECK_THROWS_AS(Symbol(""), Error);
  CHECK_THROWS_AS(Symbol("-"), Error);
}

TEST_CASE("vector characters have at most one active component") {
  const auto c = VectorChar::unit(3, 1, Symbol("x"));
  CHECK(c.width() == 3);
  CHECK(c.non_empty_count() == 1);
  CHECK(c.active_component() == 1u);
  CHECK(c.active_character() == Symbol("x"));
  CHECK(VectorChar::empty(2).is_empty());
  CHECK_FALSE(VectorChar::empty(2).active_component());
}

TEST_CASE("parse and render vector characters") {
  const auto u = mutex_user();
  const auto c = parse_vector_char("out.req", u.outputs());
  CHECK(c == VectorChar::unit(1, 0, Symbol("req")));
  CHECK(to_string(c, u.outputs()) == "out.req");
  CHECK(to_string(VectorChar::empty(1), u.outputs()) == "-");
  CHECK_THROWS_AS(parse_vector_char("nowhere.req", u.outputs()), Error);
}

TEST_CASE("the mutex roles validate and classify") {
  for (const auto& a : {mutex_user(), mutex_admin()}) {
    CHECK(validate(a).empty());
    const auto cls = classify(a);
    CHECK(cls.has_spontaneous);
    CHECK(cls.is_function);
    CHECK_FALSE(cls.is_deterministic);
    CHECK(reachable_states(a).size() == 4);
  }
}

TEST_CASE("a one-state loop reading a and writing b is deterministic") {
  const auto a = NfioaBuilder("L")
                     .states({"s"})
                     .input("i", {"a"})
                     .output("o", {"b"})
                     .final_states({"s"})
                     .transition("s", "s", "i.a", "o.b")
                     .build();
  const auto cls = classify(a);
  CHECK(cls.is_deterministic);
  CHECK_FALSE(cls.has_spontaneous);
}

TEST_CASE("validate reports each broken invariant") {
  const auto good = mutex_user();
  SUBCASE("unknown target state") {
    Signature sig = good.signature();
    std::vector<Transition> ts(good.transitions().begin(), good.transitions().end());
    ts.push_back({StateVector{"remn"}, StateVector{"nowhere"}, VectorChar::empty(1), VectorChar::empty(1)});
    const auto d = validate(Nfioa(sig, ts));
    REQUIRE_FALSE(d.empty());
    CHECK(d.front().kind == Diagnostic::Kind::UnknownState);
  }
  SUBCASE("character outside the alphabet") {
    std::vector<Transition> ts{{StateVector{"remn"}, StateVector{"try"}, VectorChar::empty(1),
                                VectorChar::unit(1, 0, Symbol("bogus"))}};
    const auto d = validate(Nfioa(good.signature(), ts));
    REQUIRE_FALSE(d.empty());
    CHECK(d.front().kind == Diagnostic::Kind::UnknownCharacter);
  }
  SUBCASE("two active components") {
    Signature sig = good.signature();
    sig.inputs.push_back({"extra", {Symbol("z")}});
    VectorChar both({Symbol("cf-req"), Symbol("z")});
    std::vector<Transition> ts{{StateVector{"remn"}, StateVector{"try"}, both, VectorChar::empty(1)}};
    const auto d = validate(Nfioa(sig, ts));
    REQUIRE_FALSE(d.empty());
    CHECK(d.front().kind == Diagnostic::Kind::MultiComponentCharacter);
  }
  SUBCASE("classify refuses an invalid automaton") {
    Signature sig = good.signature();
    sig.initial = StateVector{"nowhere"};
    CHECK_THROWS_AS(classify(Nfioa(sig, {})), PreconditionError);
  }
}

TEST_CASE("prune_unreachable keeps the initial component only") {
  auto a = NfioaBuilder("P")
               .states({"a", "b", "c"})
               .final_states({"a"})
               .transition("a", "b", "-", "-")
               .transition("c", "a", "-", "-")
               .build();
  const auto p = prune_unreachable(a);
  CHECK(reachable_states(p).size() == 2);
  CHECK(p.transitions().size() == 1);
  CHECK(p.states().size() == 2);
}

TEST_CASE("projection onto nothing collapses the user to one state") {
  const auto u = mutex_user();
  const auto p = Projection::keep(u, {}, {}, {});
  const auto image = project(u, p);
  CHECK(reachable_states(image).size() == 1);
  const auto id = project(u, Projection::identity(u));
  CHECK(flattened_equal(id, u));
}

TEST_CASE("componentwise maps must be idempotent") {
  const auto u = mutex_user();
  // try -> crit and crit -> exit is not idempotent.
  Projection p = Projection::identity(u);
  p.state_maps[0] = ComponentMap::table({{Symbol("try"), Symbol("crit")}, {Symbol("crit"), Symbol("exit")}});
  CHECK_THROWS_AS(project(u, p), PreconditionError);
  p.state_maps[0] = ComponentMap::table({{Symbol("try"), Symbol("crit")}});
  const auto image = project(u, p);
  CHECK(reachable_states(image).size() == 3);
}

TEST_CASE("flattened_difference names what differs") {
  const auto u = mutex_user();
  CHECK_FALSE(flattened_difference(u, u));
  std::vector<Transition> fewer(u.transitions().begin(), u.transitions().end() - 1);
  const auto d = flattened_difference(u, u.with_transitions(fewer));
  REQUIRE(d);
  CHECK_FALSE(d->empty());
  CHECK(flattened_difference(u, mutex_admin()));
}

TEST_CASE("state spaces compare structurally and by enumeration") {
  const StateSpace s({StateVector{"a"}, StateVector{"b"}}, 1);
  const StateSpace t({StateVector{"b"}, StateVector{"a"}}, 1);
  CHECK(s == t);
  CHECK(s.size() == 2);
  CHECK(s.contains(StateVector{"a"}));
  CHECK_FALSE(s.contains(StateVector{"c"}));
}
