#include <doctest.h>

#include "pw/corpus.hpp"
#include "pw/executor.hpp"
#include "pw/text_format.hpp"
#include "support.hpp"

using namespace pwtest;

namespace {

Nfioa det_admin(const char* name = "D") { return parse_document(example_text("det_admin")).automaton(name); }

}  // namespace

TEST_CASE("the deterministic administrator walks its full cycle") {
  const auto d = det_admin();
  auto sys = FiniteSystem::from_dfioa(d);
  CHECK(sys.time() == 0);
  CHECK(sys.state() == StateVector{"idle"});
  CHECK(sys.input().is_empty());

  struct Row {
    const char* input;
    const char* state;
    const char* output;
  };
  // Request, two timer rounds, the token, completion, a second request
  // served at once, then the timeout hands the token on.
  const Row rows[] = {
      {"in.req", "waiting", "trig.trigger"},   {"tmr_in.timeout", "waiting", "trig.trigger"},
      {"tok_in.token", "serving", "out.cf-req"}, {"tmr_in.timeout", "serving", "trig.trigger"},
      {"in.fin", "ready", "out.cf-fin"},        {"in.req", "serving", "out.cf-req"},
      {"in.fin", "ready", "out.cf-fin"},        {"tmr_in.timeout", "idle", "tok_out.token"},
  };
  std::vector<TraceEntry> trace;
  for (const auto& row : rows) {
    const auto before = sys.state();
    const auto e = sys.step(parse_vector_char(row.input, d.inputs()));
    CHECK(e.time == trace.size());
    CHECK(e.state == before);
    CHECK(e.next_state == StateVector{row.state});
    CHECK(to_string(e.output, d.outputs()) == row.output);
    CHECK(sys.output() == e.output);
    trace.push_back(e);
  }
  CHECK(sys.time() == 8);
  CHECK(sys.state() == StateVector{"idle"});
  CHECK(specifies(d, trace));
  CHECK(format_trace_line(d, trace[0]) == "0\tidle\tin.req\ttrig.trigger\twaiting");
}

TEST_CASE("only deterministic automata drive a finite system") {
  CHECK_THROWS_AS(FiniteSystem::from_dfioa(mutex_user()), PreconditionError);
  const auto twice = NfioaBuilder("N")
                         .states({"s", "t"})
                         .input("i", {"a"})
                         .final_states({"s"})
                         .transition("s", "s", "i.a", "-")
                         .transition("s", "t", "i.a", "-")
                         .build();
  CHECK_THROWS_AS(FiniteSystem::from_dfioa(twice), PreconditionError);
}

TEST_CASE("step rejects empty and undefined inputs") {
  const auto d = det_admin();
  auto sys = FiniteSystem::from_dfioa(d);
  CHECK_THROWS_AS(sys.step(VectorChar::empty(3)), PreconditionError);
  try {
    sys.step(parse_vector_char("in.fin", d.inputs()));
    FAIL("expected an undefined input");
  } catch (const PreconditionError& e) {
    const std::string what = e.what();
    CHECK(what.find("idle") != std::string::npos);
    CHECK(what.find("in.fin") != std::string::npos);
  }
  // A failed step leaves the system untouched.
  CHECK(sys.time() == 0);
  CHECK(sys.defined_inputs().size() == 2);
}

TEST_CASE("a one-state loop reading a and writing b") {
  const auto a = NfioaBuilder("L")
                     .states({"s"})
                     .input("i", {"a"})
                     .output("o", {"b"})
                     .final_states({"s"})
                     .transition("s", "s", "i.a", "o.b")
                     .build();
  auto sys = FiniteSystem::from_dfioa(a);
  std::vector<TraceEntry> trace;
  for (int i = 0; i < 5; ++i) trace.push_back(sys.step(VectorChar::unit(1, 0, Symbol("a"))));
  CHECK(sys.time() == 5);
  CHECK(sys.output() == VectorChar::unit(1, 0, Symbol("b")));
  CHECK(specifies(a, trace));
}

TEST_CASE("specifies rejects traces that the automaton cannot produce") {
  const auto d = det_admin();
  CHECK(specifies(d, {}));
  auto sys = FiniteSystem::from_dfioa(d);
  std::vector<TraceEntry> trace;
  Gen g(11);
  for (int i = 0; i < 30; ++i) {
    const auto options = sys.defined_inputs();
    trace.push_back(sys.step(options[g.below(options.size())]));
  }
  REQUIRE(specifies(d, trace));

  SUBCASE("wrong output") {
    auto bad = trace;
    bad[4].output = VectorChar::empty(3);
    CHECK_FALSE(specifies(d, bad));
  }
  SUBCASE("broken chaining") {
    auto bad = trace;
    bad.erase(bad.begin() + 3);
    for (std::size_t i = 3; i < bad.size(); ++i) bad[i].time = i;
    // Removing a step only goes unnoticed if it was a self-loop.
    if (trace[3].state != trace[3].next_state) CHECK_FALSE(specifies(d, bad));
  }
  SUBCASE("wrong start") {
    auto bad = std::vector<TraceEntry>(trace.begin() + 1, trace.end());
    for (std::size_t i = 0; i < bad.size(); ++i) bad[i].time = i;
    if (trace[0].next_state != d.initial()) CHECK_FALSE(specifies(d, bad));
  }
  SUBCASE("time must advance by one") {
    auto bad = trace;
    bad[2].time = 7;
    CHECK_FALSE(specifies(d, bad));
  }
  SUBCASE("the mutant lacks the completion grant") {
    bool uses_grant = false;
    for (const auto& e : trace) uses_grant = uses_grant || e.state == StateVector{"serving"};
    if (uses_grant) CHECK_FALSE(specifies(det_admin("D_mutant"), trace));
  }
}
