#include <doctest.h>

#include <map>

#include "pw/corpus.hpp"
#include "pw/text_format.hpp"
#include "support.hpp"

using namespace pwtest;

namespace {

/// Event traces of length <= bound, from the configuration graph alone:
/// a trace is kept with the set of configurations it can end in, closed
/// under edges that send nothing on a channel.
std::set<EventTrace> oracle_language(const RestrictedAutomaton& r, std::size_t bound) {
  auto event = [&](const Transition& t) -> std::optional<Event> {
    for (std::size_t k = 0; k < t.output.width(); ++k) {
      if (t.output.components[k].is_epsilon()) continue;
      for (const auto& ch : r.channels()) {
        if (ch.out_component == k) return Event{ch.label, t.output.components[k]};
      }
    }
    return std::nullopt;
  };
  auto close = [&](std::set<std::uint32_t> s) {
    std::vector<std::uint32_t> work(s.begin(), s.end());
    while (!work.empty()) {
      const auto c = work.back();
      work.pop_back();
      for (const auto& e : r.edges(c)) {
        if (!event(r.transition(e)) && s.insert(e.target).second) work.push_back(e.target);
      }
    }
    return s;
  };
  std::set<EventTrace> out{{}};
  std::map<EventTrace, std::set<std::uint32_t>> frontier{{{}, close({0})}};
  for (std::size_t len = 0; len < bound; ++len) {
    std::map<EventTrace, std::set<std::uint32_t>> next;
    for (const auto& [trace, configs] : frontier) {
      for (auto c : configs) {
        for (const auto& e : r.edges(c)) {
          if (auto ev = event(r.transition(e))) {
            auto longer = trace;
            longer.push_back(*ev);
            next[longer].insert(e.target);
          }
        }
      }
    }
    frontier.clear();
    for (auto& [trace, configs] : next) {
      out.insert(trace);
      frontier.emplace(trace, close(configs));
    }
  }
  return out;
}

std::set<EventTrace> up_to(const std::set<EventTrace>& lang, std::size_t len) {
  std::set<EventTrace> out;
  for (const auto& t : lang) {
    if (t.size() <= len) out.insert(t);
  }
  return out;
}

RestrictedAutomaton closed_mutex(const Nfioa& user = mutex_user()) {
  const Nfioa roles[] = {user, mutex_admin()};
  const auto p = weak_product(roles);
  const Channel chans[] = {Channel{0, 1, "u>c"}, Channel{1, 0, "c>u"}};
  return cbr(p.automaton, chans);
}

BuiltNetwork mutex_network() { return build_network(parse_document(example_text("mutex")).network("closed_mutex")); }

}  // namespace

TEST_CASE("every law holds on a small seed range") {
  for (Law law : all_laws()) {
    const auto report = run_law_suite(law, 25);
    CHECK_MESSAGE(report.fails == 0, law_name(law) << ": " << report.first_failure);
    CHECK_MESSAGE(report.holds > 0, law_name(law));
    CHECK(report.holds + report.fails + report.not_applicable == 25);
  }
}

TEST_CASE("law names round-trip") {
  CHECK(all_laws().size() == 5);
  for (Law law : all_laws()) CHECK(parse_law(law_name(law)) == law);
  CHECK_FALSE(parse_law("no-such-law"));
}

TEST_CASE("random instances are reproducible and valid") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto a = random_nfioa(seed);
    CHECK(validate(a).empty());
    CHECK(flattened_equal(a, random_nfioa(seed)));
  }
  CHECK(flattened_difference(random_nfioa(1), random_nfioa(2)));
}

TEST_CASE("the comparison behind the laws is not vacuous") {
  // One channel versus two on the mutex: the flattenings must differ.
  const Nfioa roles[] = {mutex_user(), mutex_admin()};
  const auto p = weak_product(roles).automaton;
  const Channel one[] = {Channel{0, 1, ""}};
  const Channel both[] = {Channel{0, 1, ""}, Channel{1, 0, ""}};
  CHECK(flattened_difference(flatten(cbr(p, one)), flatten(cbr(p, both))));
  // Cross-checking a law instance against a perturbed one also differs.
  const auto x = std::get<CbrCommuteInstance>(random_instance(Law::CbrCommute, 3));
  const Channel first[] = {x.first};
  const Channel pair[] = {x.first, x.second};
  const auto a = cbr(x.a, first), b = cbr(x.a, pair);
  if (a.config_count() != b.config_count()) CHECK(flattened_difference(flatten(a), flatten(b)));
}

TEST_CASE("law side conditions yield not-applicable") {
  const Nfioa roles[] = {mutex_user(), mutex_admin()};
  const auto p = weak_product(roles).automaton;
  const LawInstance shared = CbrCommuteInstance{p, Channel{0, 1, ""}, Channel{0, 1, ""}};
  CHECK(check_law(shared).outcome == LawOutcome::NotApplicable);
  SeparationInstance s{{mutex_user()}, {}, {mutex_admin()}, {}, {}};
  s.conditions.push_back(Condition{"stutter", {}, {}, CharPattern::any(), CharPattern::any(), std::nullopt});
  CHECK(check_law(s).outcome == LawOutcome::NotApplicable);
  s.conditions.clear();
  CHECK(check_law(s).outcome == LawOutcome::Holds);
}

TEST_CASE("mutex and its separated conditions") {
  // Left protocol [U, C], right [U', C'], conditions over C (x) U'.
  const Nfioa left[] = {mutex_user(), mutex_admin()};
  const Nfioa right[] = {mutex_user("Up"), mutex_admin("Cp")};
  SeparationInstance s{{left[0], left[1]}, {{0, 1, "a"}, {1, 0, "b"}},
                       {right[0], right[1]}, {{0, 1, "c"}, {1, 0, "d"}}, {}};
  s.conditions.push_back(Condition{"no-double-crit", {}, {Symbol("crit"), Symbol("crit")}, CharPattern::any(),
                                   CharPattern::any(), std::nullopt});
  CHECK(check_law(s).outcome == LawOutcome::Holds);
}

TEST_CASE("trace equivalence agrees with the language oracle") {
  std::size_t equal = 0, different = 0;
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    Gen g(seed);
    const auto raw = gen_automaton(g, "q", 2, 2);
    const auto [a, chans] = gen_channels(g, raw, 2);
    // A sibling over the same signature: one transition removed.
    std::vector<Transition> ts(a.transitions().begin(), a.transitions().end());
    ts.erase(ts.begin() + static_cast<std::ptrdiff_t>(g.below(ts.size())));
    const auto ra = cbr(a, chans);
    const auto rb = cbr(a.with_transitions(ts), chans);
    const auto eq = trace_equivalent(ra, rb);
    if (eq.equivalent) {
      ++equal;
      const auto bound = std::min<std::size_t>(eq.sufficient_bound, 6);
      CHECK_MESSAGE(oracle_language(ra, bound) == oracle_language(rb, bound), "seed " << seed);
    } else {
      ++different;
      REQUIRE(eq.distinguishing);
      const auto len = eq.distinguishing->size();
      const auto la = oracle_language(ra, len), lb = oracle_language(rb, len);
      CHECK_MESSAGE(la.count(*eq.distinguishing) != lb.count(*eq.distinguishing), "seed " << seed);
      if (len > 0) CHECK_MESSAGE(up_to(la, len - 1) == up_to(lb, len - 1), "seed " << seed << " not shortest");
    }
    CHECK(trace_language(ra, 4) == oracle_language(ra, 4));
  }
  CHECK(equal > 0);
  CHECK(different > 0);
}

TEST_CASE("bounded equivalence reports incompleteness") {
  const auto m = closed_mutex();
  const auto full = trace_equivalent(m, m);
  CHECK(full.equivalent);
  CHECK(full.complete);
  CHECK(full.sufficient_bound > 0);
  const auto bounded = trace_equivalent(m, m, 2);
  CHECK(bounded.equivalent);
  CHECK_FALSE(bounded.complete);
  CHECK(event_alphabet(m).size() == 4);
  CHECK(to_string(EventTrace{Event{"u>c", Symbol("req")}, Event{"c>u", Symbol("cf-req")}}) == "[u>c:req, c>u:cf-req]");
}

TEST_CASE("a user that never finishes has a different trace language") {
  // U stops in crit: the fin event is never sent.
  const auto u = mutex_user();
  std::vector<Transition> ts;
  for (const auto& t : u.transitions()) {
    if (t.source != StateVector{"crit"}) ts.push_back(t);
  }
  const auto a = closed_mutex(), b = closed_mutex(u.with_transitions(ts));
  const auto eq = trace_equivalent(a, b);
  REQUIRE_FALSE(eq.equivalent);
  CHECK(to_string(*eq.distinguishing) == "[u>c:req, c>u:cf-req, u>c:fin]");
}

TEST_CASE("trace equivalence requires equal alphabets") {
  const auto m = closed_mutex();
  const auto bare = as_restricted(mutex_user());
  CHECK_THROWS_AS(trace_equivalent(m, bare), PreconditionError);
  CHECK_THROWS_AS(trace_language(m, 40, 3), CapacityError);
}

TEST_CASE("safety queries return shortest counterexamples") {
  const auto net = mutex_network();
  const auto& r = net.graph;
  const auto never = safety_query(r, parse_predicate("U@crit && C@remn", net));
  CHECK(never.ok);
  CHECK(never.explored == 8);
  const auto exit_reached = safety_query(r, parse_predicate("U@exit", net));
  REQUIRE_FALSE(exit_reached.ok);
  CHECK(exit_reached.path.size() == 6);
  CHECK(exit_reached.transitions.size() == 5);
  CHECK(exit_reached.path.front() == 0);
  CHECK(to_string(r.config(exit_reached.path.back())) == "(exit,crit|fin)");
  for (std::size_t i = 0; i + 1 < exit_reached.path.size(); ++i) {
    bool linked = false;
    for (const auto& e : r.edges(exit_reached.path[i])) {
      linked = linked || (e.target == exit_reached.path[i + 1] && e.transition == exit_reached.transitions[i]);
    }
    CHECK(linked);
  }
}

TEST_CASE("predicate language") {
  const auto net = mutex_network();
  const auto& r = net.graph;
  auto holds_at = [&](const char* text, std::uint32_t id) { return parse_predicate(text, net)(r.config(id)); };
  // Config 1 is (try,remn|req), config 3 is (try,crit|cf-req).
  CHECK(holds_at("U@try", 1));
  CHECK(holds_at("U@{crit,try}", 1));
  CHECK(holds_at("count(U@try, C@remn) == 2", 1));
  CHECK(holds_at("count(U*@try, C*@try) == 1", 1));
  CHECK(holds_at("count(U*@try, C*@try) == 2", 2));
  CHECK(holds_at("pending(req) == 1", 1));
  CHECK(holds_at("pending() == 1 && pending(cf-req) == 0", 1));
  CHECK(holds_at("pending(U.out>C.in:req) == 1", 1));
  CHECK(holds_at("pending(C.out>U.in:) == 1", 3));
  CHECK(holds_at("!(U@crit) || false", 0));
  CHECK(holds_at("1 + 2 - 3 == 0 && true", 0));
  CHECK(holds_at("count(U@remn) >= 1 && count(U@remn) <= 1 && 0 < 1 && 1 > 0 && 2 != 3", 0));
  CHECK_FALSE(holds_at("U@try", 0));
  CHECK_FALSE(holds_at("U@try && C@try", 1));

  CHECK_THROWS_AS(parse_predicate("Z@crit", net), ParseError);
  CHECK_THROWS_AS(parse_predicate("U@nowhere", net), ParseError);
  CHECK_THROWS_AS(parse_predicate("U@", net), ParseError);
  CHECK_THROWS_AS(parse_predicate("count(U@crit) >", net), ParseError);
  CHECK_THROWS_AS(parse_predicate("(U@crit", net), ParseError);
  CHECK_THROWS_AS(parse_predicate("U@crit extra", net), ParseError);
  CHECK_THROWS_AS(parse_predicate("pending(nolabel:req) == 1", net), ParseError);
  CHECK_THROWS_AS(parse_predicate("", net), ParseError);
  try {
    parse_predicate("U@crit && Z@crit", net);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 11);
  }
}

TEST_CASE("ring grants at different nodes are separated by a timeout and a hand-over") {
  const auto net = build_network(parse_document(example_text("ring2")).network(ring_network_name(2)));
  const auto lang = oracle_language(net.graph, 6);
  CHECK(lang == trace_language(net.graph, 6));
  auto grant_node = [](const Event& e) -> int {
    if (e.character != Symbol("cf-req")) return 0;
    return e.channel == "a1>u1" ? 1 : 2;
  };
  bool repeated_locally = false;
  for (const auto& t : lang) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!grant_node(t[i])) continue;
      bool timeout = false, handover = false;
      for (std::size_t j = i + 1; j < t.size(); ++j) {
        if (const int g = grant_node(t[j])) {
          if (g != grant_node(t[i])) CHECK_MESSAGE((timeout && handover), to_string(t));
          repeated_locally = repeated_locally || g == grant_node(t[i]);
          break;
        }
        timeout = timeout || t[j].channel.rfind("tmo", 0) == 0;
        handover = handover || t[j].channel.rfind("tok", 0) == 0;
      }
    }
  }
  // The token holder may grant again without handing the token on.
  CHECK(repeated_locally);
}
