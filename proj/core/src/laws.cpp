#include <algorithm>
#include <random>

#include "pw/analysis.hpp"
#include "pw/composition.hpp"

namespace pw {

namespace {

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

Symbol pool_character(std::size_t i) { return Symbol("x" + std::to_string(i)); }

std::set<Symbol> random_subset(Rng& rng, std::size_t pool, std::size_t max) {
  const std::size_t n = uniform(rng, 1, std::min(pool, max));
  std::vector<std::size_t> idx(pool);
  for (std::size_t i = 0; i < pool; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  std::set<Symbol> out;
  for (std::size_t i = 0; i < n; ++i) out.insert(pool_character(idx[i]));
  return out;
}

VectorChar random_char(Rng& rng, const std::vector<ComponentAlphabet>& alpha, double empty) {
  if (alpha.empty() || chance(rng, empty)) return VectorChar::empty(alpha.size());
  const std::size_t k = uniform(rng, 0, alpha.size() - 1);
  const auto& chars = alpha[k].characters;
  auto it = chars.begin();
  std::advance(it, static_cast<std::ptrdiff_t>(uniform(rng, 0, chars.size() - 1)));
  return VectorChar::unit(alpha.size(), k, *it);
}

/// Enlarges input alphabets so that every channel satisfies O_k subset I_l.
Nfioa force_inclusion(const Nfioa& a, std::span<const Channel> channels) {
  Signature sig = a.signature();
  for (const auto& ch : channels) {
    const auto& o = sig.outputs.at(ch.out_component).characters;
    sig.inputs.at(ch.in_component).characters.insert(o.begin(), o.end());
  }
  const auto ts = a.transitions();
  return Nfioa(std::move(sig), {ts.begin(), ts.end()});
}

/// Two distinct-component channels over `a`.
std::vector<Channel> random_channels(Rng& rng, const Nfioa& a, std::size_t count) {
  std::vector<std::size_t> outs(a.outputs().size()), ins(a.inputs().size());
  for (std::size_t i = 0; i < outs.size(); ++i) outs[i] = i;
  for (std::size_t i = 0; i < ins.size(); ++i) ins[i] = i;
  std::shuffle(outs.begin(), outs.end(), rng);
  std::shuffle(ins.begin(), ins.end(), rng);
  std::vector<Channel> out;
  for (std::size_t i = 0; i < std::min({count, outs.size(), ins.size()}); ++i) {
    out.push_back(Channel{outs[i], ins[i], "c" + std::to_string(i)});
  }
  return out;
}

StatePattern random_state_pattern(Rng& rng, const Nfioa& a) {
  StatePattern p(a.dimension());
  const auto& blocks = a.states().blocks();
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.width; ++i) {
      if (!chance(rng, 0.5)) continue;
      auto it = b.values.begin();
      std::advance(it, static_cast<std::ptrdiff_t>(uniform(rng, 0, b.values.size() - 1)));
      p[b.offset + i] = (*it)[i];
    }
  }
  return p;
}

CharPattern random_char_pattern(Rng& rng, const std::vector<ComponentAlphabet>& alpha) {
  switch (uniform(rng, 0, 3)) {
    case 0: return CharPattern::any();
    case 1: return CharPattern::spontaneous();
    case 2: return alpha.empty() ? CharPattern::any() : CharPattern::on(uniform(rng, 0, alpha.size() - 1));
    default: {
      if (alpha.empty()) return CharPattern::spontaneous();
      const VectorChar c = random_char(rng, alpha, 0.0);
      return CharPattern::literal(*c.active_component(), c.active_character());
    }
  }
}

std::vector<Condition> random_conditions(Rng& rng, const Nfioa& a, std::size_t count) {
  std::vector<Condition> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(Condition{"e" + std::to_string(i), random_state_pattern(rng, a), random_state_pattern(rng, a),
                            random_char_pattern(rng, a.inputs()), random_char_pattern(rng, a.outputs()), std::nullopt});
  }
  return out;
}

RandomParams params(Rng& rng, std::string name, std::size_t ins, std::size_t outs) {
  RandomParams p;
  p.states = uniform(rng, 2, 6);
  p.input_components = ins;
  p.output_components = outs;
  p.name = std::move(name);
  return p;
}

Nfioa widen_input(const Nfioa& a, std::size_t in, const std::set<Symbol>& chars) {
  Signature sig = a.signature();
  sig.inputs.at(in).characters.insert(chars.begin(), chars.end());
  const auto ts = a.transitions();
  return Nfioa(std::move(sig), {ts.begin(), ts.end()});
}

/// Two roles wired both ways: role 0's output feeds role 1's input and back.
std::pair<std::vector<Nfioa>, std::vector<Channel>> random_protocol(Rng& rng, const std::string& a,
                                                                    const std::string& b) {
  Nfioa x = random_nfioa(rng(), params(rng, a, 1, 1));
  Nfioa y = random_nfioa(rng(), params(rng, b, 1, 1));
  y = widen_input(y, 0, x.outputs()[0].characters);
  x = widen_input(x, 0, y.outputs()[0].characters);
  // Numbering in the role product: outputs (x, y), inputs (x, y).
  return {{x, y}, {Channel{0, 1, a + ">" + b}, Channel{1, 0, b + ">" + a}}};
}

LawResult compare(const Nfioa& lhs, const Nfioa& rhs, const char* what) {
  if (auto d = flattened_difference(lhs, rhs)) return {LawOutcome::Fails, std::string(what) + ": " + *d};
  return {};
}

std::vector<Channel> shifted(std::span<const Channel> cs, std::size_t outs, std::size_t ins) {
  std::vector<Channel> out;
  for (auto c : cs) {
    c.out_component += outs;
    c.in_component += ins;
    out.push_back(std::move(c));
  }
  return out;
}

LawResult check(const CbrCommuteInstance& x, const Limits& limits) {
  if (x.first.out_component == x.second.out_component || x.first.in_component == x.second.in_component) {
    return {LawOutcome::NotApplicable, "channels share a component"};
  }
  const Channel one[] = {x.first};
  const Channel two[] = {x.second};
  const Channel both[] = {x.first, x.second};
  const auto nested_12 = cbr(cbr(x.a, two, limits), one, limits);
  const auto nested_21 = cbr(cbr(x.a, one, limits), two, limits);
  const auto joint = cbr(x.a, both, limits);
  if (auto r = compare(flatten(nested_12), flatten(nested_21), "order of application"); r.outcome != LawOutcome::Holds) {
    return r;
  }
  return compare(flatten(nested_12), flatten(joint), "nested versus joint");
}

LawResult check(const RestrProductInstance& x, const Limits& limits) {
  const Nfioa pair[] = {x.a, x.b};
  const Composite ab = weak_product(std::span<const Nfioa>(pair), limits);
  const auto lifted = shifted(x.channels, x.a.outputs().size(), x.a.inputs().size());
  const RestrictedAutomaton factors[] = {as_restricted(x.a, limits), cbr(x.b, x.channels, limits)};
  const auto lhs = cbr(ab.automaton, lifted, limits);
  const auto rhs = restricted_product(factors, limits);
  return compare(flatten(lhs), flatten(rhs), "restriction inside versus outside the product");
}

LawResult check(const ProtocolProductInstance& x, const Limits& limits) {
  const Composite p1 = weak_product(std::span<const Nfioa>(x.roles1), limits);
  const Composite p2 = weak_product(std::span<const Nfioa>(x.roles2), limits);
  const RestrictedAutomaton protocols[] = {cbr(p1.automaton, x.channels1, limits),
                                           cbr(p2.automaton, x.channels2, limits)};
  for (const auto& p : protocols) {
    if (!is_protocol(p)) return {LawOutcome::NotApplicable, "factor '" + p.base().name() + "' has open components"};
  }
  std::vector<Nfioa> roles = x.roles1;
  roles.insert(roles.end(), x.roles2.begin(), x.roles2.end());
  const Composite all = weak_product(std::span<const Nfioa>(roles), limits);
  auto channels = x.channels1;
  for (auto& c : shifted(x.channels2, p1.automaton.outputs().size(), p1.automaton.inputs().size())) {
    channels.push_back(std::move(c));
  }
  const auto lhs = cbr(all.automaton, channels, limits);
  if (!is_protocol(lhs)) return {LawOutcome::Fails, "united restriction has open components"};
  return compare(flatten(lhs), flatten(restricted_product(protocols, limits)), "united restriction versus product");
}

LawResult check(const ChannelConditionInstance& x, const Limits& limits) {
  const auto lhs = cond(cbr(x.a, x.channels, limits), x.conditions, limits);
  const auto rhs = cbr(cond(x.a, x.conditions), x.channels, limits);
  return compare(flatten(lhs), flatten(rhs), "condition after versus before channels");
}

LawResult check(const SeparationInstance& x, const Limits& limits) {
  if (x.left.empty() || x.right.empty()) return {LawOutcome::NotApplicable, "both protocols need roles"};
  for (const auto& e : x.conditions) {
    if (e.matches_stutter()) {
      return {LawOutcome::NotApplicable, "condition '" + e.name + "' can match steps of uncoordinated roles"};
    }
  }
  const Composite p1 = weak_product(std::span<const Nfioa>(x.left), limits);
  const Composite p2 = weak_product(std::span<const Nfioa>(x.right), limits);
  const RestrictedAutomaton protocols[] = {cbr(p1.automaton, x.left_channels, limits),
                                           cbr(p2.automaton, x.right_channels, limits)};
  const Nfioa& an = x.left.back();
  const Nfioa& b1 = x.right.front();
  const std::size_t dim = p1.automaton.dimension() + p2.automaton.dimension();
  const Slice states{p1.automaton.dimension() - an.dimension(), an.dimension() + b1.dimension()};
  const Slice inputs{p1.automaton.inputs().size() - an.inputs().size(), an.inputs().size() + b1.inputs().size()};
  const Slice outputs{p1.automaton.outputs().size() - an.outputs().size(), an.outputs().size() + b1.outputs().size()};
  std::vector<Condition> global;
  for (const auto& e : x.conditions) global.push_back(shift(e, dim, states, inputs, outputs));
  const auto lhs = cond(restricted_product(protocols, limits), global, limits);

  const Nfioa coordinated[] = {an, b1};
  Composite middle = weak_product(std::span<const Nfioa>(coordinated), limits);
  middle.automaton = cond(middle.automaton, x.conditions);
  std::vector<Composite> parts;
  for (std::size_t i = 0; i + 1 < x.left.size(); ++i) parts.push_back({x.left[i], ProductIndex::single(x.left[i])});
  parts.push_back(middle);
  for (std::size_t i = 1; i < x.right.size(); ++i) parts.push_back({x.right[i], ProductIndex::single(x.right[i])});
  Composite regrouped = weak_product(std::span<const Composite>(parts), limits);
  std::vector<std::vector<std::size_t>> flat;
  for (std::size_t leaf = 0; leaf < regrouped.index.leaf_count(); ++leaf) flat.push_back({leaf});
  regrouped = associate(regrouped, flat);
  auto channels = x.left_channels;
  for (auto& c : shifted(x.right_channels, p1.automaton.outputs().size(), p1.automaton.inputs().size())) {
    channels.push_back(std::move(c));
  }
  const auto rhs = cbr(regrouped.automaton, channels, limits);
  return compare(flatten(lhs), flatten(rhs), "global versus separated condition");
}

}  // namespace

Nfioa random_nfioa(std::uint64_t seed, const RandomParams& p) {
  Rng rng(seed);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < std::max<std::size_t>(p.states, 1); ++i) names.push_back(p.name + std::to_string(i));

  NfioaBuilder b(p.name);
  b.states(names).initial(names.front());
  for (std::size_t k = 0; k < p.input_components; ++k) {
    std::vector<std::string> chars;
    for (Symbol c : random_subset(rng, p.max_characters, p.max_characters)) chars.emplace_back(c.name());
    b.input("i" + std::to_string(k), chars);
  }
  for (std::size_t k = 0; k < p.output_components; ++k) {
    std::vector<std::string> chars;
    for (Symbol c : random_subset(rng, p.max_characters, p.max_characters)) chars.emplace_back(c.name());
    b.output("o" + std::to_string(k), chars);
  }
  std::vector<std::string> accepting;
  for (const auto& n : names) {
    if (chance(rng, 0.5)) accepting.push_back(n);
  }
  if (accepting.empty()) accepting.push_back(names.front());
  b.muller_set(accepting);
  const Nfioa shape = b.build();

  std::vector<Transition> ts;
  for (const auto& from : names) {
    for (const auto& to : names) {
      // Up to two parallel transitions per pair keep nondeterminism common.
      for (int rep = 0; rep < 2; ++rep) {
        if (!chance(rng, p.density)) continue;
        ts.push_back(Transition{StateVector{from}, StateVector{to}, random_char(rng, shape.inputs(), p.spontaneous),
                                random_char(rng, shape.outputs(), p.silent)});
      }
    }
  }
  return shape.with_transitions(std::move(ts));
}

namespace {

constexpr Law kLaws[] = {Law::CbrCommute, Law::RestrProductCommute, Law::ProtocolProduct,
                         Law::ChannelConditionCommute, Law::Separation};

}  // namespace

std::span<const Law> all_laws() { return kLaws; }

std::string_view law_name(Law law) {
  switch (law) {
    case Law::CbrCommute: return "cbr-commute";
    case Law::RestrProductCommute: return "restr-product-commute";
    case Law::ProtocolProduct: return "protocol-product";
    case Law::ChannelConditionCommute: return "channel-condition-commute";
    case Law::Separation: return "separation";
  }
  return "?";
}

std::optional<Law> parse_law(std::string_view name) {
  for (Law l : kLaws) {
    if (law_name(l) == name) return l;
  }
  return std::nullopt;
}

LawResult check_law(const LawInstance& instance, const Limits& limits) {
  try {
    return std::visit([&](const auto& x) { return check(x, limits); }, instance);
  } catch (const PreconditionError& e) {
    return {LawOutcome::NotApplicable, e.what()};
  }
}

LawInstance random_instance(Law law, std::uint64_t seed) {
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(law));
  switch (law) {
    case Law::CbrCommute: {
      Nfioa a = random_nfioa(rng(), params(rng, "a", uniform(rng, 2, 3), uniform(rng, 2, 3)));
      auto chs = random_channels(rng, a, 2);
      a = force_inclusion(a, chs);
      return CbrCommuteInstance{a, chs[0], chs[1]};
    }
    case Law::RestrProductCommute: {
      Nfioa a = random_nfioa(rng(), params(rng, "a", uniform(rng, 1, 2), uniform(rng, 1, 2)));
      Nfioa b = random_nfioa(rng(), params(rng, "b", 2, 2));
      auto chs = random_channels(rng, b, uniform(rng, 1, 2));
      b = force_inclusion(b, chs);
      return RestrProductInstance{a, b, chs};
    }
    case Law::ProtocolProduct: {
      auto [r1, c1] = random_protocol(rng, "a", "b");
      auto [r2, c2] = random_protocol(rng, "c", "d");
      return ProtocolProductInstance{r1, c1, r2, c2};
    }
    case Law::ChannelConditionCommute: {
      Nfioa a = random_nfioa(rng(), params(rng, "a", uniform(rng, 1, 3), uniform(rng, 1, 3)));
      auto chs = random_channels(rng, a, uniform(rng, 1, 2));
      a = force_inclusion(a, chs);
      return ChannelConditionInstance{a, chs, random_conditions(rng, a, uniform(rng, 1, 3))};
    }
    case Law::Separation: {
      auto [left, lc] = random_protocol(rng, "a", "b");
      auto [right, rc] = random_protocol(rng, "c", "d");
      const Nfioa pair[] = {left.back(), right.front()};
      const Nfioa coordinated = weak_product(std::span<const Nfioa>(pair)).automaton;
      auto conditions = random_conditions(rng, coordinated, uniform(rng, 1, 3));
      for (auto& e : conditions) {
        // Confine each condition to steps of the coordinated roles.
        if (e.matches_stutter()) e.input = CharPattern::on(uniform(rng, 0, coordinated.inputs().size() - 1));
      }
      return SeparationInstance{left, lc, right, rc, conditions};
    }
  }
  throw PreconditionError("unknown law");
}

LawSuiteReport run_law_suite(Law law, std::size_t seeds, std::uint64_t first_seed) {
  LawSuiteReport report;
  report.law = law;
  for (std::uint64_t s = first_seed; s < first_seed + seeds; ++s) {
    const LawResult r = check_law(random_instance(law, s));
    switch (r.outcome) {
      case LawOutcome::Holds: ++report.holds; break;
      case LawOutcome::NotApplicable: ++report.not_applicable; break;
      case LawOutcome::Fails:
        ++report.fails;
        if (!report.first_failing_seed) {
          report.first_failing_seed = s;
          report.first_failure = r.detail;
        }
        break;
    }
  }
  return report;
}

}  // namespace pw
