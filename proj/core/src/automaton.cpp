#include "pw/automaton.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

#include "pw/error.hpp"

namespace pw {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) noexcept {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_symbols(const std::vector<Symbol>& v) noexcept {
  std::size_t h = v.size();
  for (Symbol s : v) h = mix(h, s.hash());
  return h;
}

Symbol symbol_or_epsilon(std::string_view name) {
  return name == kEpsilonText ? Symbol::epsilon() : Symbol(name);
}

// Is `part` (covering components [offset, offset + part.size())) the slice of
// some member of `space`?
bool slice_member(const StateSpace& space, std::size_t offset, const StateVector& part) {
  const std::size_t end = offset + part.size();
  if (end > space.dimension()) return false;
  for (const auto& block : space.blocks()) {
    const std::size_t lo = std::max(offset, block.offset);
    const std::size_t hi = std::min(end, block.offset + block.width);
    if (lo >= hi) continue;
    const bool found = std::any_of(block.values.begin(), block.values.end(), [&](const StateVector& v) {
      for (std::size_t i = lo; i < hi; ++i) {
        if (v.values[i - block.offset] != part.values[i - offset]) return false;
      }
      return true;
    });
    if (!found) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------

StateVector::StateVector(std::initializer_list<std::string_view> names) {
  values.reserve(names.size());
  for (auto n : names) values.push_back(symbol_or_epsilon(n));
}

StateVector StateVector::slice(std::size_t offset, std::size_t width) const {
  return StateVector(std::vector<Symbol>(values.begin() + static_cast<std::ptrdiff_t>(offset),
                                         values.begin() + static_cast<std::ptrdiff_t>(offset + width)));
}

VectorChar VectorChar::unit(std::size_t width, std::size_t component, Symbol character) {
  VectorChar c = empty(width);
  c.components.at(component) = character;
  return c;
}

std::size_t VectorChar::non_empty_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(components.begin(), components.end(), [](Symbol s) { return !s.is_epsilon(); }));
}

std::optional<std::size_t> VectorChar::active_component() const noexcept {
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (!components[i].is_epsilon()) return i;
  }
  return std::nullopt;
}

Symbol VectorChar::active_character() const noexcept {
  auto k = active_component();
  return k ? components[*k] : Symbol::epsilon();
}

std::size_t hash_value(const StateVector& s) noexcept { return hash_symbols(s.values); }
std::size_t hash_value(const VectorChar& c) noexcept { return hash_symbols(c.components); }
std::size_t hash_value(const Transition& t) noexcept {
  std::size_t h = hash_value(t.source);
  h = mix(h, hash_value(t.target));
  h = mix(h, hash_value(t.input));
  return mix(h, hash_value(t.output));
}

// ---------------------------------------------------------------------------

Acceptance Acceptance::final_states(std::set<StateVector> finals, std::size_t width) {
  Acceptance a;
  a.mode = AcceptanceMode::FinalStates;
  a.factors.push_back(AcceptanceFactor{0, width, std::move(finals), {}});
  return a;
}

Acceptance Acceptance::muller(std::set<std::set<StateVector>> sets, std::size_t width) {
  Acceptance a;
  a.mode = AcceptanceMode::Muller;
  a.factors.push_back(AcceptanceFactor{0, width, {}, std::move(sets)});
  return a;
}

bool Acceptance::accepts_state(const StateVector& s) const {
  if (mode != AcceptanceMode::FinalStates) return false;
  return std::all_of(factors.begin(), factors.end(), [&](const AcceptanceFactor& f) {
    return f.final_states.count(s.slice(f.offset, f.width)) > 0;
  });
}

bool Acceptance::accepts_recurrent_set(const std::set<StateVector>& recurring) const {
  if (mode != AcceptanceMode::Muller || recurring.empty()) return false;
  return std::all_of(factors.begin(), factors.end(), [&](const AcceptanceFactor& f) {
    std::set<StateVector> projected;
    for (const auto& s : recurring) projected.insert(s.slice(f.offset, f.width));
    return f.muller_sets.count(projected) > 0;
  });
}

// ---------------------------------------------------------------------------

StateSpace::StateSpace(std::set<StateVector> values, std::size_t width) : dimension_(width) {
  for (const auto& v : values) {
    if (v.size() != width) throw Error("state " + to_string(v) + " does not have dimension " + std::to_string(width));
  }
  blocks_.push_back(Block{0, width, std::move(values)});
}

StateSpace StateSpace::product(std::span<const StateSpace* const> factors) {
  StateSpace result;
  for (const StateSpace* f : factors) {
    for (const auto& b : f->blocks_) {
      result.blocks_.push_back(Block{result.dimension_ + b.offset, b.width, b.values});
    }
    result.dimension_ += f->dimension_;
  }
  return result;
}

std::uint64_t StateSpace::size() const noexcept {
  if (blocks_.empty()) return 0;
  std::uint64_t n = 1;
  for (const auto& b : blocks_) {
    const std::uint64_t k = b.values.size();
    if (k == 0) return 0;
    if (n > std::numeric_limits<std::uint64_t>::max() / k) return std::numeric_limits<std::uint64_t>::max();
    n *= k;
  }
  return n;
}

bool StateSpace::contains(const StateVector& s) const {
  if (s.size() != dimension_ || blocks_.empty()) return false;
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [&](const Block& b) { return b.values.count(s.slice(b.offset, b.width)) > 0; });
}

std::set<StateVector> StateSpace::enumerate(std::size_t limit) const {
  if (size() > limit) {
    throw CapacityError("state set of " + std::to_string(size()) + " states exceeds the cap of " +
                        std::to_string(limit));
  }
  std::set<StateVector> out;
  if (blocks_.empty()) return out;
  std::vector<Symbol> current(dimension_);
  auto rec = [&](auto&& self, std::size_t block) -> void {
    if (block == blocks_.size()) {
      out.insert(StateVector(current));
      return;
    }
    const Block& b = blocks_[block];
    for (const auto& v : b.values) {
      std::copy(v.values.begin(), v.values.end(), current.begin() + static_cast<std::ptrdiff_t>(b.offset));
      self(self, block + 1);
    }
  };
  rec(rec, 0);
  return out;
}

bool operator==(const StateSpace& a, const StateSpace& b) {
  if (a.dimension_ != b.dimension_ || a.size() != b.size()) return false;
  if (a.blocks_ == b.blocks_) return true;
  return a.enumerate() == b.enumerate();
}

// ---------------------------------------------------------------------------

Nfioa::Nfioa() : data_(std::make_shared<const Data>()) {}

Nfioa::Nfioa(Signature signature, std::vector<Transition> transitions) {
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
  data_ = std::make_shared<const Data>(Data{std::move(signature), std::move(transitions)});
}

std::span<const Transition> Nfioa::outgoing(const StateVector& state) const {
  const auto& ts = data_->transitions;
  auto lo = std::lower_bound(ts.begin(), ts.end(), state,
                             [](const Transition& t, const StateVector& s) { return t.source < s; });
  auto hi = std::upper_bound(lo, ts.end(), state,
                             [](const StateVector& s, const Transition& t) { return s < t.source; });
  return {lo, hi};
}

Nfioa Nfioa::with_transitions(std::vector<Transition> transitions) const {
  return Nfioa(data_->signature, std::move(transitions));
}

Nfioa Nfioa::renamed(std::string name) const {
  Signature sig = data_->signature;
  sig.name = std::move(name);
  return Nfioa(std::move(sig), data_->transitions);
}

// ---------------------------------------------------------------------------

NfioaBuilder& NfioaBuilder::states(const std::vector<std::string>& names) {
  states_.insert(states_.end(), names.begin(), names.end());
  return *this;
}

NfioaBuilder& NfioaBuilder::initial(std::string_view state) {
  initial_ = std::string(state);
  return *this;
}

NfioaBuilder& NfioaBuilder::input(std::string component, const std::vector<std::string>& characters) {
  inputs_.emplace_back(std::move(component), characters);
  return *this;
}

NfioaBuilder& NfioaBuilder::output(std::string component, const std::vector<std::string>& characters) {
  outputs_.emplace_back(std::move(component), characters);
  return *this;
}

NfioaBuilder& NfioaBuilder::final_states(const std::vector<std::string>& finals) {
  mode_ = AcceptanceMode::FinalStates;
  finals_ = finals;
  return *this;
}

NfioaBuilder& NfioaBuilder::muller_set(const std::vector<std::string>& set) {
  mode_ = AcceptanceMode::Muller;
  muller_.push_back(set);
  return *this;
}

NfioaBuilder& NfioaBuilder::transition(std::string_view from, std::string_view to, std::string_view input,
                                       std::string_view output) {
  transitions_.push_back({std::string(from), std::string(to), std::string(input), std::string(output)});
  return *this;
}

Nfioa NfioaBuilder::build() const {
  auto state = [](const std::string& n) { return StateVector(std::vector<Symbol>{symbol_or_epsilon(n)}); };
  auto alphabet = [](const auto& decls) {
    std::vector<ComponentAlphabet> out;
    for (const auto& [name, chars] : decls) {
      ComponentAlphabet a{name, {}};
      for (const auto& c : chars) a.characters.insert(Symbol(c));
      out.push_back(std::move(a));
    }
    return out;
  };

  Signature sig;
  sig.name = name_;
  std::set<StateVector> qs;
  for (const auto& s : states_) qs.insert(state(s));
  sig.states = StateSpace(std::move(qs), 1);
  sig.inputs = alphabet(inputs_);
  sig.outputs = alphabet(outputs_);
  sig.initial = state(initial_.empty() && !states_.empty() ? states_.front() : initial_);
  if (mode_ == AcceptanceMode::FinalStates) {
    std::set<StateVector> finals;
    for (const auto& f : finals_) finals.insert(state(f));
    sig.acceptance = Acceptance::final_states(std::move(finals), 1);
  } else {
    std::set<std::set<StateVector>> sets;
    for (const auto& m : muller_) {
      std::set<StateVector> set;
      for (const auto& s : m) set.insert(state(s));
      sets.insert(std::move(set));
    }
    sig.acceptance = Acceptance::muller(std::move(sets), 1);
  }

  std::vector<Transition> ts;
  for (const auto& t : transitions_) {
    ts.push_back(Transition{state(t.from), state(t.to), parse_vector_char(t.input, sig.inputs),
                            parse_vector_char(t.output, sig.outputs)});
  }
  return Nfioa(std::move(sig), std::move(ts));
}

VectorChar parse_vector_char(std::string_view text, const std::vector<ComponentAlphabet>& alphabet) {
  if (text == kEpsilonText) return VectorChar::empty(alphabet.size());
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) throw Error("character '" + std::string(text) + "' lacks a component prefix");
  const auto comp = text.substr(0, dot);
  for (std::size_t k = 0; k < alphabet.size(); ++k) {
    if (alphabet[k].name == comp) return VectorChar::unit(alphabet.size(), k, Symbol(text.substr(dot + 1)));
  }
  throw Error("unknown component '" + std::string(comp) + "'");
}

// ---------------------------------------------------------------------------

std::string to_string(const StateVector& s) {
  if (s.size() == 1) return std::string(s[0].name());
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += s[i].name();
  }
  return out + ")";
}

std::string to_string(const VectorChar& c, const std::vector<ComponentAlphabet>& alphabet) {
  if (c.is_empty()) return std::string(kEpsilonText);
  std::string out;
  for (std::size_t k = 0; k < c.width(); ++k) {
    if (c.components[k].is_epsilon()) continue;
    if (!out.empty()) out += '+';
    out += (k < alphabet.size() ? alphabet[k].name : "#" + std::to_string(k));
    out += '.';
    out += c.components[k].name();
  }
  return out;
}

std::string to_string(const Transition& t, const Nfioa& owner) {
  return to_string(t.source) + " -> " + to_string(t.target) + " on " + to_string(t.input, owner.inputs()) + " / " +
         to_string(t.output, owner.outputs());
}

// ---------------------------------------------------------------------------

std::vector<Diagnostic> validate(const Nfioa& a) {
  using K = Diagnostic::Kind;
  std::vector<Diagnostic> out;
  auto report = [&](K kind, std::string msg) { out.push_back({kind, std::move(msg)}); };
  const std::size_t dim = a.dimension();

  if (a.states().empty()) report(K::EmptyStateSet, "state set is empty");

  if (a.initial().size() != dim) {
    report(K::DimensionMismatch, "initial state " + to_string(a.initial()) + " has wrong dimension");
  } else if (!a.states().contains(a.initial())) {
    report(K::UnknownState, "initial state " + to_string(a.initial()) + " is not a member of the state set");
  }

  auto check_alphabet = [&](const std::vector<ComponentAlphabet>& alpha, const char* what) {
    for (const auto& comp : alpha) {
      if (comp.characters.count(Symbol::epsilon())) {
        report(K::EpsilonInAlphabet, std::string(what) + " component '" + comp.name + "' contains the empty character");
      }
    }
  };
  check_alphabet(a.inputs(), "input");
  check_alphabet(a.outputs(), "output");

  auto check_char = [&](const Transition& t, const VectorChar& c, const std::vector<ComponentAlphabet>& alpha,
                        const char* what) {
    if (c.width() != alpha.size()) {
      report(K::DimensionMismatch, std::string(what) + " of transition " + to_string(t, a) + " has dimension " +
                                       std::to_string(c.width()) + ", expected " + std::to_string(alpha.size()));
      return;
    }
    if (c.non_empty_count() > 1) {
      report(K::MultiComponentCharacter,
             std::string(what) + " of transition " + to_string(t, a) + " has more than one non-empty component");
    }
    for (std::size_t k = 0; k < c.width(); ++k) {
      if (!c.components[k].is_epsilon() && !alpha[k].characters.count(c.components[k])) {
        report(K::UnknownCharacter, std::string(what) + " character '" + std::string(c.components[k].name()) +
                                        "' of transition " + to_string(t, a) + " is not in component '" +
                                        alpha[k].name + "'");
      }
    }
  };

  for (const auto& t : a.transitions()) {
    for (const StateVector* s : {&t.source, &t.target}) {
      if (s->size() != dim) {
        report(K::DimensionMismatch, "transition " + to_string(t, a) + " references a state of wrong dimension");
      } else if (!a.states().contains(*s)) {
        report(K::UnknownState,
               "transition " + to_string(t, a) + " references state " + to_string(*s) + " outside the state set");
      }
    }
    check_char(t, t.input, a.inputs(), "input");
    check_char(t, t.output, a.outputs(), "output");
  }

  for (const auto& f : a.acceptance().factors) {
    if (f.offset + f.width > dim) {
      report(K::BadAcceptance, "acceptance conjunct exceeds the state dimension");
      continue;
    }
    auto check_member = [&](const StateVector& s) {
      if (s.size() != f.width || !slice_member(a.states(), f.offset, s)) {
        report(K::BadAcceptance, "acceptance references state " + to_string(s) + " outside the state set");
      }
    };
    for (const auto& s : f.final_states) check_member(s);
    for (const auto& m : f.muller_sets) {
      for (const auto& s : m) check_member(s);
    }
  }
  return out;
}

Classification classify(const Nfioa& a) {
  if (!validate(a).empty()) throw PreconditionError("classify: automaton '" + a.name() + "' does not validate");
  Classification c;
  c.is_function = true;
  const auto ts = a.transitions();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i].is_spontaneous()) c.has_spontaneous = true;
    // Sorted by (source, target, input, output): compare against every later
    // transition of the same source.
    for (std::size_t j = i + 1; j < ts.size() && ts[j].source == ts[i].source; ++j) {
      if (ts[j].input == ts[i].input) c.is_function = false;
    }
  }
  c.is_deterministic = c.is_function && !c.has_spontaneous;
  return c;
}

std::set<StateVector> reachable_states(const Nfioa& a) {
  std::set<StateVector> seen{a.initial()};
  std::deque<StateVector> queue{a.initial()};
  while (!queue.empty()) {
    const StateVector s = std::move(queue.front());
    queue.pop_front();
    for (const auto& t : a.outgoing(s)) {
      if (seen.insert(t.target).second) queue.push_back(t.target);
    }
  }
  return seen;
}

Nfioa prune_unreachable(const Nfioa& a) {
  auto reach = reachable_states(a);
  std::vector<Transition> ts;
  for (const auto& t : a.transitions()) {
    if (reach.count(t.source)) ts.push_back(t);
  }
  Signature sig = a.signature();
  sig.states = StateSpace(std::move(reach), a.dimension());
  return Nfioa(std::move(sig), std::move(ts));
}

// ---------------------------------------------------------------------------

ComponentMap ComponentMap::constant(Symbol value) {
  ComponentMap m;
  m.constant_ = value;
  return m;
}

ComponentMap ComponentMap::table(std::map<Symbol, Symbol> entries) {
  ComponentMap m;
  m.table_ = std::move(entries);
  return m;
}

Symbol ComponentMap::operator()(Symbol value) const {
  if (value.is_epsilon()) return value;
  if (constant_) return *constant_;
  auto it = table_.find(value);
  return it == table_.end() ? value : it->second;
}

bool ComponentMap::idempotent_on(const std::set<Symbol>& domain) const {
  return std::all_of(domain.begin(), domain.end(), [&](Symbol x) { return (*this)((*this)(x)) == (*this)(x); });
}

Projection Projection::identity(const Nfioa& a) {
  return Projection{std::vector<ComponentMap>(a.dimension()), std::vector<ComponentMap>(a.inputs().size()),
                    std::vector<ComponentMap>(a.outputs().size())};
}

Projection Projection::keep(const Nfioa& a, const std::set<std::size_t>& state_components,
                            const std::set<std::size_t>& input_components,
                            const std::set<std::size_t>& output_components) {
  auto maps = [](std::size_t n, const std::set<std::size_t>& kept) {
    std::vector<ComponentMap> out;
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(kept.count(i) ? ComponentMap::identity() : ComponentMap::constant(Symbol::epsilon()));
    }
    return out;
  };
  return Projection{maps(a.dimension(), state_components), maps(a.inputs().size(), input_components),
                    maps(a.outputs().size(), output_components)};
}

namespace {

std::vector<Symbol> apply_maps(const std::vector<ComponentMap>& maps, const std::vector<Symbol>& v,
                               std::size_t offset = 0) {
  std::vector<Symbol> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = maps.at(offset + i)(v[i]);
  return out;
}

}  // namespace

StateVector Projection::apply_state(const StateVector& s) const { return StateVector(apply_maps(state_maps, s.values)); }
VectorChar Projection::apply_input(const VectorChar& c) const { return VectorChar(apply_maps(input_maps, c.components)); }
VectorChar Projection::apply_output(const VectorChar& c) const {
  return VectorChar(apply_maps(output_maps, c.components));
}

Nfioa project(const Nfioa& a, const Projection& p) {
  if (p.state_maps.size() != a.dimension() || p.input_maps.size() != a.inputs().size() ||
      p.output_maps.size() != a.outputs().size()) {
    throw PreconditionError("project: projection does not match the dimensions of '" + a.name() + "'");
  }

  std::vector<std::set<Symbol>> state_domain(a.dimension());
  for (const auto& b : a.states().blocks()) {
    for (const auto& v : b.values) {
      for (std::size_t i = 0; i < b.width; ++i) state_domain[b.offset + i].insert(v[i]);
    }
  }
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    if (!p.state_maps[i].idempotent_on(state_domain[i])) {
      throw PreconditionError("project: state map of component " + std::to_string(i) + " is not idempotent");
    }
  }
  auto check_chars = [](const std::vector<ComponentMap>& maps, const std::vector<ComponentAlphabet>& alpha,
                        const char* what) {
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      if (!maps[k].idempotent_on(alpha[k].characters)) {
        throw PreconditionError(std::string("project: ") + what + " map of component '" + alpha[k].name +
                                "' is not idempotent");
      }
    }
  };
  check_chars(p.input_maps, a.inputs(), "input");
  check_chars(p.output_maps, a.outputs(), "output");

  auto image_alphabet = [](const std::vector<ComponentMap>& maps, const std::vector<ComponentAlphabet>& alpha) {
    std::vector<ComponentAlphabet> out;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      ComponentAlphabet img{alpha[k].name, {}};
      for (Symbol c : alpha[k].characters) {
        Symbol m = maps[k](c);
        if (!m.is_epsilon()) img.characters.insert(m);
      }
      out.push_back(std::move(img));
    }
    return out;
  };

  auto map_slice = [&](const StateVector& v, std::size_t offset) {
    return StateVector(apply_maps(p.state_maps, v.values, offset));
  };

  Signature sig;
  sig.name = "pi(" + a.name() + ")";
  std::vector<StateSpace> blocks;
  for (const auto& b : a.states().blocks()) {
    std::set<StateVector> img;
    for (const auto& v : b.values) img.insert(map_slice(v, b.offset));
    blocks.emplace_back(std::move(img), b.width);
  }
  std::vector<const StateSpace*> ptrs;
  for (const auto& b : blocks) ptrs.push_back(&b);
  sig.states = StateSpace::product(ptrs);
  sig.inputs = image_alphabet(p.input_maps, a.inputs());
  sig.outputs = image_alphabet(p.output_maps, a.outputs());
  sig.initial = p.apply_state(a.initial());
  sig.acceptance.mode = a.acceptance().mode;
  for (const auto& f : a.acceptance().factors) {
    AcceptanceFactor g{f.offset, f.width, {}, {}};
    for (const auto& s : f.final_states) g.final_states.insert(map_slice(s, f.offset));
    for (const auto& m : f.muller_sets) {
      std::set<StateVector> img;
      for (const auto& s : m) img.insert(map_slice(s, f.offset));
      g.muller_sets.insert(std::move(img));
    }
    sig.acceptance.factors.push_back(std::move(g));
  }

  std::vector<Transition> ts;
  ts.reserve(a.transitions().size());
  for (const auto& t : a.transitions()) {
    ts.push_back(Transition{p.apply_state(t.source), p.apply_state(t.target), p.apply_input(t.input),
                            p.apply_output(t.output)});
  }
  return Nfioa(std::move(sig), std::move(ts));
}

// ---------------------------------------------------------------------------

std::optional<std::string> flattened_difference(const Nfioa& a, const Nfioa& b) {
  if (a.dimension() != b.dimension()) {
    return "state dimensions differ: " + std::to_string(a.dimension()) + " vs " + std::to_string(b.dimension());
  }
  auto alpha_diff = [](const std::vector<ComponentAlphabet>& x, const std::vector<ComponentAlphabet>& y,
                       const char* what) -> std::optional<std::string> {
    if (x.size() != y.size()) return std::string(what) + " alphabet dimensions differ";
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (!(x[k] == y[k])) return std::string(what) + " component " + std::to_string(k) + " differs";
    }
    return std::nullopt;
  };
  if (auto d = alpha_diff(a.inputs(), b.inputs(), "input")) return d;
  if (auto d = alpha_diff(a.outputs(), b.outputs(), "output")) return d;
  if (a.initial() != b.initial()) return "initial states differ: " + to_string(a.initial()) + " vs " + to_string(b.initial());
  if (!(a.acceptance() == b.acceptance())) return std::string("acceptance components differ");

  const auto ra = reachable_states(a);
  const auto rb = reachable_states(b);
  if (ra != rb) {
    std::vector<StateVector> diff;
    std::set_symmetric_difference(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(diff));
    return "reachable state " + to_string(diff.front()) + " only on the " + (ra.count(diff.front()) ? "left" : "right");
  }
  std::vector<Transition> ta, tb;
  for (const auto& t : a.transitions()) {
    if (ra.count(t.source)) ta.push_back(t);
  }
  for (const auto& t : b.transitions()) {
    if (rb.count(t.source)) tb.push_back(t);
  }
  if (ta != tb) {
    std::vector<Transition> diff;
    std::set_symmetric_difference(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(diff));
    const bool left = std::binary_search(ta.begin(), ta.end(), diff.front());
    return "transition " + to_string(diff.front(), left ? a : b) + " only on the " + (left ? "left" : "right");
  }
  return std::nullopt;
}

}  // namespace pw
