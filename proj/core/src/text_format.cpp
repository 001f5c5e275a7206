#include "pw/text_format.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <set>

#include "pw/error.hpp"

namespace pw {

namespace {

struct Pos {
  std::size_t line = 1;
  std::size_t column = 1;
};

enum class Tok { Name, String, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Pos pos;
};

bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || s.substr(i, 2) == "//") {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    const Pos pos{line, col};
    if (name_char(c)) {
      std::size_t j = i;
      // '-' joins name parts ("cf-req") but never starts an arrow.
      while (j < s.size() && (name_char(s[j]) || (s[j] == '-' && j + 1 < s.size() && name_char(s[j + 1])))) ++j;
      out.push_back({Tok::Name, std::string(s.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::string text;
      std::size_t j = i + 1;
      for (; j < s.size() && s[j] != '"'; ++j) {
        if (s[j] == '\n') throw ParseError(pos.line, pos.column, "unterminated string");
        if (s[j] == '\\' && j + 1 < s.size()) ++j;
        text += s[j];
      }
      if (j >= s.size()) throw ParseError(pos.line, pos.column, "unterminated string");
      out.push_back({Tok::String, std::move(text), pos});
      advance(j + 1 - i);
      continue;
    }
    if (s.substr(i, 2) == "->") {
      out.push_back({Tok::Punct, "->", pos});
      advance(2);
      continue;
    }
    if (std::string_view("{}()[];:,./*-").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), pos});
      advance(1);
      continue;
    }
    throw ParseError(pos.line, pos.column, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

[[noreturn]] void fail_at(Pos p, const std::string& msg) { throw ParseError(p.line, p.column, msg); }

// ---------------------------------------------------------------------------
// Resolution shared by parse_document() and build_network_spec()
// ---------------------------------------------------------------------------

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::size_t instance_index(const NetworkSpec& spec, const std::string& name) {
  if (auto i = spec.instance(name)) return *i;
  throw PreconditionError("unknown instance '" + name + "'");
}

std::size_t component_index(const std::vector<ComponentAlphabet>& alphabet, const std::string& name,
                            const std::string& what) {
  for (std::size_t k = 0; k < alphabet.size(); ++k) {
    if (alphabet[k].name == name) return k;
  }
  throw PreconditionError("unknown " + what + " component '" + name + "'");
}

Instance resolve_use(const Document& doc, const UseDecl& u) {
  const AutomatonDecl* decl = doc.find_automaton(u.automaton);
  if (!decl) throw PreconditionError("unknown automaton '" + u.automaton + "'");
  Nfioa a = build_automaton(*decl);
  if (u.initial) {
    if (!contains(decl->states, *u.initial)) {
      throw PreconditionError("automaton '" + u.automaton + "' has no state '" + *u.initial + "'");
    }
    Signature sig = a.signature();
    sig.initial = StateVector(std::vector<Symbol>{Symbol(*u.initial)});
    a = Nfioa(std::move(sig), {a.transitions().begin(), a.transitions().end()});
  }
  return Instance{u.instance(), std::move(a)};
}

std::size_t resolve_port(const NetworkSpec& spec, const PortRef& p, bool output) {
  const Nfioa& a = spec.instances.at(instance_index(spec, p.instance)).automaton;
  const auto& alphabet = output ? a.outputs() : a.inputs();
  if (p.index) {
    if (*p.index >= alphabet.size()) {
      throw PreconditionError("instance '" + p.instance + "' has no " + (output ? "output" : "input") +
                              " component " + std::to_string(*p.index));
    }
    return *p.index;
  }
  return component_index(alphabet, p.component, output ? "output" : "input");
}

ChannelSpec resolve_channel(const NetworkSpec& spec, const ChannelDecl& c) {
  ChannelSpec out;
  out.label = c.label.value_or("");
  out.from = instance_index(spec, c.from.instance);
  out.out = resolve_port(spec, c.from, true);
  out.to = instance_index(spec, c.to.instance);
  out.in = resolve_port(spec, c.to, false);
  return out;
}

ConditionSpec resolve_condition(const NetworkSpec& spec, const ConditionDecl& c) {
  ConditionSpec out;
  if (c.scope.empty()) {
    for (std::size_t i = 0; i < spec.instances.size(); ++i) out.scope.push_back(i);
  } else {
    for (const auto& n : c.scope) out.scope.push_back(instance_index(spec, n));
  }
  // Local numbering of the scope product.
  std::vector<const Nfioa*> members;
  for (std::size_t i : out.scope) members.push_back(&spec.instances[i].automaton);
  std::vector<std::size_t> state_offset, in_offset, out_offset;
  std::size_t so = 0, io = 0, oo = 0;
  for (const Nfioa* a : members) {
    state_offset.push_back(so);
    in_offset.push_back(io);
    out_offset.push_back(oo);
    so += a->dimension();
    io += a->inputs().size();
    oo += a->outputs().size();
  }
  std::vector<std::set<Symbol>> values(so);
  for (std::size_t m = 0; m < members.size(); ++m) {
    for (const auto& block : members[m]->states().blocks()) {
      for (const auto& v : block.values) {
        for (std::size_t k = 0; k < v.size(); ++k) values[state_offset[m] + block.offset + k].insert(v[k]);
      }
    }
  }

  auto pattern = [&](const std::vector<std::string>& p) {
    StatePattern sp;
    if (p.empty()) return sp;
    if (p.size() != so) {
      throw PreconditionError("condition '" + c.name + "': pattern has " + std::to_string(p.size()) +
                              " entries, expected " + std::to_string(so));
    }
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k] == "*") {
        sp.emplace_back();
        continue;
      }
      const Symbol s(p[k]);
      if (!values[k].count(s)) {
        throw PreconditionError("condition '" + c.name + "': no state '" + p[k] + "' at position " +
                                std::to_string(k + 1));
      }
      sp.emplace_back(s);
    }
    return sp;
  };
  auto charpat = [&](const CharPatternDecl& d, bool output) {
    using K = CharPatternDecl::Kind;
    if (d.kind == K::Any) return CharPattern::any();
    if (d.kind == K::Spontaneous) return CharPattern::spontaneous();
    const std::size_t inst = instance_index(spec, d.instance);
    const auto it = std::find(out.scope.begin(), out.scope.end(), inst);
    if (it == out.scope.end()) {
      throw PreconditionError("condition '" + c.name + "': instance '" + d.instance + "' is not in scope");
    }
    const std::size_t m = static_cast<std::size_t>(it - out.scope.begin());
    const auto& alphabet = output ? members[m]->outputs() : members[m]->inputs();
    const std::size_t k = component_index(alphabet, d.component, output ? "output" : "input");
    const std::size_t global = (output ? out_offset[m] : in_offset[m]) + k;
    if (d.kind == K::Component) return CharPattern::on(global);
    const Symbol ch(d.character);
    if (!alphabet[k].characters.count(ch)) {
      throw PreconditionError("condition '" + c.name + "': component '" + d.component + "' has no character '" +
                              d.character + "'");
    }
    return CharPattern::literal(global, ch);
  };
  out.condition = Condition{c.name, pattern(c.from), pattern(c.to), charpat(c.input, false), charpat(c.output, true),
                            std::nullopt};
  return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Document parse() {
    Document doc;
    std::vector<std::function<void(const Document&)>> checks;
    while (peek().kind != Tok::End) {
      if (at_word("automaton")) {
        checks.push_back(parse_automaton(doc));
      } else if (at_word("network")) {
        checks.push_back(parse_network(doc));
      } else {
        fail("expected 'automaton' or 'network'");
      }
    }
    for (auto& check : checks) check(doc);
    return doc;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek().pos, msg); }

  bool at_word(std::string_view w) const { return peek().kind == Tok::Name && peek().text == w; }
  bool at_punct(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool eat_punct(std::string_view p) {
    if (!at_punct(p)) return false;
    ++pos_;
    return true;
  }
  bool eat_word(std::string_view w) {
    if (!at_word(w)) return false;
    ++pos_;
    return true;
  }
  void expect_punct(std::string_view p) {
    if (!eat_punct(p)) fail("expected '" + std::string(p) + "'");
  }
  void expect_word(std::string_view w) {
    if (!eat_word(w)) fail("expected '" + std::string(w) + "'");
  }
  std::string name(const char* what = "a name") {
    if (peek().kind != Tok::Name) fail(std::string("expected ") + what);
    return next().text;
  }

  std::vector<std::string> name_list() {
    std::vector<std::string> out{name()};
    while (eat_punct(",")) out.push_back(name());
    return out;
  }

  std::vector<std::string> braced_names() {
    expect_punct("{");
    std::vector<std::string> out;
    if (!at_punct("}")) out = name_list();
    expect_punct("}");
    return out;
  }

  std::vector<AlphabetDecl> alphabets() {
    std::vector<AlphabetDecl> out;
    do {
      AlphabetDecl a;
      a.component = name("a component name");
      expect_punct(":");
      a.characters = braced_names();
      out.push_back(std::move(a));
    } while (eat_punct(","));
    return out;
  }

  /// COMP '.' NAME or '-', returned in "comp.ch" form with its position.
  std::pair<std::string, Pos> character() {
    const Pos p = peek().pos;
    if (eat_punct("-")) return {std::string(kEpsilonText), p};
    std::string comp = name("a character");
    expect_punct(".");
    return {comp + "." + name("a character"), p};
  }

  std::function<void(const Document&)> parse_automaton(Document& doc) {
    expect_word("automaton");
    const Pos name_pos = peek().pos;
    AutomatonDecl a;
    a.name = name("an automaton name");
    if (doc.find_automaton(a.name)) fail_at(name_pos, "duplicate automaton '" + a.name + "'");
    expect_punct("{");

    // Deferred so that items may come in any order within the block.
    std::vector<std::pair<std::string, Pos>> state_refs;
    std::vector<std::pair<std::string, Pos>> input_refs, output_refs;
    while (!eat_punct("}")) {
      const Pos item = peek().pos;
      if (eat_word("states")) {
        for (auto& s : name_list()) {
          if (contains(a.states, s)) fail_at(item, "duplicate state '" + s + "'");
          a.states.push_back(std::move(s));
        }
      } else if (eat_word("initial")) {
        if (a.initial) fail_at(item, "initial state given twice");
        const Pos at = peek().pos;
        state_refs.emplace_back(name("a state"), at);
        a.initial = state_refs.back().first;
      } else if (eat_word("inputs")) {
        for (auto& x : alphabets()) a.inputs.push_back(std::move(x));
      } else if (eat_word("outputs")) {
        for (auto& x : alphabets()) a.outputs.push_back(std::move(x));
      } else if (eat_word("accept")) {
        if (a.accept) fail_at(item, "acceptance given twice");
        if (eat_word("final")) {
          a.accept = AcceptanceMode::FinalStates;
          const Pos p = peek().pos;
          a.finals = braced_names();
          for (const auto& s : a.finals) state_refs.emplace_back(s, p);
        } else if (eat_word("muller")) {
          a.accept = AcceptanceMode::Muller;
          expect_punct("{");
          if (!at_punct("}")) {
            do {
              const Pos p = peek().pos;
              a.muller.push_back(braced_names());
              for (const auto& s : a.muller.back()) state_refs.emplace_back(s, p);
            } while (eat_punct(","));
          }
          expect_punct("}");
        } else {
          fail("expected 'final' or 'muller'");
        }
      } else if (eat_word("trans")) {
        TransitionDecl t;
        const Pos from_pos = peek().pos;
        state_refs.emplace_back(name("a state"), from_pos);
        t.from = state_refs.back().first;
        expect_punct("->");
        const Pos to_pos = peek().pos;
        state_refs.emplace_back(name("a state"), to_pos);
        t.to = state_refs.back().first;
        expect_word("on");
        auto [in, in_pos] = character();
        expect_punct("/");
        auto [out, out_pos] = character();
        input_refs.emplace_back(in, in_pos);
        output_refs.emplace_back(out, out_pos);
        t.input = std::move(in);
        t.output = std::move(out);
        a.transitions.push_back(std::move(t));
      } else {
        fail("expected 'states', 'initial', 'inputs', 'outputs', 'accept' or 'trans'");
      }
      expect_punct(";");
    }
    doc.automata.push_back(a);

    return [a, name_pos, state_refs, input_refs, output_refs](const Document&) {
      if (a.states.empty()) fail_at(name_pos, "automaton '" + a.name + "' declares no states");
      for (const auto& [s, p] : state_refs) {
        if (!contains(a.states, s)) fail_at(p, "undeclared state '" + s + "'");
      }
      auto check_chars = [](const std::vector<AlphabetDecl>& alphabet, const auto& refs, const char* what) {
        std::set<std::string> seen;
        for (const auto& d : alphabet) seen.insert(d.component);
        for (const auto& [c, p] : refs) {
          if (c == kEpsilonText) continue;
          const auto dot = c.find('.');
          const std::string comp = c.substr(0, dot), ch = c.substr(dot + 1);
          const auto it = std::find_if(alphabet.begin(), alphabet.end(),
                                       [&](const AlphabetDecl& d) { return d.component == comp; });
          if (it == alphabet.end()) fail_at(p, std::string("undeclared ") + what + " component '" + comp + "'");
          if (!contains(it->characters, ch)) {
            fail_at(p, std::string("undeclared ") + what + " character '" + ch + "' on '" + comp + "'");
          }
        }
      };
      check_chars(a.inputs, input_refs, "input");
      check_chars(a.outputs, output_refs, "output");
      try {
        const auto diags = validate(build_automaton(a));
        if (!diags.empty()) fail_at(name_pos, "automaton '" + a.name + "': " + diags.front().message);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        fail_at(name_pos, "automaton '" + a.name + "': " + e.what());
      }
    };
  }

  /// Also records where the instance and the component were written.
  PortRef port(std::vector<Pos>& where) {
    PortRef p;
    where.push_back(peek().pos);
    p.instance = name("an instance");
    expect_punct(".");
    where.push_back(peek().pos);
    p.component = name("a component");
    if (eat_punct("[")) {
      if (p.component != "in" && p.component != "out") fail("indexed ports are written in[N] or out[N]");
      const std::string n = name("an index");
      if (!std::all_of(n.begin(), n.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        fail_at(toks_[pos_ - 1].pos, "expected an index");
      }
      p.index = std::stoul(n);
      expect_punct("]");
    }
    return p;
  }

  std::vector<std::string> state_pattern() {
    expect_punct("(");
    std::vector<std::string> out;
    do {
      if (eat_punct("*")) {
        out.emplace_back("*");
      } else {
        out.push_back(name("a state or '*'"));
      }
    } while (eat_punct(","));
    expect_punct(")");
    return out;
  }

  CharPatternDecl char_pattern() {
    CharPatternDecl d;
    if (eat_word("any")) return d;
    if (eat_word("spontaneous")) {
      d.kind = CharPatternDecl::Kind::Spontaneous;
      return d;
    }
    d.kind = CharPatternDecl::Kind::Component;
    d.instance = name("'any', 'spontaneous' or INSTANCE.COMPONENT");
    expect_punct(".");
    d.component = name("a component");
    if (eat_punct(".")) {
      d.kind = CharPatternDecl::Kind::Literal;
      d.character = name("a character");
    }
    return d;
  }

  std::function<void(const Document&)> parse_network(Document& doc) {
    expect_word("network");
    const Pos name_pos = peek().pos;
    NetworkDecl n;
    n.name = name("a network name");
    if (doc.find_network(n.name)) fail_at(name_pos, "duplicate network '" + n.name + "'");
    expect_punct("{");
    // Per use: the item, the automaton name and the initial override. Per
    // channel: instance and component of each endpoint.
    std::vector<std::array<Pos, 3>> use_pos;
    std::vector<std::vector<Pos>> channel_pos;
    std::vector<Pos> condition_pos;
    while (!eat_punct("}")) {
      const Pos item = peek().pos;
      if (eat_word("use")) {
        do {
          std::array<Pos, 3> where{peek().pos, peek().pos, peek().pos};
          UseDecl u;
          u.automaton = name("an automaton");
          if (eat_word("as")) u.alias = name("an instance name");
          if (eat_word("initial")) {
            where[2] = peek().pos;
            u.initial = name("a state");
          }
          use_pos.push_back(where);
          n.uses.push_back(std::move(u));
        } while (eat_punct(","));
      } else if (eat_word("channel")) {
        channel_pos.emplace_back();
        ChannelDecl c;
        if (peek().kind == Tok::String) {
          c.label = next().text;
          if (c.label->empty()) fail("empty channel label");
          expect_punct(":");
        }
        c.from = port(channel_pos.back());
        expect_punct("->");
        c.to = port(channel_pos.back());
        n.channels.push_back(std::move(c));
      } else if (eat_word("condition")) {
        condition_pos.push_back(item);
        ConditionDecl c;
        c.name = name("a condition name");
        if (eat_word("on")) {
          expect_punct("(");
          c.scope = name_list();
          expect_punct(")");
        }
        expect_punct(":");
        if (eat_word("from")) c.from = state_pattern();
        if (eat_word("to")) c.to = state_pattern();
        if (eat_word("input")) c.input = char_pattern();
        if (eat_word("output")) c.output = char_pattern();
        expect_word("deny");
        n.conditions.push_back(std::move(c));
      } else {
        fail("expected 'use', 'channel' or 'condition'");
      }
      expect_punct(";");
    }
    doc.networks.push_back(n);

    return [n, name_pos, use_pos, channel_pos, condition_pos](const Document& d) {
      auto at = [](Pos p, auto&& f) {
        try {
          return f();
        } catch (const ParseError&) {
          throw;
        } catch (const Error& e) {
          fail_at(p, e.what());
        }
      };
      NetworkSpec spec;
      spec.name = n.name;
      for (std::size_t i = 0; i < n.uses.size(); ++i) {
        const UseDecl& u = n.uses[i];
        const AutomatonDecl* decl = d.find_automaton(u.automaton);
        if (!decl) fail_at(use_pos[i][1], "unknown automaton '" + u.automaton + "'");
        if (u.initial && !contains(decl->states, *u.initial)) {
          fail_at(use_pos[i][2], "automaton '" + u.automaton + "' has no state '" + *u.initial + "'");
        }
        auto inst = at(use_pos[i][0], [&] { return resolve_use(d, u); });
        if (spec.instance(inst.name)) fail_at(use_pos[i][0], "duplicate instance '" + inst.name + "'");
        spec.instances.push_back(std::move(inst));
      }
      for (std::size_t i = 0; i < n.channels.size(); ++i) {
        const ChannelDecl& c = n.channels[i];
        const auto& where = channel_pos[i];
        at(where[0], [&] { return instance_index(spec, c.from.instance); });
        at(where[1], [&] { return resolve_port(spec, c.from, true); });
        at(where[2], [&] { return instance_index(spec, c.to.instance); });
        at(where[3], [&] { return resolve_port(spec, c.to, false); });
        spec.channels.push_back(resolve_channel(spec, c));
      }
      for (std::size_t i = 0; i < n.conditions.size(); ++i) {
        at(condition_pos[i], [&] { return resolve_condition(spec, n.conditions[i]); });
      }
    };
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Serializer
// ---------------------------------------------------------------------------

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
  return out;
}

std::string alphabet_text(const AlphabetDecl& a) { return a.component + ": {" + join(a.characters) + "}"; }

std::string port_text(const PortRef& p) {
  if (p.index) return p.instance + "." + p.component + "[" + std::to_string(*p.index) + "]";
  return p.instance + "." + p.component;
}

std::string char_pattern_text(const CharPatternDecl& d) {
  switch (d.kind) {
    case CharPatternDecl::Kind::Any: return "any";
    case CharPatternDecl::Kind::Spontaneous: return "spontaneous";
    case CharPatternDecl::Kind::Component: return d.instance + "." + d.component;
    case CharPatternDecl::Kind::Literal: return d.instance + "." + d.component + "." + d.character;
  }
  return "any";
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const AutomatonDecl* Document::find_automaton(std::string_view name) const {
  for (const auto& a : automata) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

const NetworkDecl* Document::find_network(std::string_view name) const {
  for (const auto& n : networks) {
    if (n.name == name) return &n;
  }
  return nullptr;
}

Nfioa Document::automaton(std::string_view name) const {
  const AutomatonDecl* a = find_automaton(name);
  if (!a) throw PreconditionError("unknown automaton '" + std::string(name) + "'");
  return build_automaton(*a);
}

NetworkSpec Document::network(std::string_view name) const {
  const NetworkDecl* n = find_network(name);
  if (!n) throw PreconditionError("unknown network '" + std::string(name) + "'");
  return build_network_spec(*this, *n);
}

Nfioa build_automaton(const AutomatonDecl& decl) {
  NfioaBuilder b(decl.name);
  b.states(decl.states);
  if (decl.initial) b.initial(*decl.initial);
  for (const auto& x : decl.inputs) b.input(x.component, x.characters);
  for (const auto& x : decl.outputs) b.output(x.component, x.characters);
  if (decl.accept == AcceptanceMode::FinalStates) b.final_states(decl.finals);
  if (decl.accept == AcceptanceMode::Muller) {
    for (const auto& m : decl.muller) b.muller_set(m);
  }
  for (const auto& t : decl.transitions) b.transition(t.from, t.to, t.input, t.output);
  Nfioa a = b.build();
  // A Muller declaration with no sets still selects Muller mode.
  if (decl.accept == AcceptanceMode::Muller && decl.muller.empty()) {
    Signature sig = a.signature();
    sig.acceptance = Acceptance::muller({}, 1);
    a = Nfioa(std::move(sig), {a.transitions().begin(), a.transitions().end()});
  }
  return a;
}

NetworkSpec build_network_spec(const Document& doc, const NetworkDecl& decl) {
  NetworkSpec spec;
  spec.name = decl.name;
  for (const auto& u : decl.uses) spec.instances.push_back(resolve_use(doc, u));
  for (const auto& c : decl.channels) spec.channels.push_back(resolve_channel(spec, c));
  for (const auto& c : decl.conditions) spec.conditions.push_back(resolve_condition(spec, c));
  return spec;
}

Document parse_document(std::string_view text) { return Parser(text).parse(); }

std::string serialize(const Document& doc) {
  std::string out;
  bool first = true;
  auto sep = [&] {
    if (!first) out += "\n";
    first = false;
  };
  for (const auto& a : doc.automata) {
    sep();
    out += "automaton " + a.name + " {\n";
    out += "  states " + join(a.states) + ";\n";
    if (a.initial) out += "  initial " + *a.initial + ";\n";
    for (const auto& x : a.inputs) out += "  inputs " + alphabet_text(x) + ";\n";
    for (const auto& x : a.outputs) out += "  outputs " + alphabet_text(x) + ";\n";
    if (a.accept == AcceptanceMode::FinalStates) out += "  accept final {" + join(a.finals) + "};\n";
    if (a.accept == AcceptanceMode::Muller) {
      out += "  accept muller {";
      for (std::size_t i = 0; i < a.muller.size(); ++i) out += (i ? ", {" : "{") + join(a.muller[i]) + "}";
      out += "};\n";
    }
    for (const auto& t : a.transitions) {
      out += "  trans " + t.from + " -> " + t.to + " on " + t.input + " / " + t.output + ";\n";
    }
    out += "}\n";
  }
  for (const auto& n : doc.networks) {
    sep();
    out += "network " + n.name + " {\n";
    for (const auto& u : n.uses) {
      out += "  use " + u.automaton;
      if (u.alias) out += " as " + *u.alias;
      if (u.initial) out += " initial " + *u.initial;
      out += ";\n";
    }
    for (const auto& c : n.channels) {
      out += "  channel ";
      if (c.label) out += quote(*c.label) + ": ";
      out += port_text(c.from) + " -> " + port_text(c.to) + ";\n";
    }
    for (const auto& c : n.conditions) {
      out += "  condition " + c.name;
      if (!c.scope.empty()) out += " on (" + join(c.scope) + ")";
      out += ":";
      if (!c.from.empty()) out += " from (" + join(c.from) + ")";
      if (!c.to.empty()) out += " to (" + join(c.to) + ")";
      if (c.input.kind != CharPatternDecl::Kind::Any) out += " input " + char_pattern_text(c.input);
      if (c.output.kind != CharPatternDecl::Kind::Any) out += " output " + char_pattern_text(c.output);
      out += " deny;\n";
    }
    out += "}\n";
  }
  return out;
}

AutomatonDecl to_decl(const Nfioa& a) {
  if (a.dimension() != 1) throw PreconditionError("'" + a.name() + "' has a composite state");
  auto state_name = [](const StateVector& s) { return std::string(s[0].name()); };
  AutomatonDecl d;
  d.name = a.name();
  for (const auto& s : a.states().enumerate()) d.states.push_back(state_name(s));
  d.initial = state_name(a.initial());
  auto alphabet = [](const std::vector<ComponentAlphabet>& v) {
    std::vector<AlphabetDecl> out;
    for (const auto& c : v) {
      AlphabetDecl x{c.name, {}};
      for (Symbol s : c.characters) x.characters.emplace_back(s.name());
      out.push_back(std::move(x));
    }
    return out;
  };
  d.inputs = alphabet(a.inputs());
  d.outputs = alphabet(a.outputs());
  d.accept = a.acceptance().mode;
  for (const auto& f : a.acceptance().factors) {
    for (const auto& s : f.final_states) d.finals.push_back(state_name(s));
    for (const auto& m : f.muller_sets) {
      std::vector<std::string> set;
      for (const auto& s : m) set.push_back(state_name(s));
      d.muller.push_back(std::move(set));
    }
  }
  for (const auto& t : a.transitions()) {
    d.transitions.push_back(
        {state_name(t.source), state_name(t.target), to_string(t.input, a.inputs()), to_string(t.output, a.outputs())});
  }
  return d;
}

}  // namespace pw
