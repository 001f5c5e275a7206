#include <cctype>
#include <functional>

#include "pw/analysis.hpp"

namespace pw {

namespace {

using Number = std::function<long(const Configuration&)>;

/// One state component test: a set of allowed values at a fixed position.
struct Atom {
  std::size_t component;
  std::set<Symbol> allowed;

  bool operator()(const Configuration& c) const { return allowed.count(c.state[component]) > 0; }
};

class Parser {
 public:
  Parser(std::string_view text, const BuiltNetwork& net) : text_(text), net_(net) {}

  ConfigPredicate parse() {
    auto e = parse_or();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] static void fail_at(std::size_t pos, const std::string& msg) { throw ParseError(1, pos + 1, msg); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip_space();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  }

  // '-' continues a name only when a letter follows, so "a-b" is a name and
  // "x)-1" is a subtraction.
  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (ident_char(c)) {
        ++pos_;
      } else if (c == '-' && pos_ > start && pos_ + 1 < text_.size() &&
                 std::isalpha(static_cast<unsigned char>(text_[pos_ + 1]))) {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  bool at_keyword(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) return false;
    const std::size_t end = pos_ + word.size();
    return end == text_.size() || !(ident_char(text_[end]) || text_[end] == '@' || text_[end] == '*');
  }

  ConfigPredicate parse_or() {
    auto lhs = parse_and();
    while (eat("||")) {
      auto rhs = parse_and();
      lhs = [lhs, rhs](const Configuration& c) { return lhs(c) || rhs(c); };
    }
    return lhs;
  }

  ConfigPredicate parse_and() {
    auto lhs = parse_not();
    while (eat("&&")) {
      auto rhs = parse_not();
      lhs = [lhs, rhs](const Configuration& c) { return lhs(c) && rhs(c); };
    }
    return lhs;
  }

  ConfigPredicate parse_not() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '!' && text_.substr(pos_, 2) != "!=") {
      ++pos_;
      auto inner = parse_not();
      return [inner](const Configuration& c) { return !inner(c); };
    }
    if (at_keyword("true")) {
      pos_ += 4;
      return [](const Configuration&) { return true; };
    }
    if (at_keyword("false")) {
      pos_ += 5;
      return [](const Configuration&) { return false; };
    }
    if (pos_ < text_.size() && text_[pos_] == '(') {
      // Either a parenthesized boolean or the start of an arithmetic
      // comparison; try boolean first and fall back.
      const std::size_t saved = pos_;
      try {
        ++pos_;
        auto inner = parse_or();
        expect(")");
        if (!comparison_ahead()) return inner;
      } catch (const ParseError&) {
      }
      pos_ = saved;
      return parse_comparison();
    }
    if (starts_number() || at_keyword("count") || at_keyword("pending")) return parse_comparison();
    auto tests = parse_test();
    return [tests](const Configuration& c) {
      for (const auto& t : tests) {
        if (t(c)) return true;
      }
      return false;
    };
  }

  bool starts_number() {
    skip_space();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  bool comparison_ahead() {
    skip_space();
    for (std::string_view op : {"==", "!=", "<", ">", "+", "-"}) {
      if (text_.substr(pos_, op.size()) == op) return true;
    }
    return false;
  }

  ConfigPredicate parse_comparison() {
    auto lhs = parse_sum();
    using Cmp = std::function<bool(long, long)>;
    Cmp cmp;
    if (eat("==")) cmp = std::equal_to<long>();
    else if (eat("!=")) cmp = std::not_equal_to<long>();
    else if (eat("<=")) cmp = std::less_equal<long>();
    else if (eat(">=")) cmp = std::greater_equal<long>();
    else if (eat("<")) cmp = std::less<long>();
    else if (eat(">")) cmp = std::greater<long>();
    else fail("expected a comparison operator");
    auto rhs = parse_sum();
    return [lhs, rhs, cmp](const Configuration& c) { return cmp(lhs(c), rhs(c)); };
  }

  Number parse_sum() {
    auto lhs = parse_term();
    for (;;) {
      if (eat("+")) {
        auto rhs = parse_term();
        lhs = [lhs, rhs](const Configuration& c) { return lhs(c) + rhs(c); };
      } else if (eat("-")) {
        auto rhs = parse_term();
        lhs = [lhs, rhs](const Configuration& c) { return lhs(c) - rhs(c); };
      } else {
        return lhs;
      }
    }
  }

  Number parse_term() {
    if (starts_number()) {
      long v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + (text_[pos_++] - '0');
      }
      return [v](const Configuration&) { return v; };
    }
    if (eat("(")) {
      auto inner = parse_sum();
      expect(")");
      return inner;
    }
    if (at_keyword("count")) {
      pos_ += 5;
      expect("(");
      std::vector<Atom> atoms;
      do {
        auto more = parse_test();
        atoms.insert(atoms.end(), more.begin(), more.end());
      } while (eat(","));
      expect(")");
      return [atoms](const Configuration& c) {
        long n = 0;
        for (const auto& a : atoms) n += a(c) ? 1 : 0;
        return n;
      };
    }
    if (at_keyword("pending")) {
      pos_ += 7;
      return parse_pending();
    }
    fail("expected a number, count(...) or pending(...)");
  }

  Number parse_pending() {
    expect("(");
    const std::size_t close = text_.find(')', pos_);
    if (close == std::string_view::npos) fail("expected ')'");
    std::string_view body = text_.substr(pos_, close - pos_);
    auto trim = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      return s;
    };
    std::optional<std::string> label;
    std::string_view character = body;
    if (const auto colon = body.find(':'); colon != std::string_view::npos) {
      label = std::string(trim(body.substr(0, colon)));
      character = body.substr(colon + 1);
      bool known = false;
      for (const auto& ch : net_.channels) known = known || ch.label == *label;
      if (!known) fail("unknown channel '" + *label + "'");
    }
    character = trim(character);
    std::optional<Symbol> sym;
    if (!character.empty()) sym = Symbol(character);
    pos_ = close + 1;
    return [label, sym](const Configuration& c) -> long {
      if (!c.pending) return 0;
      if (label && c.pending->channel.label != *label) return 0;
      if (sym && c.pending->character != *sym) return 0;
      return 1;
    };
  }

  /// INSTANCE '@' STATE | INSTANCE '@' '{' STATE (',' STATE)* '}', one atom
  /// per matching instance.
  std::vector<Atom> parse_test() {
    skip_space();
    const std::size_t at = pos_;
    const std::string inst = identifier();
    const bool glob = eat("*");
    expect("@");
    std::vector<std::string> states;
    if (eat("{")) {
      do states.push_back(identifier());
      while (eat(","));
      expect("}");
    } else {
      states.push_back(identifier());
    }

    std::vector<Atom> out;
    const auto& instances = net_.spec.instances;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const std::string& name = instances[i].name;
      const bool hit = glob ? name.compare(0, inst.size(), inst) == 0 : name == inst;
      if (!hit) continue;
      const Slice slice = net_.index.states.at(i);
      if (slice.width != 1) fail_at(at, "instance '" + name + "' has a composite state");
      Atom atom{slice.offset, {}};
      for (const auto& s : states) {
        const Symbol sym(s);
        if (!instances[i].automaton.signature().states.contains(StateVector(std::vector<Symbol>{sym}))) {
          fail_at(at, "instance '" + name + "' has no state '" + s + "'");
        }
        atom.allowed.insert(sym);
      }
      out.push_back(std::move(atom));
    }
    if (out.empty()) fail_at(at, "no instance matches '" + inst + (glob ? "*'" : "'"));
    return out;
  }

  std::string_view text_;
  const BuiltNetwork& net_;
  std::size_t pos_ = 0;
};

}  // namespace

ConfigPredicate parse_predicate(std::string_view text, const BuiltNetwork& network) {
  return Parser(text, network).parse();
}

}  // namespace pw
