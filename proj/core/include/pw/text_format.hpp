#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pw/automaton.hpp"
#include "pw/network.hpp"

namespace pw {

// The .pw text format.
//
//   document   := (automaton | network)*
//   automaton  := 'automaton' NAME '{' item* '}'
//     'states' NAME (',' NAME)* ';'
//     'initial' NAME ';'
//     'inputs'  COMP ':' '{' CHARS '}' (',' COMP ':' '{' CHARS '}')* ';'     (likewise 'outputs')
//     'accept' 'final' '{' NAMES '}' ';'  |  'accept' 'muller' '{' '{' NAMES '}' (',' ...)* '}' ';'
//     'trans' NAME '->' NAME 'on' CHAR '/' CHAR ';'        CHAR := COMP '.' NAME | '-'
//   network    := 'network' NAME '{' item* '}'
//     'use' NAME ['as' NAME] ['initial' NAME] (',' ...)* ';'
//     'channel' [STRING ':'] INST '.' PORT '->' INST '.' PORT ';'
//         PORT := COMP | 'out' '[' N ']' | 'in' '[' N ']'
//     'condition' NAME ['on' '(' INST (',' INST)* ')'] ':' ['from' PAT] ['to' PAT]
//         ['input' CPAT] ['output' CPAT] 'deny' ';'
//         PAT  := '(' ('*' | NAME) (',' ...)* ')'
//         CPAT := 'any' | 'spontaneous' | INST '.' COMP ['.' NAME]
//
// Comments run from '#' or '//' to the end of the line. A condition without
// 'on' ranges over all instances of the network.

struct TransitionDecl {
  std::string from, to, input, output;  // characters as "comp.ch" or "-"
  friend bool operator==(const TransitionDecl&, const TransitionDecl&) = default;
};

struct AlphabetDecl {
  std::string component;
  std::vector<std::string> characters;
  friend bool operator==(const AlphabetDecl&, const AlphabetDecl&) = default;
};

struct AutomatonDecl {
  std::string name;
  std::vector<std::string> states;
  std::optional<std::string> initial;
  std::vector<AlphabetDecl> inputs;
  std::vector<AlphabetDecl> outputs;
  std::optional<AcceptanceMode> accept;
  std::vector<std::string> finals;
  std::vector<std::vector<std::string>> muller;
  std::vector<TransitionDecl> transitions;

  friend bool operator==(const AutomatonDecl&, const AutomatonDecl&) = default;
};

struct UseDecl {
  std::string automaton;
  std::optional<std::string> alias;
  std::optional<std::string> initial;

  std::string instance() const { return alias ? *alias : automaton; }
  friend bool operator==(const UseDecl&, const UseDecl&) = default;
};

/// A channel endpoint: a component by name, or by index when `index` is set.
struct PortRef {
  std::string instance;
  std::string component;
  std::optional<std::size_t> index;
  friend bool operator==(const PortRef&, const PortRef&) = default;
};

struct ChannelDecl {
  std::optional<std::string> label;
  PortRef from;
  PortRef to;
  friend bool operator==(const ChannelDecl&, const ChannelDecl&) = default;
};

struct CharPatternDecl {
  enum class Kind { Any, Spontaneous, Component, Literal };
  Kind kind = Kind::Any;
  std::string instance, component, character;
  friend bool operator==(const CharPatternDecl&, const CharPatternDecl&) = default;
};

struct ConditionDecl {
  std::string name;
  std::vector<std::string> scope;  // empty: all instances
  std::vector<std::string> from;   // "*" is the wildcard; empty: all wildcards
  std::vector<std::string> to;
  CharPatternDecl input;
  CharPatternDecl output;
  friend bool operator==(const ConditionDecl&, const ConditionDecl&) = default;
};

struct NetworkDecl {
  std::string name;
  std::vector<UseDecl> uses;
  std::vector<ChannelDecl> channels;
  std::vector<ConditionDecl> conditions;
  friend bool operator==(const NetworkDecl&, const NetworkDecl&) = default;
};

struct Document {
  std::vector<AutomatonDecl> automata;
  std::vector<NetworkDecl> networks;

  const AutomatonDecl* find_automaton(std::string_view name) const;
  const NetworkDecl* find_network(std::string_view name) const;

  /// Throws PreconditionError for an unknown name.
  Nfioa automaton(std::string_view name) const;
  NetworkSpec network(std::string_view name) const;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Parses and resolves every declaration. Throws ParseError with the
/// position of the offending token, for syntax errors and for references to
/// undeclared states, characters, components or instances alike.
Document parse_document(std::string_view text);

/// Canonical text: declarations in document order, one item per line.
std::string serialize(const Document& doc);

Nfioa build_automaton(const AutomatonDecl& decl);
NetworkSpec build_network_spec(const Document& doc, const NetworkDecl& decl);

/// The declaration text of an automaton that was not parsed, for emitting
/// generated examples. Only dimension-1 automata can be expressed.
AutomatonDecl to_decl(const Nfioa& a);

}  // namespace pw
