#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pw/analysis.hpp"
#include "pw/corpus.hpp"
#include "pw/dot.hpp"
#include "pw/text_format.hpp"

namespace pw::cli {

namespace {

/// Input problems that are not parse errors (unreadable file, unknown name).
struct UsageError : Error {
  using Error::Error;
};

/// A ParseError with its source attached: "SOURCE:line:col: message".
struct SourceParseError : Error {
  SourceParseError(const std::string& source, const ParseError& e) : Error(source + ":" + e.what()) {}
};

std::string read_source(const std::string& path) {
  if (std::filesystem::is_regular_file(path)) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::string stem = std::filesystem::path(path).filename().string();
  if (stem.size() > 3 && stem.ends_with(".pw")) stem.resize(stem.size() - 3);
  for (const auto& name : example_names()) {
    if (name == stem) return example_text(name);
  }
  throw UsageError("cannot read '" + path + "'");
}

Document load(const std::string& path) {
  try {
    return parse_document(read_source(path));
  } catch (const ParseError& e) {
    throw SourceParseError(path, e);
  }
}

NetworkSpec network_of(const Document& doc, const std::string& name) {
  if (!doc.find_network(name)) throw UsageError("no network '" + name + "'");
  return doc.network(name);
}

std::string config_text(const RestrictedAutomaton& r, std::uint32_t id) { return to_string(r.config(id)); }

std::string witness_text(const RestrictedAutomaton& r, const CheckResult& c) {
  std::string s = c.witness ? config_text(r, *c.witness) : "-";
  if (!c.detail.empty()) s += " (" + c.detail + ")";
  return s;
}

void print_graph_summary(std::ostream& out, const RestrictedAutomaton& r) {
  out << "configurations: " << r.config_count() << "\n";
  out << "edges: " << r.edge_count() << "\n";
  for (std::uint32_t i = 0; i < r.config_count(); ++i) out << "  " << i << "\t" << config_text(r, i) << "\n";
}

void print_automaton_summary(std::ostream& out, const Nfioa& a) {
  const auto reach = reachable_states(a);
  out << "automaton: " << a.name() << "\n";
  out << "states: " << a.states().size() << " (" << reach.size() << " reachable)\n";
  out << "transitions: " << a.transitions().size() << "\n";
  for (const auto& t : a.transitions()) out << "  " << to_string(t, a) << "\n";
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_validate(const std::string& file, std::ostream& out) {
  const Document doc = load(file);
  int status = kOk;
  for (const auto& d : doc.automata) {
    const auto diags = validate(build_automaton(d));
    for (const auto& x : diags) {
      out << "automaton " << d.name << ": " << x.message << "\n";
      status = kPropertyFailed;
    }
  }
  for (const auto& n : doc.networks) {
    try {
      const auto net = build_network(doc.network(n.name));
      out << "network " << n.name << ": " << net.graph.config_count() << " configurations\n";
    } catch (const PreconditionError& e) {
      out << "network " << n.name << ": " << e.what() << "\n";
      status = kPropertyFailed;
    }
  }
  out << (status == kOk ? "valid" : "invalid") << ": " << doc.automata.size() << " automata, " << doc.networks.size()
      << " networks\n";
  return status;
}

int cmd_product(const std::string& file, const std::vector<std::string>& names, std::ostream& out) {
  const Document doc = load(file);
  std::vector<Nfioa> factors;
  for (const auto& n : names) {
    if (!doc.find_automaton(n)) throw UsageError("no automaton '" + n + "'");
    factors.push_back(doc.automaton(n));
  }
  print_automaton_summary(out, weak_product(factors).automaton);
  return kOk;
}

int cmd_cbr(const std::string& file, const std::string& net, std::ostream& out) {
  NetworkSpec spec = network_of(load(file), net);
  spec.conditions.clear();
  const auto built = build_network(spec);
  out << "network: " << net << " (channels only)\n";
  print_graph_summary(out, built.graph);
  return kOk;
}

int cmd_cond(const std::string& file, const std::string& net, std::ostream& out) {
  const NetworkSpec spec = network_of(load(file), net);
  const auto c = condition_product(spec);
  out << "network: " << net << " (conditions only)\n";
  print_automaton_summary(out, c.automaton);
  return kOk;
}

int cmd_check(const std::string& property, const std::string& file, const std::string& net,
              const std::vector<std::string>& onto, std::ostream& out) {
  const NetworkSpec spec = network_of(load(file), net);

  if (property == "quasidet") {
    QuasiDeterminismResult q;
    if (spec.channels.empty()) {
      q = is_quasi_deterministic(condition_product(spec).automaton);
    } else {
      q = is_quasi_deterministic(build_network(spec).graph);
    }
    if (q) {
      out << "quasidet: yes\n";
      return kOk;
    }
    const Nfioa shape = condition_product(NetworkSpec{spec.name, spec.instances, {}, {}}).automaton;
    out << "quasidet: no, at " << q.location << " on " << to_string(q.input, shape.inputs()) << "\n";
    for (const auto& t : q.competing) out << "  " << to_string(t, shape) << "\n";
    return kPropertyFailed;
  }

  if (property == "unaffected") {
    if (onto.empty()) throw UsageError("check unaffected needs --onto INSTANCE");
    NetworkSpec bare = spec;
    bare.conditions.clear();
    const Composite base = condition_product(bare);
    std::set<std::size_t> states, inputs, outputs;
    for (const auto& name : onto) {
      const auto i = spec.instance(name);
      if (!i) throw UsageError("no instance '" + name + "'");
      auto add = [](std::set<std::size_t>& s, Slice sl) {
        for (std::size_t k = 0; k < sl.width; ++k) s.insert(sl.offset + k);
      };
      add(states, base.index.states[*i]);
      add(inputs, base.index.inputs[*i]);
      add(outputs, base.index.outputs[*i]);
    }
    const auto conditions = global_conditions(spec, base.index);
    const auto p = Projection::keep(base.automaton, states, inputs, outputs);
    const auto diff = flattened_difference(project(base.automaton, p), project(cond(base.automaton, conditions), p));
    if (!diff) {
      out << "unaffected: yes\n";
      return kOk;
    }
    out << "unaffected: no, " << *diff << "\n";
    return kPropertyFailed;
  }

  const auto built = build_network(spec);
  const auto& g = built.graph;
  if (property == "wellformed") {
    const auto r = is_well_formed(g);
    out << "wellformed: " << (r ? "yes" : "no, witness " + witness_text(g, r)) << "\n";
    return r ? kOk : kPropertyFailed;
  }
  if (property == "consistent") {
    if (const auto w = is_well_formed(g); !w) {
      out << "consistent: no, not well-formed, witness " << witness_text(g, w) << "\n";
      return kPropertyFailed;
    }
    const auto r = is_consistent(g);
    out << "consistent: " << (r ? "yes" : "no, witness " + witness_text(g, r)) << "\n";
    return r ? kOk : kPropertyFailed;
  }
  if (property == "protocol") {
    const auto open = open_components(g.base(), g.channels());
    const auto w = is_well_formed(g);
    const bool closed = open.inputs.empty() && open.outputs.empty();
    if (closed && w) {
      out << "protocol: yes\n";
      return kOk;
    }
    out << "protocol: no";
    for (auto k : open.inputs) out << ", open input " << g.base().inputs()[k].name;
    for (auto k : open.outputs) out << ", open output " << g.base().outputs()[k].name;
    if (!w) out << ", not well-formed at " << witness_text(g, w);
    out << "\n";
    return kPropertyFailed;
  }
  throw UsageError("unknown property '" + property + "'");
}

std::vector<std::size_t> read_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read script '" + path + "'");
  std::vector<std::size_t> out;
  std::string tok;
  while (in >> tok) {
    if (tok.starts_with("#")) {
      std::getline(in, tok);
      continue;
    }
    try {
      out.push_back(std::stoul(tok));
    } catch (const std::exception&) {
      throw UsageError("script '" + path + "': not a choice index: '" + tok + "'");
    }
  }
  return out;
}

int cmd_run(const std::string& file, const std::string& net, const std::vector<std::string>& scheduler,
            std::size_t bound, std::ostream& out) {
  if (scheduler.empty()) throw UsageError("--scheduler needs random SEED, exhaustive or script FILE");
  Scheduler s;
  if (scheduler[0] == "random" && scheduler.size() == 2) {
    s = RandomScheduler{std::stoull(scheduler[1])};
  } else if (scheduler[0] == "exhaustive" && scheduler.size() == 1) {
    s = ExhaustiveScheduler{};
  } else if (scheduler[0] == "script" && scheduler.size() == 2) {
    s = ScriptedScheduler{read_script(scheduler[1])};
  } else {
    throw UsageError("--scheduler needs random SEED, exhaustive or script FILE");
  }
  const auto built = build_network(network_of(load(file), net));
  const auto& g = built.graph;
  const auto runs = run(g, s, bound);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    out << "run " << i << " (" << r.transitions.size() << " steps)\n";
    out << "  0\t" << config_text(g, r.configs[0]) << "\n";
    for (std::size_t k = 0; k < r.transitions.size(); ++k) {
      out << "  " << k + 1 << "\t" << config_text(g, r.configs[k + 1]) << "\t"
          << to_string(g.base().transitions()[r.transitions[k]], g.base()) << "\n";
    }
  }
  return kOk;
}

int cmd_laws(const std::string& which, std::size_t seeds, std::ostream& out) {
  std::vector<Law> laws;
  if (which == "all") {
    laws.assign(all_laws().begin(), all_laws().end());
  } else if (auto l = parse_law(which)) {
    laws.push_back(*l);
  } else {
    std::string known;
    for (Law l : all_laws()) known += " " + std::string(law_name(l));
    throw UsageError("unknown law '" + which + "'; known:" + known);
  }
  int status = kOk;
  for (Law l : laws) {
    const auto r = run_law_suite(l, seeds);
    out << law_name(l) << ": " << r.holds << " hold, " << r.fails << " fail, " << r.not_applicable
        << " not applicable\n";
    if (r.fails) {
      out << "  first failing seed " << *r.first_failing_seed << ": " << r.first_failure << "\n";
      status = kPropertyFailed;
    }
  }
  return status;
}

int cmd_equiv(const std::string& file, const std::string& a, const std::string& b, std::optional<std::size_t> bound,
              std::ostream& out) {
  const Document doc = load(file);
  const auto na = build_network(network_of(doc, a));
  const auto nb = build_network(network_of(doc, b));
  const auto r = trace_equivalent(na.graph, nb.graph, bound);
  if (r.equivalent) {
    out << "equivalent: yes" << (r.complete ? "" : " up to the bound") << " (" << r.sufficient_bound
        << " state-set pairs, depth " << r.depth << ")\n";
    return kOk;
  }
  out << "equivalent: no, distinguishing trace " << to_string(*r.distinguishing) << "\n";
  return kPropertyFailed;
}

int cmd_safety(const std::string& file, const std::string& net, const std::string& predicate, std::ostream& out) {
  const auto built = build_network(network_of(load(file), net));
  ConfigPredicate p;
  try {
    p = parse_predicate(predicate, built);
  } catch (const ParseError& e) {
    throw SourceParseError("predicate", e);
  }
  const auto r = safety_query(built.graph, p);
  if (r.ok) {
    out << "safety: ok (" << r.explored << " configurations)\n";
    return kOk;
  }
  const auto& g = built.graph;
  out << "safety: violated after " << r.transitions.size() << " steps\n";
  out << "  0\t" << config_text(g, r.path[0]) << "\n";
  for (std::size_t k = 0; k < r.transitions.size(); ++k) {
    out << "  " << k + 1 << "\t" << config_text(g, r.path[k + 1]) << "\t"
        << to_string(g.base().transitions()[r.transitions[k]], g.base()) << "\n";
  }
  return kPropertyFailed;
}

int cmd_dot(const std::string& file, const std::string& target, std::ostream& out) {
  const Document doc = load(file);
  if (doc.find_automaton(target)) {
    out << export_dot(doc.automaton(target));
  } else if (doc.find_network(target)) {
    out << export_dot(build_network(doc.network(target)).graph);
  } else {
    throw UsageError("no automaton or network '" + target + "'");
  }
  return kOk;
}

int cmd_examples(const std::vector<std::string>& args, std::ostream& out) {
  if (args.size() == 1 && args[0] == "list") {
    for (const auto& n : example_names()) out << n << "\n";
    return kOk;
  }
  if (args.size() == 2 && args[0] == "emit") {
    out << example_text(args[1]);
    return kOk;
  }
  throw UsageError("examples list | examples emit NAME");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pw: compose, restrict and check interacting I/O automata"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string file, net, net2, property, predicate, target, law;
  std::vector<std::string> names, scheduler, onto, example_args;
  std::size_t bound = 100, seeds = 200;
  std::optional<std::size_t> equiv_bound;

  auto* validate_cmd = app.add_subcommand("validate", "parse a file and validate every declaration");
  validate_cmd->add_option("FILE", file)->required();

  auto* product_cmd = app.add_subcommand("product", "weakly synchronized product of automata");
  product_cmd->add_option("FILE", file)->required();
  product_cmd->add_option("NAMES", names)->required();

  auto* cbr_cmd = app.add_subcommand("cbr", "channel-based restriction of a network, conditions ignored");
  cbr_cmd->add_option("FILE", file)->required();
  cbr_cmd->add_option("NETWORK", net)->required();

  auto* cond_cmd = app.add_subcommand("cond", "condition-based restriction of a network, channels ignored");
  cond_cmd->add_option("FILE", file)->required();
  cond_cmd->add_option("NETWORK", net)->required();

  auto* check_cmd = app.add_subcommand("check", "check a property of a network");
  check_cmd->add_option("PROPERTY", property)
      ->required()
      ->check(CLI::IsMember({"wellformed", "consistent", "protocol", "quasidet", "unaffected"}));
  check_cmd->add_option("FILE", file)->required();
  check_cmd->add_option("NETWORK", net)->required();
  check_cmd->add_option("--onto", onto, "instances kept by the projection (unaffected)");

  auto* run_cmd = app.add_subcommand("run", "execute a network under a scheduler");
  run_cmd->add_option("FILE", file)->required();
  run_cmd->add_option("NETWORK", net)->required();
  run_cmd->add_option("--scheduler", scheduler, "random SEED | exhaustive | script FILE")->required()->expected(1, 2);
  run_cmd->add_option("--bound", bound, "maximum steps per run");

  auto* laws_cmd = app.add_subcommand("laws", "check algebraic laws on random instances");
  laws_cmd->add_option("LAW", law, "all or a law name")->required();
  laws_cmd->add_option("--seeds", seeds, "instances per law");

  auto* equiv_cmd = app.add_subcommand("equiv", "trace equivalence of two networks over channel events");
  equiv_cmd->add_option("FILE", file)->required();
  equiv_cmd->add_option("NET1", net)->required();
  equiv_cmd->add_option("NET2", net2)->required();
  equiv_cmd->add_option("--bound", equiv_bound, "only compare traces up to this length");

  auto* safety_cmd = app.add_subcommand("safety", "search for a configuration violating a predicate");
  safety_cmd->add_option("FILE", file)->required();
  safety_cmd->add_option("NETWORK", net)->required();
  safety_cmd->add_option("--predicate", predicate, "the violation, e.g. 'count(U*@crit) >= 2'")->required();

  auto* dot_cmd = app.add_subcommand("dot", "Graphviz output for an automaton or a network");
  dot_cmd->add_option("FILE", file)->required();
  dot_cmd->add_option("TARGET", target)->required();

  auto* examples_cmd = app.add_subcommand("examples", "list or emit bundled examples");
  examples_cmd->add_option("ARGS", example_args, "list | emit NAME")->required()->expected(1, 2);

  std::vector<const char*> argv{"pw"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*validate_cmd) return cmd_validate(file, out);
    if (*product_cmd) return cmd_product(file, names, out);
    if (*cbr_cmd) return cmd_cbr(file, net, out);
    if (*cond_cmd) return cmd_cond(file, net, out);
    if (*check_cmd) return cmd_check(property, file, net, onto, out);
    if (*run_cmd) return cmd_run(file, net, scheduler, bound, out);
    if (*laws_cmd) return cmd_laws(law, seeds, out);
    if (*equiv_cmd) return cmd_equiv(file, net, net2, equiv_bound, out);
    if (*safety_cmd) return cmd_safety(file, net, predicate, out);
    if (*dot_cmd) return cmd_dot(file, target, out);
    if (*examples_cmd) return cmd_examples(example_args, out);
  } catch (const SourceParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const CapacityError& e) {
    err << "capacity exceeded: " << e.what() << "\n";
    return kPropertyFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace pw::cli
