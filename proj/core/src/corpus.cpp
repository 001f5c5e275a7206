#include "pw/corpus.hpp"

#include <algorithm>
#include <string_view>
#include <utility>

#include "pw/error.hpp"

namespace pw {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_corpus();
}

namespace {

std::string_view embedded(std::string_view stem) {
  for (const auto& [name, text] : detail::embedded_corpus()) {
    if (name == stem) return text;
  }
  throw PreconditionError("unknown example '" + std::string(stem) + "'");
}

const AutomatonDecl& decl_from(const Document& doc, std::string_view name) {
  if (const auto* a = doc.find_automaton(name)) return *a;
  throw Error("corpus is missing automaton '" + std::string(name) + "'");
}

PortRef port(std::string instance, std::string component) { return PortRef{std::move(instance), std::move(component), {}}; }

}  // namespace

std::string ring_network_name(std::size_t n, RingAdministrator admin) {
  std::string name = "ring" + std::to_string(n);
  if (admin == RingAdministrator::Deterministic) name += "_det";
  if (admin == RingAdministrator::DeterministicMutant) name += "_det_mutant";
  return name;
}

Document ring_document(std::size_t n, RingAdministrator admin) {
  if (n < 2) throw PreconditionError("a ring needs at least two nodes");
  const Document mutex = parse_document(embedded("mutex"));
  const Document ring = parse_document(embedded("token_ring"));
  const Document coordinated = parse_document(embedded("administrator"));
  const Document det = parse_document(embedded("det_admin"));
  const bool coord = admin == RingAdministrator::Coordinated;
  const std::string det_name = admin == RingAdministrator::DeterministicMutant ? "D_mutant" : "D";

  Document doc;
  doc.automata.push_back(decl_from(mutex, "U"));
  if (coord) {
    doc.automata.push_back(decl_from(mutex, "C"));
    doc.automata.push_back(decl_from(ring, "R"));
  } else {
    doc.automata.push_back(decl_from(det, det_name));
  }
  doc.automata.push_back(decl_from(ring, "T"));

  NetworkDecl net;
  net.name = ring_network_name(n, admin);
  auto idx = [](std::size_t i) { return std::to_string(i); };
  // The administrator's user-facing and ring-facing instance at node i.
  auto user_side = [&](std::size_t i) { return (coord ? "C" : "D") + idx(i); };
  auto ring_side = [&](std::size_t i) { return (coord ? "R" : "D") + idx(i); };

  for (std::size_t i = 1; i <= n; ++i) net.uses.push_back(UseDecl{"U", "U" + idx(i), std::nullopt});
  for (std::size_t i = 1; i <= n; ++i) {
    if (coord) {
      net.uses.push_back(UseDecl{"C", "C" + idx(i), std::nullopt});
      net.uses.push_back(
          UseDecl{"R", "R" + idx(i), i == 1 ? std::optional<std::string>("avlb") : std::nullopt});
    } else {
      net.uses.push_back(
          UseDecl{det_name, "D" + idx(i), i == 1 ? std::optional<std::string>("ready") : std::nullopt});
    }
  }
  for (std::size_t i = 1; i <= n; ++i) {
    net.uses.push_back(UseDecl{"T", "T" + idx(i), i == 1 ? std::optional<std::string>("triggered") : std::nullopt});
  }

  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t next = i % n + 1;
    net.channels.push_back({"u" + idx(i) + ">a" + idx(i), port("U" + idx(i), "out"), port(user_side(i), "in")});
    net.channels.push_back({"a" + idx(i) + ">u" + idx(i), port(user_side(i), "out"), port("U" + idx(i), "in")});
    net.channels.push_back({"tok" + idx(i), port(ring_side(i), "tok_out"), port(ring_side(next), "tok_in")});
    net.channels.push_back({"trig" + idx(i), port(ring_side(i), "trig"), port("T" + idx(i), "in")});
    net.channels.push_back({"tmo" + idx(i), port("T" + idx(i), "out"), port(ring_side(i), "tmr_in")});
  }

  if (coord) {
    const NetworkDecl* admin_net = coordinated.find_network("admin");
    if (!admin_net) throw Error("corpus is missing network 'admin'");
    for (std::size_t i = 1; i <= n; ++i) {
      for (ConditionDecl c : admin_net->conditions) {
        c.name += "_" + idx(i);
        c.scope = {"C" + idx(i), "R" + idx(i)};
        net.conditions.push_back(std::move(c));
      }
    }
  }
  doc.networks.push_back(std::move(net));
  return doc;
}

Document ring_comparison_document(std::size_t n) {
  Document doc;
  for (auto admin : {RingAdministrator::Coordinated, RingAdministrator::Deterministic,
                     RingAdministrator::DeterministicMutant}) {
    Document part = ring_document(n, admin);
    for (auto& a : part.automata) {
      if (!doc.find_automaton(a.name)) doc.automata.push_back(std::move(a));
    }
    for (auto& net : part.networks) doc.networks.push_back(std::move(net));
  }
  return doc;
}

namespace {

constexpr std::size_t kRingSizes[] = {2, 3};

}  // namespace

std::vector<std::string> example_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : detail::embedded_corpus()) out.emplace_back(name);
  for (std::size_t n : kRingSizes) out.push_back("ring" + std::to_string(n));
  std::sort(out.begin(), out.end());
  return out;
}

std::string example_text(std::string_view name) {
  for (std::size_t n : kRingSizes) {
    if (name == "ring" + std::to_string(n)) {
      return "# Generated ring of " + std::to_string(n) +
             " nodes: the coordinated administrators, the deterministic\n"
             "# candidate, and the candidate with its completion grant deleted.\n\n" +
             serialize(ring_comparison_document(n));
    }
  }
  return std::string(embedded(name));
}

}  // namespace pw
