#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pw/text_format.hpp"

namespace pw {

/// Which administrator sits at each ring node.
enum class RingAdministrator {
  Coordinated,     // C_i and R_i as separate instances tied by conditions
  Deterministic,   // one D_i instance
  DeterministicMutant,
};

/// The closed ring of n nodes with users: U_i, the administrator, and timer
/// T_i per node. Node 1 starts with the token and a running timer. Channel
/// labels are u{i}>a{i}, a{i}>u{i}, tok{i} (node i to i+1, wrapping),
/// trig{i} and tmo{i}, so that all variants share one event alphabet.
/// Throws PreconditionError unless n >= 2.
Document ring_document(std::size_t n, RingAdministrator admin = RingAdministrator::Coordinated);

/// All three administrator variants of the n-node ring in one document.
Document ring_comparison_document(std::size_t n);

/// Name of the network in ring_document().
std::string ring_network_name(std::size_t n, RingAdministrator admin = RingAdministrator::Coordinated);

/// Bundled examples: the corpus files plus ring2 and ring3 (see
/// ring_comparison_document()), sorted.
std::vector<std::string> example_names();

/// The text of an example. Throws PreconditionError for an unknown name.
std::string example_text(std::string_view name);

}  // namespace pw
