#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pw/automaton.hpp"
#include "pw/error.hpp"

namespace pw {

struct Slice {
  std::size_t offset = 0;
  std::size_t width = 0;

  friend bool operator==(const Slice&, const Slice&) = default;
};

/// Where each leaf factor of a product lives in the flattened vectors, and
/// how leaves are bracketed into top-level factors.
struct ProductIndex {
  std::vector<Slice> states;
  std::vector<Slice> inputs;
  std::vector<Slice> outputs;
  /// Leaf indices of each top-level factor; contiguous and in order.
  std::vector<std::vector<std::size_t>> groups;

  std::size_t leaf_count() const noexcept { return states.size(); }
  std::size_t factor_count() const noexcept { return groups.size(); }

  /// Slices of top-level factor `f` (the union of its leaves).
  Slice state_slice(std::size_t f) const;
  Slice input_slice(std::size_t f) const;
  Slice output_slice(std::size_t f) const;

  static ProductIndex single(const Nfioa& a);

  friend bool operator==(const ProductIndex&, const ProductIndex&) = default;
};

struct Composite {
  Nfioa automaton;
  ProductIndex index;
};

/// Everything of the weakly synchronized product except its transitions:
/// Cartesian state set, concatenated alphabets, initial vector and the
/// conjunction of acceptance components. Throws PreconditionError on mixed
/// acceptance modes.
Signature product_signature(std::span<const Signature* const> factors);

/// The weakly synchronized product. Exactly one factor moves per transition,
/// from a source whose every component is reachable in its factor. Throws
/// CapacityError when the transition count would exceed `limits`.
Composite weak_product(std::span<const Nfioa> factors, const Limits& limits = {});

/// Product of composites; the leaves of each argument become one group.
Composite weak_product(std::span<const Composite> factors, const Limits& limits = {});

/// Re-brackets the leaves of `c`. Each group lists leaf indices; the groups
/// must cover all leaves contiguously and in order.
Composite associate(const Composite& c, const std::vector<std::vector<std::size_t>>& regrouping);

/// Embeds a transition of one factor into the product: other state
/// components are taken from `context`, other character components are empty.
Transition lift_transition(const Transition& t, const StateVector& context, Slice states, Slice inputs,
                           std::size_t input_width, Slice outputs, std::size_t output_width);

}  // namespace pw
