#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace pw {

/// An interned identifier for a state value or a character.
///
/// The default-constructed symbol is the empty character (or, for state
/// components, the undefined value); it renders as "-". Equality is identity
/// of the interned string, ordering is lexicographic on the text so that every
/// set and every exploration order is reproducible across runs.
class Symbol {
 public:
  constexpr Symbol() noexcept = default;

  /// Interns `name`. Throws pw::Error for "" and "-", which are reserved.
  explicit Symbol(std::string_view name);

  static constexpr Symbol epsilon() noexcept { return Symbol{}; }

  bool is_epsilon() const noexcept { return text_ == nullptr; }
  std::string_view name() const noexcept;

  friend bool operator==(Symbol a, Symbol b) noexcept { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b) noexcept;

  std::size_t hash() const noexcept { return std::hash<const void*>{}(text_); }

 private:
  const std::string* text_ = nullptr;
};

inline constexpr std::string_view kEpsilonText = "-";

}  // namespace pw

template <>
struct std::hash<pw::Symbol> {
  std::size_t operator()(pw::Symbol s) const noexcept { return s.hash(); }
};
