#include "pw/symbol.hpp"

#include <mutex>
#include <unordered_set>

#include "pw/error.hpp"

namespace pw {
namespace {

struct Interner {
  std::mutex mutex;
  // Node-based: element addresses stay valid for the life of the process.
  std::unordered_set<std::string> names;
};

Interner& interner() {
  static Interner instance;
  return instance;
}

}  // namespace

Symbol::Symbol(std::string_view name) {
  if (name.empty() || name == kEpsilonText) {
    throw Error("reserved identifier '" + std::string(name) + "'");
  }
  auto& table = interner();
  std::lock_guard lock(table.mutex);
  text_ = &*table.names.emplace(name).first;
}

std::string_view Symbol::name() const noexcept {
  return text_ ? std::string_view(*text_) : kEpsilonText;
}

std::strong_ordering operator<=>(Symbol a, Symbol b) noexcept {
  if (a.text_ == b.text_) return std::strong_ordering::equal;
  if (a.text_ == nullptr) return std::strong_ordering::less;
  if (b.text_ == nullptr) return std::strong_ordering::greater;
  const int c = a.text_->compare(*b.text_);
  return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

}  // namespace pw
