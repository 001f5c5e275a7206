#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pw::cli {

/// Exit codes: 0 ok, 1 a checked property fails (a witness is printed),
/// 2 usage, input or parse error.
inline constexpr int kOk = 0;
inline constexpr int kPropertyFailed = 1;
inline constexpr int kUsageError = 2;

/// Runs one command; `args` excludes the program name. FILE arguments that
/// do not name an existing file are looked up among the bundled examples
/// ("mutex" or "mutex.pw").
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pw::cli
