#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result pw_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = pw::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

/// A scratch file removed on scope exit.
struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& text, const char* name = "pw_cli_test.pw")
      : path(std::filesystem::temp_directory_path() / name) {
    std::ofstream(path) << text;
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(pw_run({}).code == pw::cli::kUsageError);
  CHECK(pw_run({"frobnicate"}).code == pw::cli::kUsageError);
  CHECK(pw_run({"check", "nonsense", "mutex", "closed_mutex"}).code == pw::cli::kUsageError);
  CHECK(pw_run({"cbr", "no_such_file.pw", "x"}).code == pw::cli::kUsageError);
  CHECK(pw_run({"cbr", "mutex", "no_such_network"}).code == pw::cli::kUsageError);
  CHECK(pw_run({"run", "mutex", "closed_mutex", "--scheduler", "sometimes"}).code == pw::cli::kUsageError);
}

TEST_CASE("parse errors name the file and position") {
  TempFile f("automaton A {\n  states s;\n  trans s -> t on - / -;\n}\n");
  const auto r = pw_run({"validate", f.path.string()});
  CHECK(r.code == pw::cli::kUsageError);
  CHECK(has(r.err, f.path.string() + ":3:14: undeclared state 't'"));
}

TEST_CASE("validate and examples") {
  const auto v = pw_run({"validate", "mutex.pw"});
  CHECK(v.code == pw::cli::kOk);
  const auto list = pw_run({"examples", "list"});
  CHECK(list.code == pw::cli::kOk);
  std::istringstream lines(list.out);
  std::vector<std::string> names;
  for (std::string line; std::getline(lines, line);) names.push_back(line);
  CHECK(names.size() >= 6);
  CHECK(std::find(names.begin(), names.end(), "ring3") != names.end());
  const auto emitted = pw_run({"examples", "emit", "ring2"});
  CHECK(emitted.code == pw::cli::kOk);
  TempFile f(emitted.out, "pw_cli_ring2.pw");
  CHECK(pw_run({"validate", f.path.string()}).code == pw::cli::kOk);
}

TEST_CASE("restrictions print their graphs") {
  const auto c = pw_run({"cbr", "mutex", "closed_mutex"});
  CHECK(c.code == pw::cli::kOk);
  CHECK(has(c.out, "configurations: 8"));
  CHECK(has(c.out, "(exit,remn|cf-fin)"));
  const auto p = pw_run({"product", "mutex", "U", "C"});
  CHECK(p.code == pw::cli::kOk);
  CHECK(has(p.out, "states: 16"));
  CHECK(pw_run({"cond", "administrator", "admin"}).code == pw::cli::kOk);
}

TEST_CASE("property checks exit 0 when they hold and 1 when they fail") {
  CHECK(pw_run({"check", "wellformed", "mutex", "closed_mutex"}).code == pw::cli::kOk);
  CHECK(pw_run({"check", "consistent", "mutex", "closed_mutex"}).code == pw::cli::kOk);
  CHECK(pw_run({"check", "protocol", "mutex", "closed_mutex"}).code == pw::cli::kOk);
  CHECK(pw_run({"check", "protocol", "mutex", "open_mutex"}).code == pw::cli::kPropertyFailed);
  const auto broken = pw_run({"check", "wellformed", "broken_mutex", "closed_mutex"});
  CHECK(broken.code == pw::cli::kPropertyFailed);
  CHECK(has(broken.out, "(exit,crit|fin)"));
  CHECK(pw_run({"check", "quasidet", "administrator", "admin"}).code == pw::cli::kOk);
  const auto bare = pw_run({"check", "quasidet", "administrator", "admin_uncoordinated"});
  CHECK(bare.code == pw::cli::kPropertyFailed);
  CHECK(has(bare.out, "(exit,interm)"));
  CHECK(pw_run({"check", "unaffected", "administrator", "admin", "--onto", "C"}).code == pw::cli::kOk);
}

TEST_CASE("runs are reproducible") {
  const std::vector<std::string> args{"run", "token_ring", "token_ring3", "--scheduler", "random", "5", "--bound", "30"};
  const auto a = pw_run(args), b = pw_run(args);
  CHECK(a.code == pw::cli::kOk);
  CHECK(a.out == b.out);
  const auto all = pw_run({"run", "mutex", "closed_mutex", "--scheduler", "exhaustive", "--bound", "3"});
  CHECK(all.code == pw::cli::kOk);
  CHECK(has(all.out, "run 0 (3 steps)"));
  TempFile script("0\n");
  CHECK(pw_run({"run", "mutex", "closed_mutex", "--scheduler", "script", script.path.string(), "--bound", "5"}).code ==
        pw::cli::kOk);
}

TEST_CASE("laws, safety, equivalence and dot") {
  const auto laws = pw_run({"laws", "all", "--seeds", "5"});
  CHECK(laws.code == pw::cli::kOk);
  CHECK(has(laws.out, "separation"));
  CHECK(pw_run({"laws", "unknown-law"}).code == pw::cli::kUsageError);

  CHECK(pw_run({"safety", "mutex", "closed_mutex", "--predicate", "U@crit && C@remn"}).code == pw::cli::kOk);
  const auto hit = pw_run({"safety", "mutex", "closed_mutex", "--predicate", "U@exit"});
  CHECK(hit.code == pw::cli::kPropertyFailed);
  CHECK(pw_run({"safety", "mutex", "closed_mutex", "--predicate", "U@@"}).code == pw::cli::kUsageError);

  CHECK(pw_run({"equiv", "mutex", "closed_mutex", "closed_mutex"}).code == pw::cli::kOk);
  const auto det = pw_run({"equiv", "ring2", "ring2_det", "ring2_det_mutant"});
  CHECK(det.code == pw::cli::kPropertyFailed);

  const auto dot = pw_run({"dot", "mutex", "closed_mutex"});
  CHECK(dot.code == pw::cli::kOk);
  CHECK(dot.out.rfind("digraph", 0) == 0);
  CHECK(pw_run({"dot", "mutex", "U"}).code == pw::cli::kOk);
}
