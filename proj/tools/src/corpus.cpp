#include "commands.hpp"
#include "zsparse/errors.hpp"
#include "zsparse_cli/cli.hpp"

#include <fstream>
#include <sstream>

namespace zsparse::cli {
namespace {

nlohmann::json comparable(nlohmann::json j) {
  if (j.is_object()) j.erase("timing_ms");
  return j;
}

}  // namespace

Outcome run_corpus(const std::string& path, const Globals&) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open corpus file '" + path + "'");
  Outcome out;
  out.inputs = {{"path", path}};
  nlohmann::json failures = nlohmann::json::array();
  std::size_t entries = 0, passed = 0;
  std::string line, pending;
  std::size_t pending_line = 0, lineno = 0;
  auto trim = [](const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("$ ", 0) == 0) {
      if (!pending.empty()) throw DomainError("corpus line " + std::to_string(pending_line) + ": command without an expected result");
      pending = t.substr(2);
      pending_line = lineno;
      continue;
    }
    if (pending.empty()) throw DomainError("corpus line " + std::to_string(lineno) + ": expected a '$ ' command line");
    nlohmann::json expected;
    try {
      expected = nlohmann::json::parse(t);
    } catch (const nlohmann::json::exception&) {
      throw DomainError("corpus line " + std::to_string(lineno) + ": malformed expected JSON");
    }
    const auto args = split_command_line(pending);
    if (!args.empty() && args.front() == "corpus") {
      throw DomainError("corpus line " + std::to_string(pending_line) + ": nested corpus runs are not allowed");
    }
    std::ostringstream sout, serr;
    const int code = run(args, sout, serr);
    nlohmann::json actual;
    try {
      actual = nlohmann::json::parse(sout.str());
    } catch (const nlohmann::json::exception&) {
      actual = sout.str();
    }
    ++entries;
    if (comparable(actual) == comparable(expected)) {
      ++passed;
    } else {
      failures.push_back({{"line", pending_line},
                          {"command", pending},
                          {"exit_code", code},
                          {"diff", nlohmann::json::diff(comparable(expected), comparable(actual))}});
    }
    pending.clear();
  }
  if (!pending.empty()) throw DomainError("corpus line " + std::to_string(pending_line) + ": command without an expected result");
  out.result = {{"entries", entries}, {"passed", passed}, {"failed", entries - passed}, {"failures", failures}};
  out.exit_code = passed == entries ? kOk : kDomainError;
  return out;
}

}  // namespace zsparse::cli
