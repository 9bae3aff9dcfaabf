#pragma once

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace CLI {
class App;
}

namespace zsparse::cli {

struct Globals {
  bool verify = false;
  bool pretty = false;
  unsigned jobs = 1;
  std::size_t depth = 10;
  std::uint64_t seed = 1;
};

struct Outcome {
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json result;
  nlohmann::json verify;  // null unless --verify
  int exit_code = 0;
};

using Action = std::function<Outcome()>;

/// Adds every subcommand to `app`; the parsed subcommand stores its work in `action`.
void register_commands(CLI::App& app, const Globals& globals, Action& action);

/// Runs a corpus file; the result lists each entry and any mismatch.
Outcome run_corpus(const std::string& path, const Globals& globals);

}  // namespace zsparse::cli
