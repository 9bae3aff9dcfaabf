#include "zsparse_cli/cli.hpp"

#include "CLI11.hpp"
#include "commands.hpp"
#include "zsparse/errors.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

namespace zsparse::cli {

std::vector<std::string> split_command_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, have = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '\\' && quoted && i + 1 < line.size() && (line[i + 1] == '"' || line[i + 1] == '\\')) {
      cur += line[++i];
    } else if (c == '"') {
      quoted = !quoted;
      have = true;
    } else if (!quoted && (c == ' ' || c == '\t')) {
      if (have) out.push_back(cur);
      cur.clear();
      have = false;
    } else {
      cur += c;
      have = true;
    }
  }
  if (quoted) throw DomainError("unterminated quote in command line");
  if (have) out.push_back(cur);
  return out;
}

namespace {

using nlohmann::json;

bool is_flat(const json& j) {
  if (j.is_object()) return j.empty();
  if (j.is_array()) return std::all_of(j.begin(), j.end(), is_flat);
  return true;
}

// Scalars unquoted, arrays of scalars inline.
std::string inline_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "null";
  if (j.is_object()) return "{}";
  if (!j.is_array()) return j.dump();
  std::string s = "[";
  for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + inline_text(j[i]);
  return s + "]";
}

void render(std::ostream& out, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (is_flat(value)) {
        out << pad << key << ": " << inline_text(value) << '\n';
      } else {
        out << pad << key << ":\n";
        render(out, value, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& item : j) {
      if (is_flat(item)) {
        out << pad << "- " << inline_text(item) << '\n';
      } else {
        out << pad << "-\n";
        render(out, item, indent + 2);
      }
    }
  } else {
    out << pad << inline_text(j) << '\n';
  }
}

// JSON by default; --pretty renders the same report as indented text.
void emit(std::ostream& out, const json& j, bool pretty) {
  if (pretty) {
    render(out, j, 0);
  } else {
    out << j.dump() << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  Action action;
  CLI::App app{"Sparse predicates on the integers: residues, equations, quantifier elimination", "zsparse"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--verify", g.verify, "Append an independent oracle check to the report");
  app.add_flag("--pretty", g.pretty, "Print the report as indented text instead of JSON");
  app.add_option("--jobs", g.jobs, "Worker threads for brute-force oracles")->check(CLI::PositiveNumber);
  app.add_option("--depth", g.depth, "Elements of P inspected by bounded evaluation")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized checks");
  register_commands(app, g, action);

  std::string command = args.empty() ? "" : args.front();
  nlohmann::json report{{"schema", kSchema}, {"command", command}};
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    report["error"] = {{"type", "usage_error"}, {"message", e.what()}};
    emit(out, report, g.pretty);
    return kUsageError;
  }
  for (auto* sub : app.get_subcommands()) command = sub->get_name();
  report["command"] = command;

  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome o = action();
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["inputs"] = o.inputs;
    report["result"] = o.result;
    report["timing_ms"] = ms;
    if (g.verify && !o.verify.is_null()) report["verify"] = o.verify;
    emit(out, report, g.pretty);
    return o.exit_code;
  } catch (const ParseError& e) {
    report["error"] = {{"type", "parse_error"}, {"message", e.what()}, {"position", e.position()}};
  } catch (const DomainError& e) {
    report["error"] = {{"type", "domain_error"}, {"message", e.what()}};
  } catch (const std::exception& e) {
    report["error"] = {{"type", "domain_error"}, {"message", e.what()}};
  }
  emit(out, report, g.pretty);
  return kDomainError;
}

}  // namespace zsparse::cli
