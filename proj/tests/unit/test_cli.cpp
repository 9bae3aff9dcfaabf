#include "doctest.h"

#include "zsparse_cli/cli.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct Run {
  int code;
  json report;
  std::string err;
};

Run run(const std::string& line) {
  std::ostringstream out, err;
  const int code = zsparse::cli::run(zsparse::cli::split_command_line(line), out, err);
  json j;
  try {
    j = json::parse(out.str());
  } catch (const json::exception&) {
    j = out.str();
  }
  return {code, j, err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("command line splitting") {
    CHECK(zsparse::cli::split_command_line(R"(solve --eq "1, 1,-1" --verify)") ==
          std::vector<std::string>{"solve", "--eq", "1, 1,-1", "--verify"});
    CHECK(zsparse::cli::split_command_line("").empty());
  }

  TEST_CASE("reports carry the schema and timing") {
    const auto r = run(R"(solve --set powers:2 --eq "1,1,-1" --verify)");
    CHECK(r.code == 0);
    CHECK(r.report["schema"] == zsparse::cli::kSchema);
    CHECK(r.report["command"] == "solve");
    CHECK(r.report.contains("timing_ms"));
    CHECK(r.report["result"]["families"][0]["base_exponents"] == json({"1", "1", "2"}));
    CHECK(r.report["verify"]["match"] == true);
  }

  TEST_CASE("intersect reports the order-stepped progression") {
    const auto r = run("intersect powers:2 --residue 1 --mod 7");
    CHECK(r.code == 0);
    CHECK(r.report["result"]["progressions"] == json::parse(R"([{"start":"3","step":"3"}])"));
  }

  TEST_CASE("usage errors exit with 2") {
    auto r = run(R"(solve --set powers:2 --eq "")");
    CHECK(r.code == zsparse::cli::kUsageError);
    CHECK(r.report["error"]["type"] == "usage_error");
    CHECK(run("frobnicate").code == zsparse::cli::kUsageError);
    CHECK(run("").code == zsparse::cli::kUsageError);
    CHECK(run("intersect powers:2 --residue 1").code == zsparse::cli::kUsageError);
  }

  TEST_CASE("parse errors carry a position") {
    const auto r = run(R"x(qe "EXISTS y. y =")x");
    CHECK(r.code == zsparse::cli::kDomainError);
    CHECK(r.report["error"]["type"] == "parse_error");
    CHECK(r.report["error"]["position"] == 13);
  }

  TEST_CASE("domain errors exit with 1") {
    const auto r = run(R"(solve --set powers:2 --eq "1,0")");
    CHECK(r.code == zsparse::cli::kDomainError);
    CHECK(r.report["error"]["type"] == "domain_error");
    CHECK(run("smith --rank 2 --gens 1,2,3").code == zsparse::cli::kDomainError);
  }

  TEST_CASE("global flags") {
    std::ostringstream out, err;
    CHECK(zsparse::cli::run({"--pretty", "types", "--moduli", "2,3"}, out, err) == 0);
    CHECK(out.str().find("result:\n  count: 6\n") != std::string::npos);
    CHECK(out.str().find("moduli: [2, 3]") != std::string::npos);
    std::ostringstream late;
    zsparse::cli::run({"types", "--moduli", "2,3", "--pretty"}, late, err);
    CHECK(late.str().find("result:\n  count: 6\n") != std::string::npos);
    CHECK(run("--verify types --moduli 2,4,8").report["verify"]["match"] == true);
  }

  TEST_CASE("every subcommand answers") {
    const char* lines[] = {
        "fac-class --residue 0 --mod 3",
        R"x(qe "EXISTS y. (y = s(x) AND Q[0,2](y))" --verify)x",
        R"x(translate --set powers:2 --eq "1,1,-1" --verify)x",
        R"x(translate --set powers:2 --congruence "1,-1,5" --verify)x",
        R"x(covers --set powers:3 --families "1+3a;2a" --coset "1,0" --verify)x",
        R"x(gamma --set powers:2 --clause "y != a + b" --params "b=1" --verify)x",
        R"x(eval "EXISTS y. ALL a IN P. y != a" --set powers:2 --verify)x",
        R"x(smith --rank 2 --gens "3,0;0,2" --verify)x",
        R"x(charcheck --rank 2 --gens "3,0;0,2" --verify)x",
        "sparse-check powers:3 --prefix 8 --verify",
        R"x(solve --set factorials --eq "1,-1" --verify)x",
    };
    for (const char* l : lines) {
      INFO(std::string(l));
      const auto r = run(l);
      CHECK(r.code == 0);
      CHECK(r.report.contains("result"));
      if (r.report.contains("verify")) CHECK(r.report["verify"]["match"] == true);
    }
  }

  TEST_CASE("corpus runner") {
    const std::string path = "zsparse_cli_test.corpus";
    {
      std::ofstream f(path);
      f << "# one good, one wrong\n$ types --moduli 2,3\n"
        << R"({"command":"types","inputs":{"moduli":["2","3"]},"result":{"count":"6"},"schema":"zsparse.report/1"})"
        << "\n$ types --moduli 2\n"
        << R"({"command":"types","inputs":{"moduli":["2"]},"result":{"count":"3"},"schema":"zsparse.report/1"})"
        << "\n";
    }
    auto r = run("corpus " + path);
    CHECK(r.code == 1);
    CHECK(r.report["result"]["entries"] == 2);
    CHECK(r.report["result"]["failed"] == 1);
    CHECK(r.report["result"]["failures"][0]["line"] == 4);
    {
      std::ofstream f(path);
      f << "$ types --moduli 2\n";
    }
    r = run("corpus " + path);
    CHECK(r.code == 1);
    CHECK(r.report["error"]["type"] == "domain_error");
    std::remove(path.c_str());
    CHECK(run("corpus /nonexistent/file.corpus").code == 1);
  }
}
