#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef SERIATE_CLI_PATH
#error "SERIATE_CLI_PATH must point at the built CLI binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string out_path = "cli_out_" + std::to_string(counter) + ".tmp";
  const std::string err_path = "cli_err_" + std::to_string(counter) + ".tmp";
  ++counter;
  const std::string cmd =
      std::string(SERIATE_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("cli: similarity prints the published S2") {
  RunResult r = run_cli("similarity --fixture b2");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "3,1,1,2\n1,3,2,2\n1,2,4,3\n2,2,3,5\n");
  CHECK(r.err.find("binariz") != std::string::npos);  // abundance input notice

  RunResult quiet = run_cli("similarity --fixture b2 --binarize");
  CHECK(quiet.err.empty());
  CHECK(quiet.out == r.out);
}

TEST_CASE("cli: similarity of an identity matrix is itself") {
  write_file("cli_eye.csv", "1,0,0\n0,1,0\n0,0,1\n");
  RunResult r = run_cli("similarity --input cli_eye.csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1,0,0\n0,1,0\n0,0,1\n");
  std::remove("cli_eye.csv");
}

TEST_CASE("cli: parse failures exit 2") {
  write_file("cli_ragged.csv", "1,0\n0\n");
  CHECK(run_cli("similarity --input cli_ragged.csv").exit_code == 2);
  CHECK(run_cli("seriate --input cli_ragged.csv").exit_code == 2);
  std::remove("cli_ragged.csv");
  CHECK(run_cli("similarity --fixture no_such").exit_code == 2);
  CHECK(run_cli("similarity --input missing_file.csv").exit_code == 2);
  CHECK(run_cli("similarity").exit_code == 2);  // no input source
  CHECK(run_cli("seriate --fixture b2 --eig-tol -1").exit_code == 2);
}

TEST_CASE("cli: seriate emits tree and report") {
  RunResult r = run_cli("seriate --fixture b2 --format ascii");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("Q\n  2\n  3\n  4\n  1\n") == 0);
  CHECK(r.out.find("frontier: 2,3,4,1") != std::string::npos);
  CHECK(r.out.find("count: 2") != std::string::npos);

  RunResult js = run_cli("seriate --fixture b2");
  CHECK(js.exit_code == 0);
  auto j = nlohmann::json::parse(js.out);
  CHECK(j["count"] == "2");
  CHECK(j["tree"]["kind"] == "q");
  CHECK(j["frontier"] == nlohmann::json::array({2, 3, 4, 1}));
  REQUIRE(j["components"].size() == 1);
  CHECK(j["components"][0]["multiplicity"] == 1);
}

TEST_CASE("cli: ill-posed seriation exits 3 but still emits the result") {
  RunResult r = run_cli("seriate --fixture b5");
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("ill-posed") != std::string::npos);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["count"] == "24");
  bool found = false;
  for (const auto& w : j["warnings"])
    if (w["code"] == "ill-posed-component" && w["units"] == nlohmann::json::array({2, 3, 4}))
      found = true;
  CHECK(found);
}

TEST_CASE("cli: single-unit seriation") {
  write_file("cli_single.csv", "4,0,2\n");
  RunResult r = run_cli("seriate --input cli_single.csv");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["count"] == "1");
  CHECK(j["tree"] == nlohmann::json({{"kind", "leaf"}, {"label", 1}}));
  std::remove("cli_single.csv");
}

TEST_CASE("cli: tree subcommands") {
  const std::string fig1 =
      R"({"kind":"p","children":[
            {"kind":"p","children":[{"kind":"leaf","label":1},{"kind":"leaf","label":2},{"kind":"leaf","label":3}]},
            {"kind":"q","children":[{"kind":"leaf","label":4},{"kind":"leaf","label":5},{"kind":"leaf","label":6}]}]})";
  write_file("cli_fig1.json", fig1);
  const std::string g2 =
      R"({"kind":"q","children":[{"kind":"leaf","label":2},{"kind":"leaf","label":3},
                                 {"kind":"leaf","label":4},{"kind":"leaf","label":1}]})";
  write_file("cli_g2.json", g2);

  CHECK(run_cli("tree count cli_fig1.json").out == "24\n");

  RunResult yes = run_cli("tree contains cli_g2.json 2,3,4,1");
  CHECK(yes.exit_code == 0);
  CHECK(yes.out == "true\n");
  RunResult no = run_cli("tree contains cli_g2.json 2,4,3,1");
  CHECK(no.exit_code == 1);
  CHECK(no.out == "false\n");
  CHECK(run_cli("tree contains cli_g2.json 1,2").exit_code == 2);
  CHECK(run_cli("tree contains cli_g2.json 1,2,x,4").exit_code == 2);

  RunResult fr = run_cli("tree frontiers cli_fig1.json");
  CHECK(fr.exit_code == 0);
  std::istringstream lines(fr.out);
  std::string line;
  int count = 0;
  std::string prev;
  while (std::getline(lines, line)) {
    CHECK(prev < line);  // lexicographic, no duplicates
    prev = line;
    ++count;
  }
  CHECK(count == 24);

  RunResult capped = run_cli("tree frontiers cli_fig1.json --max-enumerate 10");
  CHECK(capped.exit_code == 5);
  CHECK(capped.err.find("24") != std::string::npos);

  RunResult dot = run_cli("tree render cli_fig1.json");
  CHECK(dot.exit_code == 0);
  CHECK(dot.out.find("digraph") == 0);
  CHECK(dot.out.find("shape=triangle") != std::string::npos);

  RunResult ascii = run_cli("tree render cli_fig1.json --format ascii");
  CHECK(ascii.out.find("P\n") == 0);

  write_file("cli_bad.json", "{\"kind\":\"p\"}");
  CHECK(run_cli("tree count cli_bad.json").exit_code == 2);
  std::remove("cli_bad.json");
  std::remove("cli_fig1.json");
  std::remove("cli_g2.json");
}

TEST_CASE("cli: identical invocations give byte-identical output") {
  for (const std::string args :
       {std::string("seriate --fixture b5"), std::string("seriate --fixture actors27x31"),
        std::string("seriate --fixture observers25x24 --format ascii"),
        std::string("similarity --fixture b6 --format json")}) {
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("cli: every fixture is reachable") {
  RunResult names = run_cli("fixtures");
  CHECK(names.exit_code == 0);
  std::istringstream lines(names.out);
  std::string name;
  int n = 0;
  while (std::getline(lines, name)) {
    ++n;
    RunResult r = run_cli("seriate --fixture " + name);
    CHECK((r.exit_code == 0 || r.exit_code == 3));
    CHECK(!r.out.empty());
  }
  CHECK(n == 8);
}

TEST_CASE("cli: policy and tolerance flags are honored") {
  RunResult collapse = run_cli("seriate --fixture b3");
  RunResult first = run_cli("seriate --fixture b3 --policy first-vector");
  CHECK(collapse.exit_code == 3);
  CHECK(first.exit_code == 3);
  auto jc = nlohmann::json::parse(collapse.out);
  auto jf = nlohmann::json::parse(first.out);
  CHECK(jc["policy"] == "p-collapse");
  CHECK(jf["policy"] == "first-vector");
  CHECK(jc["count"] == "24");

  // A huge mult-tol declares every eigenvalue multiple: fully ill-posed.
  RunResult loose = run_cli("seriate --fixture b2 --mult-tol 100");
  CHECK(loose.exit_code == 3);
  auto jl = nlohmann::json::parse(loose.out);
  CHECK(jl["count"] == "24");
}
