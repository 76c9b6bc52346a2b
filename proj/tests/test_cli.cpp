#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

std::string binary_path() {
  const char* bin = std::getenv("QALAT_BIN");
  REQUIRE(bin != nullptr);
  return bin;
}

std::string source_dir() {
  const char* dir = std::getenv("QALAT_SOURCE_DIR");
  REQUIRE(dir != nullptr);
  return dir;
}

// run the CLI with stderr folded into the captured stream
RunResult run_cli(const std::string& args) {
  std::string cmd = "\"" + binary_path() + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  r.exit_code = WEXITSTATUS(status);
  return r;
}

json run_json(const std::string& args, int expect_exit = 0) {
  RunResult r = run_cli(args + " --format json");
  REQUIRE(r.exit_code == expect_exit);
  return json::parse(r.output);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qalat_cli_test_" + name);
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p);
  REQUIRE(out.good());
  out << content;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("obstruct on the builtin 11n50 graph matches the golden JSON document") {
  json live = run_json("obstruct --builtin 11n50");
  CHECK(live.at("timing_ms").is_number());
  live["timing_ms"] = 0;
  json golden = json::parse(read_file(source_dir() + "/tests/golden/obstruct_11n50.json"));
  CHECK(live == golden);
}

TEST_CASE("obstruct text output carries the verdict and interpretation") {
  RunResult r = run_cli("obstruct --builtin 11n50");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("OBSTRUCTED") != std::string::npos);
  CHECK(r.output.find("not quasi-alternating") != std::string::npos);
}

TEST_CASE("obstruct distinguishes silent results from obstructions") {
  json j = run_json("obstruct --pretzel \"P(2,2,-3)\"");
  CHECK(j.at("verdict") == "NOT_OBSTRUCTED");
  REQUIRE_FALSE(j.at("admissible_embedding").is_null());
  // at least one class is admissible at the searched rank
  bool any_admissible = false;
  for (const json& c : j.at("classes"))
    if (c.at("admissible") == true) any_admissible = true;
  CHECK(any_admissible);
  CHECK(j.at("interpretation").get<std::string>().find("does not mean") != std::string::npos);
}

TEST_CASE("indefinite builtin input exits with the inconclusive code") {
  RunResult r = run_cli("obstruct --builtin mirror-pretzel:2,3:2 --format json");
  CHECK(r.exit_code == 2);
  json j = json::parse(r.output);
  CHECK(j.at("verdict") == "INCONCLUSIVE");
  CHECK(j.at("reason") == "not definite; see rationality branch");
}

TEST_CASE("budget exhaustion reports inconclusive with exit code 2") {
  RunResult r = run_cli("obstruct --builtin 11n50 --node-limit 5 --format json");
  CHECK(r.exit_code == 2);
  json j = json::parse(r.output);
  CHECK(j.at("verdict") == "INCONCLUSIVE");
  CHECK(j.at("reason") == "search budget exhausted");
  CHECK(j.at("search_complete") == false);
}

TEST_CASE("obstruct reads graph files") {
  auto path = temp_file("unimodular.graph");
  write_file(path, "# a single -1 vertex\nv 0 -1\n");
  json j = run_json("obstruct --graph \"" + path.string() + "\"");
  CHECK(j.at("verdict") == "NOT_OBSTRUCTED");
  CHECK(j.at("rank") == 1);
  CHECK(j.at("discriminant") == "1");
  std::filesystem::remove(path);
}

TEST_CASE("unknown builtin names list the available generators") {
  RunResult r = run_cli("obstruct --builtin nope");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("error:") != std::string::npos);
  CHECK(r.output.find("unknown builtin") != std::string::npos);
}

TEST_CASE("classify emits verdict, case, and determinant") {
  json j = run_json("classify \"P(2,2,-3)\"");
  CHECK(j.at("verdict") == "QA");
  CHECK(j.at("case") == "case (4): e = 0, m = 1, q_1 = 3 > min(p) = 2");
  CHECK(j.at("determinant") == "8");
  CHECK(j.at("determinant_positive") == true);
  CHECK(j.at("mirrored") == false);
  CHECK(j.at("explicit_twist").is_null());
  CHECK(j.at("certificate").is_null());
}

TEST_CASE("classify notes the mirroring convention") {
  json j = run_json("classify \"P(-2,-2,3)\"");
  CHECK(j.at("mirrored") == true);
  CHECK(j.at("verdict") == "QA");
  std::string note = j.at("note");
  CHECK(note.find("mirror") != std::string::npos);
}

TEST_CASE("classify embeds the certificate for inductive cases") {
  json j = run_json("classify \"P(-1;-3,-3)\"");
  CHECK(j.at("verdict") == "QA");
  CHECK(j.at("explicit_twist") == 1);
  REQUIRE_FALSE(j.at("certificate").is_null());
  CHECK(j.at("certificate").at("format") == "qa-certificate");
  CHECK(j.at("certificate").at("root").at("det") == "3");
}

TEST_CASE("classify rejects malformed input without a verdict") {
  RunResult r = run_cli("classify \"Q(2,3)\" --format json");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("error:") != std::string::npos);
  CHECK(r.output.find("pretzel syntax error") != std::string::npos);
  CHECK(r.output.find("verdict") == std::string::npos);
}

TEST_CASE("certificate round trip through the filesystem") {
  auto path = temp_file("cert.json");
  RunResult write = run_cli("classify \"P(-1;-3,-3)\" --certificate-out \"" + path.string() + "\"");
  REQUIRE(write.exit_code == 0);

  RunResult pass = run_cli("certify \"" + path.string() + "\"");
  CHECK(pass.exit_code == 0);
  CHECK(pass.output.find("PASS") != std::string::npos);

  json certify_json = run_json("certify \"" + path.string() + "\"");
  CHECK(certify_json.at("result") == "PASS");

  json doc = json::parse(read_file(path));
  doc["root"]["det"] = "4";
  write_file(path, doc.dump());
  RunResult fail = run_cli("certify \"" + path.string() + "\"");
  CHECK(fail.exit_code == 2);
  CHECK(fail.output.find("FAIL at root") != std::string::npos);

  write_file(path, "not json at all");
  RunResult broken = run_cli("certify \"" + path.string() + "\"");
  CHECK(broken.exit_code == 1);
  CHECK(broken.output.find("certificate parse error") != std::string::npos);

  std::filesystem::remove(path);
}

TEST_CASE("certify on a missing file is an error") {
  RunResult r = run_cli("certify /nonexistent/cert.json");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("error:") != std::string::npos);
}

TEST_CASE("dinv on a unimodular graph file gives the single zero") {
  auto path = temp_file("dinv.graph");
  write_file(path, "v 0 -1\n");
  json j = run_json("dinv --graph \"" + path.string() + "\"");
  CHECK(j.at("spin_c_classes") == 1);
  CHECK(j.at("entries").at(0).at("d") == "0");
  CHECK(j.at("max_d") == "0");
  CHECK(j.at("quarter_test").is_null());  // unmirrored tables skip the test
  CHECK_FALSE(j.at("caveat").get<std::string>().empty());
  std::filesystem::remove(path);
}

TEST_CASE("mirrored dinv of the 11n50 boundary passes the quarter test") {
  json j = run_json("dinv --builtin 11n50 --mirror");
  CHECK(j.at("mirror") == true);
  CHECK(j.at("spin_c_classes") == 25);
  CHECK(j.at("max_d") == "8/25");
  CHECK(j.at("quarter_test") == "passes");
  CHECK(j.at("entries").size() == 25);
  // spot entries pinned by the d-invariant suite
  CHECK(j.at("entries").at(0).at("d") == "-12/25");
  CHECK(j.at("entries").at(9).at("d") == "8/25");
  CHECK(j.at("entries").at(9).at("max_square") == "-207/25");
}

TEST_CASE("the pretzel builtin and --pretzel agree") {
  json a = run_json("obstruct --builtin pretzel:2,2:3");
  json b = run_json("obstruct --pretzel \"P(2,2,-3)\"");
  CHECK(a.at("verdict") == b.at("verdict"));
  CHECK(a.at("rank") == b.at("rank"));
  CHECK(a.at("discriminant") == b.at("discriminant"));
}

TEST_CASE("--pretzel rejects shapes outside the single-negative-tassle family") {
  RunResult r = run_cli("obstruct --pretzel \"P(-1;-3,-3)\"");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("error:") != std::string::npos);
  CHECK(r.output.find("exactly one negative tassle") != std::string::npos);
}

TEST_CASE("a subcommand is required") {
  RunResult r = run_cli("");
  CHECK(r.exit_code != 0);
}
