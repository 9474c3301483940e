// End-to-end tests for the command-line tool.  The binary path is injected
// by the build system through the FRONTS_CLI_PATH compile definition.
#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(FRONTS_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("speed subcommand prints the minimal speed") {
  auto r = run_cli("speed --reaction fisher");
  INFO(r.out);
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("c0 = 2") != std::string::npos);
}

TEST_CASE("speed output is byte-identical across runs") {
  auto a = run_cli("speed --reaction \"hadeler_rothe(4)\" --c-tol 1e-8");
  auto b = run_cli("speed --reaction \"hadeler_rothe(4)\" --c-tol 1e-8");
  REQUIRE(a.exit_code == 0);
  REQUIRE(a.out == b.out);
  REQUIRE(a.out.find("2.12132") != std::string::npos);
}

TEST_CASE("unknown reaction name is a usage error") {
  auto r = run_cli("speed --reaction no_such_reaction");
  REQUIRE(r.exit_code == 2);
}

TEST_CASE("missing subcommand is a usage error") {
  auto r = run_cli("");
  REQUIRE(r.exit_code == 2);
}

TEST_CASE("bound subcommand evaluates a named trial") {
  auto r = run_cli("bound --reaction fisher --principle VP2 --trial g=1-u");
  INFO(r.out);
  REQUIRE(r.exit_code == 0);
  // 16/15 = 1.06666...
  REQUIRE(r.out.find("1.06666666667") != std::string::npos);
}

TEST_CASE("bound rejects a principle incompatible with the reaction") {
  auto r = run_cli("bound --reaction \"bistable_cubic(0.3)\" --principle VP1 "
                   "--trial alpha=u");
  REQUIRE(r.exit_code == 2);
}

TEST_CASE("verify emits a JSON report and passes on fisher") {
  auto r = run_cli("verify --reaction fisher");
  INFO(r.out);
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  if (j.is_array()) {
    REQUIRE(j.size() == 1);
    j = j[0];
  }
  REQUIRE(j.contains("reaction"));
  REQUIRE(j.contains("checks"));
  REQUIRE(j["pass"].get<bool>());
}

TEST_CASE("config round-trip: dump-config output reproduces itself") {
  auto a = run_cli("--dump-config speed --reaction \"bistable_cubic(0.25)\"");
  REQUIRE(a.exit_code == 0);
  const std::string path = "/tmp/fronts_cli_roundtrip.json";
  FILE* fp = fopen(path.c_str(), "w");
  REQUIRE(fp != nullptr);
  fwrite(a.out.data(), 1, a.out.size(), fp);
  fclose(fp);
  auto b = run_cli("--config " + path + " --dump-config speed");
  REQUIRE(b.exit_code == 0);
  REQUIRE(a.out == b.out);
}

TEST_CASE("config file drives a run and flags override it") {
  auto a = run_cli("--dump-config speed --reaction \"bistable_cubic(0.25)\"");
  REQUIRE(a.exit_code == 0);
  const std::string path = "/tmp/fronts_cli_cfg.json";
  FILE* fp = fopen(path.c_str(), "w");
  REQUIRE(fp != nullptr);
  fwrite(a.out.data(), 1, a.out.size(), fp);
  fclose(fp);
  // bistable_cubic(0.25): c0 = (1 - 2a)/sqrt(2) = 0.3535...
  auto run = run_cli("--config " + path + " speed");
  REQUIRE(run.exit_code == 0);
  REQUIRE(run.out.find("0.35355") != std::string::npos);
  // Override the reaction on the command line.
  auto over = run_cli("--config " + path + " speed --reaction fisher");
  REQUIRE(over.exit_code == 0);
  REQUIRE(over.out.find("c0 = 2") != std::string::npos);
}

TEST_CASE("evolve reports a spreading speed near the minimal speed") {
  auto r = run_cli("evolve --reaction fisher --ic step --length 240 "
                   "--t-end 60");
  INFO(r.out);
  REQUIRE(r.exit_code == 0);
  const auto pos = r.out.find("spreading_speed = ");
  REQUIRE(pos != std::string::npos);
  const double v = std::stod(r.out.substr(pos + 18));
  REQUIRE(v == Catch::Approx(2.0).epsilon(0.05));
}
