#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

std::string graphs_dir() { return STABNET_GRAPHS_DIR; }
std::string binary() { return STABNET_BIN; }

struct RunOutput {
  int exit_code;
  std::string stdout_text;
};

RunOutput run_cli(const std::string& args) {
  fs::path out = fs::temp_directory_path() / "stabnet_cli_stdout.txt";
  std::string cmd = binary() + " " + args + " > " + out.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  fs::remove(out);
  return {WEXITSTATUS(rc), ss.str()};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("verify exits 0 on a clean build") {
  RunOutput r = run_cli("verify");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("[FAIL]") == std::string::npos);
  CHECK(r.stdout_text.find("all 10 properties hold") != std::string::npos);
}

TEST_CASE("verify with the corrupted distance table names the failure") {
  RunOutput r = run_cli("verify --corrupt-distance");
  CHECK(r.exit_code == 1);
  CHECK(r.stdout_text.find("first failing property: sigma3-metric-table") !=
        std::string::npos);
}

TEST_CASE("rt output is byte-identical across worker counts") {
  fs::path out1 = fs::temp_directory_path() / "rt_w1.csv";
  fs::path out4 = fs::temp_directory_path() / "rt_w4.csv";
  std::string base = "rt --graph " + graphs_dir() +
                     "/star.json --seed 7 --trials 200 --format csv";
  RunOutput r1 = run_cli(base + " --workers 1 --out " + out1.string());
  RunOutput r4 = run_cli(base + " --workers 4 --out " + out4.string());
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r4.exit_code == 0);
  std::string a = read_file(out1), b = read_file(out4);
  CHECK(a == b);
  CHECK(a.find("region,s_rt,num_min_cuts") == 0);
  fs::remove(out1);
  fs::remove(out4);
}

TEST_CASE("ghz json output carries schema, config, rows and summary") {
  fs::path out = fs::temp_directory_path() / "ghz.json";
  RunOutput r = run_cli("ghz --graph " + graphs_dir() +
                        "/star.json --seed 3 --trials 50 --format json "
                        "--out " + out.string());
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(read_file(out));
  CHECK(j.at("schema") == 1);
  CHECK(j.at("config").at("command") == "ghz");
  CHECK(j.at("config").at("seed") == 3);
  CHECK(j.at("rows").size() == 50);
  CHECK(j.at("rows")[0].contains("g"));
  CHECK(j.at("summary").contains("mean_g_nonzero"));
  CHECK(j.at("summary").contains("ghz_count_bound"));
  fs::remove(out);
}

TEST_CASE("ghz accepts overrides for p and N") {
  RunOutput r = run_cli("ghz --graph " + graphs_dir() +
                        "/star.json --seed 3 --trials 20 --p 3 --N 1");
  CHECK(r.exit_code == 0);
}

TEST_CASE("fourpartite runs on the cross graph") {
  RunOutput r = run_cli("fourpartite --graph " + graphs_dir() +
                        "/cross4.json --seed 5 --trials 20 --N 2");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("trial,zero,log_trace,t12") == 0);
}

TEST_CASE("spinmodel reports exact prediction columns") {
  RunOutput r = run_cli("spinmodel --graph " + graphs_dir() +
                        "/star.json --seed 11 --trials 500 --p 3 --N 2");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("e0,degeneracy,s_rt_sum,prediction") == 0);
  // star graph at p=3, N=2: E0 = 3, degeneracy p+1 = 4, S_RT sum = E0*N = 6
  CHECK(r.stdout_text.find("\n3,4,6,") != std::string::npos);
}

TEST_CASE("moments subcommand passes for (2,2) quickly") {
  RunOutput r = run_cli("moments --p 2 --n 2");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("third-moment-exhaustive") != std::string::npos);
}

TEST_CASE("unknown region names fail cleanly") {
  RunOutput r = run_cli("ghz --graph " + graphs_dir() +
                        "/star.json --regions X,Y,Z --trials 5");
  CHECK(r.exit_code == 2);
  CHECK(r.stdout_text.find("unknown region") != std::string::npos);
}

TEST_CASE("no-bulk Bell lattice: g = 0 always and RT gap is exactly 0") {
  fs::path out = fs::temp_directory_path() / "triangle_ghz.json";
  RunOutput g = run_cli("ghz --graph " + graphs_dir() +
                        "/triangle.json --seed 2 --trials 40 --format json "
                        "--out " + out.string());
  REQUIRE(g.exit_code == 0);
  nlohmann::json jg = nlohmann::json::parse(read_file(out));
  CHECK(jg.at("summary").at("mean_g_nonzero") == "0");
  CHECK(jg.at("summary").at("max_g") == "0");
  for (const auto& row : jg.at("rows")) CHECK(row.at("g") == "0");
  fs::remove(out);

  fs::path out2 = fs::temp_directory_path() / "triangle_rt.json";
  RunOutput rt = run_cli("rt --graph " + graphs_dir() +
                         "/triangle.json --seed 2 --trials 20 --format json "
                         "--out " + out2.string());
  REQUIRE(rt.exit_code == 0);
  nlohmann::json jr = nlohmann::json::parse(read_file(out2));
  for (const auto& row : jr.at("rows")) {
    CHECK(row.at("gap") == "0");  // S(A) = S_RT exactly with no bulk
    if (row.at("region") == "E") {
      CHECK(row.at("s_rt") == "0");
      CHECK(row.at("mean_s_nonzero") == "0");
    }
  }
  fs::remove(out2);
}

TEST_CASE("json output is byte-identical across worker counts") {
  fs::path out1 = fs::temp_directory_path() / "sm_w1.json";
  fs::path out3 = fs::temp_directory_path() / "sm_w3.json";
  std::string base = "spinmodel --graph " + graphs_dir() +
                     "/star.json --seed 9 --trials 300 --p 2 --N 2 "
                     "--format json";
  RunOutput r1 = run_cli(base + " --workers 1 --out " + out1.string());
  RunOutput r3 = run_cli(base + " --workers 3 --out " + out3.string());
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r3.exit_code == 0);
  CHECK(read_file(out1) == read_file(out3));
  fs::remove(out1);
  fs::remove(out3);
}
