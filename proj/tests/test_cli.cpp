#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;  // stdout followed by stderr
};

const fs::path& workdir() {
  static const fs::path dir = [] {
    const auto d = fs::temp_directory_path() / ("bott_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run bott(const std::string& args, bool merge_stderr = true) {
  const std::string cmd = "cd '" + workdir().string() + "' && '" BOTT_CLI_PATH "' " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = ::pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

nlohmann::json json_of(const Run& r) {
  INFO(r.out);
  REQUIRE(r.status == 0);
  return nlohmann::json::parse(r.out);
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("suspension pipeline gives the monopole") {
    REQUIRE(bott("model ssh --v 0 --w 1 --n 16 -o ssh.bhf").status == 0);
    REQUIRE(bott("suspend ssh.bhf --nt 17 -o mono.bhf").status == 0);
    const auto j = json_of(bott("invariant c1 mono.bhf --band empty"));
    CHECK(j["value"] == -1);
    CHECK(j["converged"] == true);
    CHECK(j["grid"]["kind"] == "suspension");
    CHECK(json_of(bott("invariant c1 mono.bhf --band occupied"))["value"] == 1);
    CHECK(json_of(bott("invariant winding ssh.bhf"))["value"] == 1);

    REQUIRE(bott("clutch mono.bhf -o u.bhf").status == 0);
    CHECK(json_of(bott("invariant winding u.bhf"))["value"] == 1);
    REQUIRE(bott("reflect mono.bhf --axis 1 -o mono_r.bhf").status == 0);
    CHECK(json_of(bott("invariant c1 mono_r.bhf --band empty"))["value"] == 1);
  }

  TEST_CASE("model variants") {
    CHECK(json_of(bott("model ssh --v 1 --w 0.2 --n 16 -o triv.bhf && '" BOTT_CLI_PATH "' invariant winding triv.bhf"))["value"] == 0);
    REQUIRE(bott("model winding --winding -2 --grid circle:32 -o w.bhf").status == 0);
    const auto w = json_of(bott("invariant winding w.bhf"));
    CHECK(w["value"] == -2);
    CHECK(w["odd_chern"].get<double>() == doctest::Approx(2.0));
    REQUIRE(bott("model massive-dirac --M 1 --grid torus:32x32 -o md.bhf").status == 0);
    CHECK(json_of(bott("invariant c1 md.bhf --band occupied"))["value"] == 1);
    const auto curv = json_of(bott("invariant c1 md.bhf --band occupied --method curvature"));
    CHECK(curv["value"] == 1);
    CHECK(bott("kring classify md.bhf --band occupied").out == "rank 1, b1b2\n");
    CHECK(bott("kring classify w.bhf").out == "-2b1\n");
  }

  TEST_CASE("flatten and product") {
    REQUIRE(bott("model ssh --v 0.3 --w 1 --n 16 -o s.bhf").status == 0);
    REQUIRE(bott("flatten s.bhf -o sf.bhf").status == 0);
    const auto doc = nlohmann::json::parse(slurp(workdir() / "sf.bhf"));
    CHECK(doc["dim"] == 2);
    REQUIRE(bott("model monopole --grid s2:9x8 -o m.bhf").status == 0);
    REQUIRE(bott("product m.bhf m.bhf -o mm.bhf").status == 0);
    const auto mm = nlohmann::json::parse(slurp(workdir() / "mm.bhf"));
    CHECK(mm["space"]["kind"] == "product");
    CHECK(mm["dim"] == 12);
  }

  TEST_CASE("kring eval") {
    CHECK(bott("kring eval 'b1*b1' --d 1").out == "0\n");
    CHECK(bott("kring eval '(1+b1)*(1+b2)' --d 2").out == "1 + b1 + b2 + b1b2\n");
    CHECK(bott("kring eval 'b2b1 - 3' --d 2").out == "-3 - b1b2\n");
    const auto bad = bott("kring eval 'b3' --d 2");
    CHECK(bad.status == 1);
    CHECK(bad.out.rfind("error: parse:", 0) == 0);
  }

  TEST_CASE("errors exit with status 1 and a coded message") {
    REQUIRE(bott("model ssh --v 1 --w 1 --n 16 -o gapless.bhf").status == 0);
    const auto gap = bott("flatten gapless.bhf -o x.bhf");
    CHECK(gap.status == 1);
    CHECK(gap.out.rfind("error: gap-violation:", 0) == 0);
    REQUIRE(bott("model ssh --v 0 --w 1 --n 16 -o ssh.bhf && '" BOTT_CLI_PATH "' suspend ssh.bhf --nt 17 -o mono.bhf").status == 0);
    const auto noband = bott("invariant c1 mono.bhf");
    CHECK(noband.status == 1);
    CHECK(noband.out.find("--band") != std::string::npos);
    CHECK(bott("invariant c1 /nonexistent.bhf --band empty").status == 1);
    CHECK(bott("reflect mono.bhf --axis 5").status == 1);
    CHECK(bott("frobnicate").status == 1);
    CHECK(bott("model nothing").status == 1);
    CHECK(bott("--help").status == 0);
  }

  TEST_CASE("output is deterministic") {
    const auto a = bott("model monopole --grid s2:17x16");
    const auto b = bott("model monopole --grid s2:17x16");
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    REQUIRE(bott("model monopole --grid s2:17x16 -o m16.bhf").status == 0);
    const auto c1 = bott("invariant c1 m16.bhf --band empty --method curvature --dump-curvature d1.csv");
    const auto c2 = bott("invariant c1 m16.bhf --band empty --method curvature --dump-curvature d2.csv");
    CHECK(c1.out == c2.out);
    const auto csv = slurp(workdir() / "d1.csv");
    CHECK(csv == slurp(workdir() / "d2.csv"));
    CHECK(csv.rfind("t0,k1,density\n", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == 17 * 16 + 1);
  }

  TEST_CASE("verify quick") {
    const auto r = bott("verify --quick --json", false);
    INFO(r.out);
    CHECK(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.contains("checks"));
    CHECK(j["checks"].size() == 12);
  }
}
