// Golden files: NAME.cmd holds the expected exit code, then one argument per
// line; NAME.out holds the expected stdout. FPSD_UPDATE_GOLDEN=1 rewrites the
// .out files.
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

std::pair<int, std::string> run(const std::vector<std::string>& args) {
  std::string cmd = quote(FPSD_CLI);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("golden files") {
  std::vector<fs::path> cases;
  for (const auto& e : fs::directory_iterator(FPSD_GOLDEN_DIR)) {
    if (e.path().extension() == ".cmd") cases.push_back(e.path());
  }
  std::sort(cases.begin(), cases.end());
  REQUIRE(cases.size() >= 20);
  const bool update = std::getenv("FPSD_UPDATE_GOLDEN") != nullptr;
  for (const auto& c : cases) {
    CAPTURE(c.stem().string());
    std::ifstream in(c);
    std::string line;
    std::getline(in, line);
    const int expected_code = std::stoi(line);
    std::vector<std::string> args;
    while (std::getline(in, line)) args.push_back(line);
    const auto [code1, out1] = run(args);
    const auto [code2, out2] = run(args);
    CHECK(code1 == expected_code);
    CHECK(code2 == code1);
    CHECK(out1 == out2);
    fs::path golden = c;
    golden.replace_extension(".out");
    if (update) {
      std::ofstream(golden, std::ios::binary) << out1;
      continue;
    }
    REQUIRE(fs::exists(golden));
    CHECK(out1 == slurp(golden));
  }
}

TEST_CASE("every verb has a golden case") {
  std::string all;
  for (const auto& e : fs::directory_iterator(FPSD_GOLDEN_DIR)) {
    if (e.path().extension() == ".cmd") all += slurp(e.path());
  }
  for (const char* v : {"prep", "divide", "regularize", "poisson", "bracket-probe", "involutive", "malgrange", "derham",
                        "kernel", "cokernel", "regularity"}) {
    CHECK(all.find(std::string("\n") + v + "\n") != std::string::npos);
  }
}

TEST_CASE("command-line errors exit with 1") {
  CHECK(run({}).first == 1);
  CHECK(run({"nosuchverb"}).first == 1);
  CHECK(run({"derham", "--vars", "zero"}).first == 1);
  CHECK(run({"regularity"}).first == 1);
  CHECK(run({"--help"}).first == 0);
}
