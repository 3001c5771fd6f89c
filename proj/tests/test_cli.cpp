#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <doctest.h>
#include <json.hpp>

#ifndef COXLAB_CLI
#error "COXLAB_CLI must point at the coxlab executable"
#endif

namespace {

const std::string kData = COXLAB_DATA_DIR;

std::string data(const std::string& name) { return kData + "/" + name; }

std::string temp_path() {
  static int counter = 0;
  return (std::filesystem::temp_directory_path() /
          ("coxlab_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++)))
      .string();
}

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string out_file = temp_path();
  const std::string cmd = env + " " COXLAB_CLI " " + args + " > " + out_file + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  std::remove(out_file.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

}  // namespace

TEST_CASE("classify") {
  auto r = run("classify " + data("tri_2_3_inf.txt"));
  CHECK(r.code == 0);
  CHECK(r.out.find("infinite, indecomposable; nerve: 3 vertices, 2 edges") != std::string::npos);
  r = run("classify " + data("h3.txt"));
  CHECK(r.out.find("finite") == 0);
  r = run("classify " + data("remark_decomposable.txt"));
  CHECK(r.out.find("decomposable: {s1,s2} infinite, {s3} finite") == 0);
  CHECK(run("classify " + data("tri_2_3_inf.json")).code == 0);
}

TEST_CASE("parse errors exit 3") {
  const std::string bad = temp_path();
  std::ofstream(bad) << "rank 2\n1 2 1\n";
  CHECK(run("classify " + bad).code == 3);
  std::remove(bad.c_str());
  CHECK(run("classify /nonexistent/file").code == 3);
  CHECK(run("nerve /nonexistent/file").code == 3);
  CHECK(run("verify " + data("tri_2_3_inf.txt") + " --suite bogus").code == 3);
  CHECK(run("frobnicate").code == 3);
  CHECK(run("verify " + data("tri_2_3_inf.txt"), "COXLAB_BUDGET=elements=x").code == 3);
}

TEST_CASE("subgroup command") {
  auto r = run("subgroup " + data("tri_2_3_inf.txt") + " --reflections \"2;3;1 3 1\" --json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["index"] == 2);
  CHECK(j["induced_m"] == nlohmann::json::parse("[[1,3,3],[3,1,0],[3,0,1]]"));

  r = run("subgroup " + data("affine_a1.txt") + " --reflections \"1;2 1 2\"");
  CHECK(r.code == 0);
  CHECK(r.out.find("index: 2") != std::string::npos);

  CHECK(run("subgroup " + data("i2_3.txt") + " --reflections \"1 2\"").code == 3);
  CHECK(run("subgroup " + data("i2_3.txt") + " --reflections \"1 4\"").code == 3);
  // index 2 does not fit in one chamber
  CHECK(run("subgroup " + data("tri_2_3_inf.txt") + " --reflections \"2;3;1 3 1\" --budget 1").code == 2);
}

TEST_CASE("polytopes command writes JSON lines") {
  const std::string out = temp_path();
  auto r = run("polytopes " + data("tri_2_3_inf.txt") + " --max-chambers 4 --emit " + out);
  CHECK(r.code == 0);
  std::ifstream in(out);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("chambers"));
    CHECK(j["facets"].get<int>() >= 3);
    ++lines;
  }
  CHECK(lines > 1);
  std::remove(out.c_str());
}

TEST_CASE("verify command") {
  auto r = run("verify " + data("tri_2_3_inf.txt") + " --suite all --max-chambers 6 --json");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["suite"] == "all");
  r = run("verify " + data("tri_2_5_5.txt") + " --suite all --max-chambers 8");
  CHECK(r.code == 0);
  CHECK(r.out.find("no proper equal-rank subgroup") != std::string::npos);
  r = run("verify " + data("tri_3_3_3.txt") + " --suite facet-bound --max-chambers 6");
  CHECK(r.code == 0);
  CHECK(r.out.find("min facets 3") != std::string::npos);
}
