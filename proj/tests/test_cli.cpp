#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("shadow_wlo_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;

  fs::path file(const std::string& name, const std::string& text = {}) const {
    const auto p = dir_ / name;
    if (!text.empty()) std::ofstream(p, std::ios::binary) << text;
    return p;
  }

 private:
  fs::path dir_;
};

Run run_cli(const Scratch& s, const std::string& args, const std::string& env = {}) {
  const auto out = s.file("stdout.txt"), err = s.file("stderr.txt");
  const std::string cmd = env + " \"" SHADOW_WLO_CLI "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string config(const std::string& name) { return std::string("\"") + SHADOW_WLO_CONFIG_DIR + "/" + name + "\""; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("shipped examples pass") {
  Scratch s;
  const auto empty = run_cli(s, "--config " + config("empty_sphere_su2_k4.json"));
  REQUIRE(empty.code == 0);
  const auto rep = nlohmann::json::parse(empty.out);
  CHECK(rep["ok"] == true);
  CHECK(rep["results"]["shadow"]["value"][0].get<double>() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(rep["results"]["compare"]["wlo_ratio"][0].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  const auto unknot = run_cli(s, "--config " + config("unknot_su2_k4.json"));
  CHECK(unknot.code == 0);
  CHECK(nlohmann::json::parse(unknot.out)["results"]["embedded"]["framing"]["pass"] == true);
}

TEST_CASE("reports are byte identical across threads and seeds") {
  Scratch s;
  const auto a = s.file("a.json"), b = s.file("b.json");
  REQUIRE(run_cli(s, "--config " + config("corpus/a2_g1_k5_m2_2.json") + " --threads 1 --out \"" + a.string() + "\"").code == 0);
  REQUIRE(run_cli(s, "--config " + config("corpus/a2_g1_k5_m2_2.json") + " --threads 6 --out \"" + b.string() + "\"",
                  "SHADOW_WLO_SEED=12345")
              .code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).find("wall") == std::string::npos);
}

TEST_CASE("malformed input exits 2 and names the field") {
  Scratch s;
  struct Case {
    std::string text, path;
  };
  const std::vector<Case> cases{
      {R"({"level": 4, "link": [{"color": [-1]}]})", "link[0].color[0]"},
      {R"({"level": 4, "link": [{"color": [1, 0]}]})", "link[0].color"},
      {R"({"level": 4, "link": [{"color": [1], "sign": 0}]})", "link[0].sign"},
      {R"({"level": 4, "link": [{"color": [1], "parent": 0}]})", "link[0].parent"},
      {R"({"level": "four"})", "level"},
      {R"({"group": "G2", "level": 4})", "group"},
      {R"({"level": 4, "frobnicate": 1})", "frobnicate"},
      {R"({"level": 4, "outputs": ["wlo", 3]})", "outputs[1]"},
      {R"({"genus": 1})", "level"},
      {R"({"level": 4,)", "<document>"},
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto p = s.file("bad" + std::to_string(i) + ".json", cases[i].text);
    const auto r = run_cli(s, "--config \"" + p.string() + "\"");
    CAPTURE(cases[i].text);
    CHECK(r.code == 2);
    CHECK(r.err.find(cases[i].path) != std::string::npos);
    CHECK(r.out.empty());
  }
}

TEST_CASE("selfcheck passes, and fails under a flipped hodge sign") {
  Scratch s;
  const auto good = run_cli(s, "--selfcheck");
  CHECK(good.code == 0);
  const auto rep = nlohmann::json::parse(good.out);
  for (const auto& suite : rep["selfcheck"]) CHECK_MESSAGE(suite["pass"] == true, suite["suite"]);
  const auto bad = run_cli(s, "--selfcheck --inject-hodge-flip");
  CHECK(bad.code == 1);
  bool symmetry_failed = false;
  const auto bad_rep = nlohmann::json::parse(bad.out);
  for (const auto& suite : bad_rep["selfcheck"])
    if (suite["suite"] == "hodge_symmetry") symmetry_failed = suite["pass"] == false;
  CHECK(symmetry_failed);
}

TEST_CASE("level one does not crash and is flagged") {
  Scratch s;
  const auto p = s.file("k1.json", R"({"level": 1, "link": [{"color": [1], "winding": 1}]})");
  const auto r = run_cli(s, "--config \"" + p.string() + "\"");
  CHECK(r.code == 0);
  const auto rep = nlohmann::json::parse(r.out);
  REQUIRE(rep["warnings"].size() == 1);
  CHECK(rep["warnings"][0]["code"] == "empty_label_set");
  CHECK(rep["results"]["wlo"]["value"] == nlohmann::json::array({0.0, 0.0}));
}

TEST_CASE("nothing to do is a usage error") {
  Scratch s;
  CHECK(run_cli(s, "").code == 2);
}

}  // TEST_SUITE
