// Runs the command-line tool as a subprocess.
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "complexes.hpp"
#include "critspec/io/formats.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace critspec;
using namespace testing_complexes;
namespace fx = testing_fixtures;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CRITSPEC_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string fixture(const std::string& name) { return fx::path(name); }

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / ("critspec_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string write(const fs::path& file, const std::string& text) {
  std::ofstream(file) << text;
  return file.string();
}

}  // namespace

TEST_CASE("homology on the torus") {
  auto r = run("homology " + fixture("upright_torus") + " --method ss");
  CHECK(r.status == 0);
  CHECK(r.out == "H0=Z H1=Z^2 H2=Z\n");
  r = run("homology " + fixture("upright_torus") + " --method direct --coeff q");
  CHECK(r.status == 0);
  CHECK(r.out == "H0=Q H1=Q^2 H2=Q\n");
  r = run("--json homology " + fixture("sphere") + " --method ss");
  CHECK(r.status == 0);
  CHECK(json::parse(r.out)["text"] == "H0=Z H1=0 H2=Z");
}

TEST_CASE("second page from the abstract first page") {
  const auto r = run("--json e2 --from-e1 " + fixture("upright_torus.e1"));
  CHECK(r.status == 0);
  const auto j = json::parse(r.out);
  CHECK(j["homology"]["text"] == "H0=Z H1=Z^2 H2=Z");
}

TEST_CASE("Reeb graph output") {
  const auto dir = scratch();
  const auto dot = (dir / "sphere.dot").string();
  auto r = run("reeb-graph " + fixture("sphere") + " --dot " + dot);
  CHECK(r.status == 0);
  std::ifstream in(dot);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.rfind("graph reeb", 0) != std::string::npos);
  std::size_t edges = 0;
  for (auto at = text.find(" -- "); at != std::string::npos; at = text.find(" -- ", at + 4)) ++edges;
  CHECK(edges == 3);

  r = run("--json reeb-graph " + fixture("theta") + " --generators");
  CHECK(r.status == 0);
  const auto j = json::parse(r.out);
  CHECK(j["betti"]["b1"] == 2);
  CHECK(j["generators"].size() == 2);
  fs::remove_all(dir);
}

TEST_CASE("words") {
  auto r = run("words reduce " + fixture("upright_torus") + " --word \"g0#0+ g1#0+ g1#0- g1#1+\"");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("g0#0+ g1#1+\n", 0) == 0);
  r = run("words reduce " + fixture("upright_torus") + " --word \"g0#0+ g2#0+\"");
  CHECK(r.status == 2);
}

TEST_CASE("other subcommands") {
  auto r = run("validate " + fixture("csaszar_torus"));
  CHECK(r.status == 0);
  r = run("critical-values " + fixture("upright_torus"));
  CHECK(r.out == "critical values: 0 1 2 3\nmidpoints: 1/2 3/2 5/2\n");
  r = run("--json levelset " + fixture("upright_torus") + " --at 3/2 --homology");
  CHECK(r.status == 0);
  CHECK(json::parse(r.out)["components"] == 2);
  r = run("verify " + fixture("upright_torus") + " --two-columns");
  CHECK(r.status == 0);
  r = run("e1 " + fixture("edge"));
  CHECK(r.status == 0);
  CHECK(r.out.find("[-1; 1]") != std::string::npos);
}

TEST_CASE("exit codes for bad input") {
  const auto dir = scratch();
  const auto unknown = write(dir / "unknown.json",
                             R"({"format":"critspec-instance","version":1,"vertices":[{"id":0,"value":"0"}],"simplices":[[0,3]]})");
  const auto missing = write(dir / "missing.json", R"({"format":"critspec-instance","version":1,
    "vertices":[{"id":0,"value":"0"},{"id":1,"value":"1"},{"id":2,"value":"2"}],"simplices":[[0,1,2]]})");
  const auto broken = write(dir / "broken.json", "{\"format\": ");
  for (const auto& file : {unknown, missing, broken}) {
    for (const std::string sub : {"validate ", "homology ", "e1 ", "reeb-graph "}) {
      CAPTURE(sub + file);
      CHECK(run(sub + file).status == 2);
    }
  }
  CHECK(run("validate " + (dir / "absent.json").string()).status == 2);
  CHECK(run("homology " + fixture("edge") + " --coeff zp:6").status == 2);
  CHECK(run("levelset " + fixture("edge")).status == 2);
  CHECK(run("no-such-command").status == 2);
  fs::remove_all(dir);
}

TEST_CASE("both methods agree through files") {
  const auto dir = scratch();
  std::mt19937 rng(97);
  for (int k = 0; k < 15; ++k) {
    const std::size_t n = 2 + rng() % 8;
    Instance inst{LeveledComplex::from(random_complex(rng, n, 2, 0.4), injective_values(rng, n)), {}};
    for (std::size_t v = 0; v < n; ++v) inst.ids.push_back(static_cast<long long>(v));
    const auto file = write(dir / ("r" + std::to_string(k) + ".json"), instance_to_json(inst).dump());
    const auto ss = run("homology " + file + " --method ss");
    const auto direct = run("homology " + file + " --method direct");
    CHECK(ss.status == 0);
    CHECK(ss.out == direct.out);
  }
  fs::remove_all(dir);
}
