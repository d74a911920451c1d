#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>

#include "gridcode/engine.hpp"
#include "gridcode/error.hpp"
#include "gridcode/periodic_code.hpp"
#include "gridcode/verifier.hpp"
#include "test_support.hpp"

using namespace gridcode;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string command = std::string(GRIDCODE_CLI) + " " + args + " 2>/dev/null";
  Run run;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) run.out.append(buf, got);
  const int raw = pclose(pipe);
  run.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return run;
}

std::string fixture() { return testing::data_path("king_ld2_fig.txt"); }

// Codewords in the grid rows of a text code file (after the "size" line).
long text_codewords(const std::string& text) {
  const auto rows = text.find('\n', text.find("\nsize "));
  return std::count(text.begin() + static_cast<std::ptrdiff_t>(rows), text.end(), '#');
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gridcode_test_io_cli";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& path, const std::string& text) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  REQUIRE(f != nullptr);
  std::fwrite(text.data(), 1, text.size(), f);
  std::fclose(f);
}

}  // namespace

TEST_CASE("code files round trip through every parseable format") {
  std::vector<PeriodicCode> codes = {parse_code(testing::read_text(fixture())),
                                     parse_code(testing::read_text(testing::data_path("king_block4.txt")))};
  SearchRequest hex;
  hex.period = {-3, 1};
  codes.push_back(min_density(hex).code);
  for (const auto& code : codes) {
    CHECK(parse_code(to_json(code)) == code);
    CHECK(parse_code(to_text(code)) == code);
    CHECK(to_json(parse_code(to_json(code))) == to_json(code));
  }
}

TEST_CASE("figure fixture emits stable json and an 80-codeword text grid") {
  const PeriodicCode code = parse_code(testing::read_text(fixture()));
  CHECK(to_json(code) == testing::read_text(testing::data_path("king_ld2_fig.json")));
  const std::string text = to_text(code);
  CHECK(text_codewords(text) == 80);
  CHECK(text.find("size 40 16") != std::string::npos);
  CHECK(text.find("periods 40,0 -6,1") != std::string::npos);
  const std::string tikz = to_tikz(code);
  std::size_t fills = 0;
  for (std::size_t p = tikz.find("\\fill"); p != std::string::npos; p = tikz.find("\\fill", p + 1)) ++fills;
  CHECK(fills == 80);
}

TEST_CASE("malformed code files are rejected") {
  const std::string good = testing::read_text(testing::data_path("king_block4.txt"));
  auto replaced = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  CHECK_THROWS_AS(parse_code(""), Error);
  CHECK_THROWS_AS(parse_code(replaced("density 1/8", "density 1/4")), Error);
  // Moving one codeword in the second row breaks the (-6,1) period.
  std::string fig = testing::read_text(fixture());
  const auto row1 = fig.find("...#....#.........#....#...#............");
  REQUIRE(row1 != std::string::npos);
  fig.replace(row1, 5, "#...." );
  fig.replace(fig.find("density 1/8"), 11, "");
  CHECK_THROWS_AS(parse_code(fig), Error);
  CHECK_THROWS_AS(parse_code(replaced("size 4 4", "size 3 4")), Error);
  CHECK_THROWS_AS(parse_code(replaced("code ld", "code fancy")), Error);
  CHECK_THROWS_AS(parse_code("{\"format\": \"gridcode-periodic-code\", \"version\": 1}"), Error);
  CHECK_THROWS_AS(parse_code("{ not json"), Error);
  // Bits that disagree with the stated lattice.
  CHECK_THROWS_AS(PeriodicCode("king", {CodeKind::LocatingDominating, 2}, Lattice2({2, 0}, {0, 1}), 4, 1,
                               {1, 0, 0, 0}),
                  Error);
}

TEST_CASE("cli search prints the exact minimum and writes a verifiable witness") {
  const Run r = cli("search --grid hex --code identifying --radius 1 --period 0,2 --emit json --out " +
                    scratch("hex02.json").string());
  CHECK(r.status == 0);
  CHECK(r.out.find("alpha = 3/7 (0.4285714)") != std::string::npos);
  const Run v = cli("verify --in " + scratch("hex02.json").string() + " --expect-density 3/7");
  CHECK(v.status == 0);
  CHECK(cli("verify --in " + scratch("hex02.json").string() + " --expect-density 1/2").status == 1);

  const Run king = cli("search --grid king --code ld --radius 2 --period 1,3");
  CHECK(king.status == 0);
  CHECK(king.out.find("alpha = 12/85") != std::string::npos);
}

TEST_CASE("cli exit codes") {
  CHECK(cli("search --grid hex --period 1,0").status == 5);   // DegeneratePeriod
  CHECK(cli("search --grid hex --period 1,2").status == 6);   // NotInLattice
  CHECK(cli("search --grid " + testing::data_path("ladder.grid") + " --period 0,1").status == 3);  // TwinVertices
  CHECK(cli("search --grid hex --period 0,2 --max-nodes 1").status == 4);  // ResourceLimit
  CHECK(cli("search --grid hex --code nope").status == 2);
  CHECK(cli("search --grid nowhere").status == 2);
  CHECK(cli("frobnicate").status == 2);
  CHECK(cli("").status == 2);
}

TEST_CASE("cli verify on the figure fixture") {
  const Run ok = cli("verify --in " + fixture() + " --expect-density 1/8");
  CHECK(ok.status == 0);
  CHECK(ok.out.find("accepted") != std::string::npos);
  const Run id = cli("verify --in " + fixture() + " --as identifying");
  CHECK(id.status == 1);
  CHECK(id.out.find("same identifying set") != std::string::npos);

  const fs::path broken = scratch("broken.txt");
  write(broken, "grid king\ncode ld\nradius 2\nperiods 40,0 -6,1\nsize 40 16\n#.#\n");
  CHECK(cli("verify --in " + broken.string()).status == 2);
  CHECK(cli("verify --in " + scratch("missing.txt").string()).status == 2);
}

TEST_CASE("cli emit converts formats and the json replays into verify") {
  const fs::path json = scratch("fig.json");
  CHECK(cli("emit --in " + fixture() + " --format json --out " + json.string()).status == 0);
  CHECK(testing::read_text(json.string()) == testing::read_text(testing::data_path("king_ld2_fig.json")));
  CHECK(cli("verify --in " + json.string() + " --expect-density 1/8").status == 0);
  const Run text = cli("emit --in " + json.string() + " --format text");
  CHECK(text_codewords(text.out) == 80);
  CHECK(cli("emit --in " + fixture() + " --format tikz").out.find("\\begin{tikzpicture}") != std::string::npos);
  CHECK(cli("emit --in " + fixture() + " --format png").status == 2);
}

TEST_CASE("cli output does not depend on the thread count") {
  const std::string args = "search --grid king --code ld --radius 2 --period 1,2 --emit json";
  const Run one = cli(args + " --threads 1");
  const Run three = cli(args + " --threads 3");
  const Run env = cli("--threads 2 " + args);
  CHECK(one.status == 0);
  CHECK(one.out == three.out);
  CHECK(one.out == env.out);
}

TEST_CASE("cli clauses, build and mmc") {
  const Run clauses = cli("clauses --grid hex --code identifying --radius 1");
  CHECK(clauses.out == testing::read_text(testing::data_path("hex_identifying_r1.family")));
  const fs::path edges = scratch("hex02.edges"), nodes = scratch("hex02.nodes");
  CHECK(cli("build --grid hex --period 0,2 --out " + edges.string() + " --nodes " + nodes.string()).status == 0);
  CHECK(fs::file_size(nodes) > 0);
  // Mean codewords per step = density * W * y = 3/7 * 2 * 2.
  for (const char* variant : {"quad", "linear", "sqrt"}) {
    const Run m = cli("mmc --in " + edges.string() + " --variant " + variant);
    CHECK(m.status == 0);
    CHECK(m.out.find("mean = 12/7") != std::string::npos);
  }
}

TEST_CASE("cli sweep, torus and bench") {
  const Run sweep =
      cli("sweep " + std::string(GRIDCODE_PRESETS) + "/alpha2_king_rld_r1.cfg --report jsonl");
  CHECK(sweep.status == 0);
  CHECK(std::count(sweep.out.begin(), sweep.out.end(), '\n') == 9);
  CHECK(sweep.out.find("\"alpha\":\"5/16\"") != std::string::npos);
  const Run torus = cli("torus --grid hex --period 0,2 --second 14,0 --method bnb");
  CHECK(torus.status == 0);
  CHECK(torus.out.find("alpha = 3/7") != std::string::npos);
  CHECK(cli("torus --grid hex --period 0,2 --second 60,0").status == 4);
  CHECK(cli("bench --nodes 200").status == 0);
}
