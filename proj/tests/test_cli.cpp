#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cdd/cli/app.hpp"
#include "cdd/cli/gantt.hpp"
#include "cdd/instances.hpp"
#include "support.hpp"

using namespace cdd;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kFiveJobsPath = std::string(CDD_TEST_DATA_DIR) + "/five_jobs.txt";

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "cdd_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// Ten random ten-job entries in OR-library layout.
fs::path ten_job_file() {
  const fs::path p = scratch_dir() / "ten.txt";
  Rng rng(2);
  RawInstanceSet set;
  for (std::size_t k = 1; k <= 10; ++k) {
    const Instance inst = generate_random_instance(10, rng);
    set.entries.push_back({k, inst.jobs()});
  }
  spit(p, serialize_orlib(set));
  return p;
}

}  // namespace

TEST_CASE("solve a fixed sequence on one and two machines") {
  const Run one = invoke({"solve", "--instance", kFiveJobsPath, "--due-date", "16", "--mode", "exact-sequence",
                       "--sequence", "1,2,3,4,5", "--machines", "1"});
  CHECK(one.code == 0);
  CHECK(one.out.find("best total 81\n") != std::string::npos);
  CHECK(one.out.find("trace 116 81 95") != std::string::npos);
  CHECK(one.out.find("J1=11 J2=16 J3=18 J4=22 J5=26") != std::string::npos);

  // h = 16/21 reproduces D = 16 from the processing-time sum 21.
  const Run two = invoke({"solve", "--instance", kFiveJobsPath, "--h", "16/21", "--mode", "exact-sequence",
                       "--sequence", "1,2,3,4,5", "--machines", "1"});
  CHECK(two.out.find("best total 81\n") != std::string::npos);

  const Run par = invoke({"solve", "--instance", kFiveJobsPath, "--due-date", "16", "--mode", "exact-sequence",
                       "--sequence", "1,2,3,4,5", "--machines", "2"});
  CHECK(par.code == 0);
  CHECK(par.out.find("best total 32\n") != std::string::npos);
  CHECK(par.out.find("M1 total 20 completions J1=16 J3=18 J5=22") != std::string::npos);
  CHECK(par.out.find("M2 total 12 completions J2=16 J4=20") != std::string::npos);
}

TEST_CASE("usage and input errors") {
  const Run bad = invoke({"solve", "--bogus"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("Usage") != std::string::npos);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"solve", "--help"}).code == 0);
  CHECK(invoke({"solve", "--instance", "missing.txt", "--h", "0.2"}).code == 2);
  CHECK(invoke({"solve", "--instance", kFiveJobsPath}).code == 2);
  CHECK(invoke({"solve", "--instance", kFiveJobsPath, "--h", "0.2", "--due-date", "3"}).code == 2);
  CHECK(invoke({"solve", "--instance", kFiveJobsPath, "--h", "zero"}).code == 2);
  CHECK(invoke({"solve", "--instance", kFiveJobsPath, "--h", "0.2", "--index", "2"}).code == 2);
  CHECK(invoke({"solve", "--instance", kFiveJobsPath, "--h", "0.2", "--mode", "exact-sequence", "--sequence", "1,2,3"})
            .code == 2);
  CHECK(invoke({"solve", "--instance", kFiveJobsPath, "--h", "0.2", "--mode", "greedy"}).code == 2);

  const fs::path broken = scratch_dir() / "broken.txt";
  spit(broken, "1\n5\n6 7 9\n5 9\n");
  CHECK(invoke({"solve", "--instance", broken.string(), "--h", "0.2"}).code == 2);
}

TEST_CASE("infeasible machine masks exit with 3") {
  const fs::path mask = scratch_dir() / "mask.txt";
  spit(mask, "1 0\n0 0\n1 1\n1 1\n0 1\n");
  const Run r = invoke({"solve", "--instance", kFiveJobsPath, "--due-date", "16", "--machines", "2", "--mode",
                     "exact-sequence", "--feasibility", mask.string()});
  CHECK(r.code == 3);

  spit(mask, "1 0\n0 1\n1 1\n1 1\n0 1\n");
  const Run ok = invoke({"solve", "--instance", kFiveJobsPath, "--due-date", "16", "--machines", "2", "--mode",
                      "exact-sequence", "--feasibility", mask.string()});
  CHECK(ok.code == 0);
}

TEST_CASE("json results and gantt charts") {
  const fs::path dir = scratch_dir();
  const fs::path single = dir / "single.json";
  REQUIRE(invoke({"solve", "--instance", kFiveJobsPath, "--due-date", "16", "--mode", "exact-sequence", "--sequence",
               "1,2,3,4,5", "--json", single.string()})
              .code == 0);
  const auto doc = nlohmann::json::parse(slurp(single));
  CHECK(doc["best_total"] == 81);
  CHECK(doc["config"]["due_date"] == 16);
  CHECK(doc["trace"] == nlohmann::json::array({116, 81, 95}));

  const Run text = invoke({"gantt", "--result", single.string()});
  CHECK(text.code == 0);
  CHECK(text.out.find("M1  J1[5,11) J2[11,16) |D=16| J3[16,18)") != std::string::npos);

  const fs::path par = dir / "par.json";
  REQUIRE(invoke({"solve", "--instance", kFiveJobsPath, "--due-date", "16", "--machines", "2", "--mode",
               "exact-sequence", "--json", par.string()})
              .code == 0);
  const Run rows = invoke({"gantt", "--result", par.string(), "--format", "text"});
  CHECK(rows.out.find("M1  J1[10,16) |D=16| J3[16,18) J5[18,22)\n") != std::string::npos);
  CHECK(rows.out.find("M2  J2[11,16) |D=16| J4[16,20)\n") != std::string::npos);

  const fs::path svg = dir / "par.svg";
  CHECK(invoke({"gantt", "--result", par.string(), "--format", "svg", "--out", svg.string()}).code == 0);
  const std::string picture = slurp(svg);
  CHECK(picture.rfind("<svg", 0) == 0);
  CHECK(picture.find("<line") != std::string::npos);
  CHECK(picture.find(">M2<") != std::string::npos);

  const fs::path junk = dir / "junk.json";
  spit(junk, "{ not json");
  CHECK(invoke({"gantt", "--result", junk.string()}).code == 2);
  spit(junk, R"({"instance": {"due_date": 5}, "machines": []})");
  CHECK(invoke({"gantt", "--result", junk.string()}).code == 2);
  spit(junk, R"({"instance": {"due_date": 5}, "machines": [{"machine": 1, "jobs": []}]})");
  CHECK(invoke({"gantt", "--result", junk.string()}).code == 2);
  spit(junk, R"({"machines": [{"jobs": [{"id": 1, "start": 0, "completion": 2}]}]})");
  CHECK(invoke({"gantt", "--result", junk.string()}).code == 2);
  CHECK(invoke({"gantt", "--result", (dir / "nope.json").string()}).code == 2);
}

TEST_CASE("annealing results echo the resolved configuration and are stable") {
  const fs::path dir = scratch_dir();
  const fs::path a = dir / "a.json";
  const fs::path b = dir / "b.json";
  const std::vector<std::string> base{"solve", "--instance", kFiveJobsPath, "--h", "0.4", "--seed", "9"};
  auto with_json = [&](const fs::path& p, std::vector<std::string> extra) {
    std::vector<std::string> args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    args.push_back("--json");
    args.push_back(p.string());
    return invoke(args);
  };
  REQUIRE(with_json(a, {}).code == 0);
  REQUIRE(with_json(b, {}).code == 0);
  CHECK(slurp(a) == slurp(b));
  const auto doc = nlohmann::json::parse(slurp(a));
  CHECK(doc["config"]["anneal"]["ensemble_size"] == 4);
  CHECK(doc["config"]["anneal"]["max_iterations"] == 2500);
  CHECK(doc["config"]["anneal"]["seed"] == 9);
  CHECK(doc["config"]["h"] == "0.4");
  CHECK(doc["instance"]["due_date"] == 8);
  CHECK(doc["search"]["iterations_used"].is_number());
}

TEST_CASE("gantt text rendering places the due-date marker") {
  cli::GanttChart chart{10, {{{1, 2, 6}, {2, 6, 10}}, {{3, 7, 12}}}};
  CHECK(cli::render_gantt_text(chart) == "due date 10\nM1  J1[2,6) J2[6,10) |D=10|\nM2  |D=10| J3[7,12)\n");
}

TEST_CASE("bench rows, table and determinism") {
  const fs::path file = ten_job_file();
  const fs::path dir = scratch_dir();
  const fs::path first = dir / "first.csv";
  const fs::path second = dir / "second.csv";
  const std::vector<std::string> common{"bench", "--instances", file.string(), "--seeds", "4", "--iterations", "300"};

  auto run = [&](const fs::path& out, std::vector<std::string> extra) {
    std::vector<std::string> args = common;
    args.insert(args.end(), extra.begin(), extra.end());
    args.push_back("--out");
    args.push_back(out.string());
    return invoke(args).code;
  };
  REQUIRE(run(first, {"--threads", "1"}) == 0);
  REQUIRE(run(second, {"--threads", "4", "--chain-threads", "2"}) == 0);
  const std::string csv = slurp(first);
  CHECK(csv == slurp(second));

  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n,k,h,m,seed,best_total,iterations_used,wall_ms");
  std::size_t rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 40);
  CHECK(csv.find("\n10,1,0.2,1,4,") != std::string::npos);

  const Run table = invoke({"bench", "--instances", file.string(), "--seeds", "1,2", "--iterations", "100", "--index",
                         "3", "--h-list", "0.2,0.6", "--table"});
  CHECK(table.code == 0);
  CHECK(table.out.find("h=0.2") != std::string::npos);
  CHECK(table.out.find("h=0.6") != std::string::npos);

  const Run timed = invoke({"bench", "--instances", file.string(), "--seeds", "1", "--iterations", "50", "--index",
                         "1", "--h-list", "0.2", "--wall-clock"});
  CHECK(timed.out.find(",\n") == std::string::npos);

  CHECK(invoke({"bench", "--instances", file.string(), "--seeds", ""}).code == 2);
  CHECK(invoke({"bench", "--instances", file.string()}).code == 2);
  CHECK(invoke({"bench", "--instances", file.string(), "--seeds", "1", "--index", "11"}).code == 2);
}

TEST_CASE("check suites") {
  const Run shift = invoke({"check", "--suite", "shift", "--trials", "300", "--max-n", "20", "--seed", "1"});
  CHECK(shift.code == 0);
  CHECK(shift.out.find("shift: 300/300 passed") != std::string::npos);

  const Run dynamic = invoke({"check", "--suite", "dynamic", "--trials", "300", "--max-n", "30"});
  CHECK(dynamic.code == 0);

  const Run all = invoke({"check", "--trials", "5", "--max-n", "12"});
  CHECK(all.code == 0);
  CHECK(all.out.find("global: 5/5 passed") != std::string::npos);
  CHECK(all.out.find("parallel: 5/5 passed") != std::string::npos);

  CHECK(invoke({"check", "--suite", "global", "--max-n", "12"}).code == 2);
  CHECK(invoke({"check", "--suite", "parallel", "--max-n", "7"}).code == 2);
  CHECK(invoke({"check", "--suite", "nope"}).code == 2);
}
