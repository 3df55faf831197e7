#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef RFLAB_CLI_PATH
#error "RFLAB_CLI_PATH must point at the built binary"
#endif

namespace {

struct run_result {
  int exit_code = -1;
  std::string out;
};

run_result run(const std::string& args) {
  const std::string cmd = std::string(RFLAB_CLI_PATH) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  run_result r;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe))
    r.out.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("csum emits the expected Ramanujan sums") {
  const auto r = run("csum --q 6 --n 0..6 --format csv 2>/dev/null");
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 8);
  REQUIRE(rows[0] == std::vector<std::string>{"n", "c_q_n"});
  const std::vector<std::string> expected{"2", "1", "-1", "-2", "-1", "1", "2"};
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(rows[i + 1][1] == expected[i]);
}

TEST_CASE("glaisher subcommand") {
  const auto r = run("glaisher --n 6 --format csv 2>/dev/null");
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][1] == "7.000000");
  CHECK(rows[1][3] == "7");
}

TEST_CASE("rota independence reports the product structure") {
  const auto r = run(
      "rota independence --p 2 --q 3 --s 2 --M 200000 --format csv 2>/dev/null");
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  const double joint = std::stod(rows[1][4]);
  const double product = std::stod(rows[1][5]);
  CHECK(std::abs(joint - 1.0 / 36.0) < 1e-4);
  CHECK(std::abs(product - 1.0 / 36.0) < 1e-4);
}

TEST_CASE("validation failures exit with code 2") {
  CHECK(run("wk-table --h 2 --N-max 0 --step 10 2>/dev/null").exit_code == 2);
  CHECK(run("goldbach --n 9 2>/dev/null").exit_code == 2);
  CHECK(run("singular --h 0 2>/dev/null").exit_code == 2);
  CHECK(run("rota independence --p 2 --q 2 --s 2 2>/dev/null").exit_code == 2);
}

TEST_CASE("resource limits exit with code 3") {
  CHECK(run("glaisher --n 2000000 2>/dev/null").exit_code == 3);
  CHECK(run("sieve-dump --limit 900000000 --dump-to /tmp/never.bin 2>/dev/null")
            .exit_code == 3);
}

TEST_CASE("odd shift leaves the ratio column empty and warns") {
  const auto r = run(
      "wk-table --h 3 --N-max 2000 --step 1000 --format csv 2>/tmp/rflab_warn.txt");
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 3);
  REQUIRE(rows[1].size() == 4);
  CHECK(rows[1][3].empty());
  CHECK(slurp("/tmp/rflab_warn.txt").find("C(h) = 0") != std::string::npos);
}

TEST_CASE("singular values scale as the divisor correction dictates") {
  const auto r2 = run("singular --h 2 --trunc 2000 --precision 12 --format csv 2>/dev/null");
  const auto r5 = run("singular --h 5 --trunc 2000 --precision 12 --format csv 2>/dev/null");
  const auto r6 = run("singular --h 6 --trunc 2000 --precision 12 --format csv 2>/dev/null");
  REQUIRE(r2.exit_code == 0);
  REQUIRE(r5.exit_code == 0);
  REQUIRE(r6.exit_code == 0);
  const double c2 = std::stod(parse_csv(r2.out)[1][1]);
  const double c5 = std::stod(parse_csv(r5.out)[1][1]);
  const double c6 = std::stod(parse_csv(r6.out)[1][1]);
  CHECK(c5 == 0.0);
  CHECK(std::abs(c6 - 2.0 * c2) / c6 < 1e-9);
}

TEST_CASE("goldbach counts through the CLI") {
  const auto r = run("goldbach --n 100 --limit 100000 --format csv 2>/dev/null");
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][1] == "12");  // ordered
  CHECK(rows[1][2] == "6");   // unordered
}

TEST_CASE("wk-table hits the resource cap with exit 3") {
  CHECK(run("wk-table --h 2 --N-max 200000000 --step 200000000 2>/dev/null")
            .exit_code == 3);
}

TEST_CASE("threads flag does not change the emitted bytes") {
  const std::string base = "wk-table --h 2 --N-max 200000 --step 100000 "
                           "--limit 300000 --format csv ";
  const auto one = run(base + "--threads 1 2>/dev/null");
  const auto three = run(base + "--threads 3 2>/dev/null");
  REQUIRE(one.exit_code == 0);
  REQUIRE(three.exit_code == 0);
  CHECK(one.out == three.out);
}

TEST_CASE("json output parses and matches csv at the printed precision") {
  const auto rc = run("wk-table --h 2 --N-max 3000 --step 1000 --limit 10000 "
                      "--format csv --precision 6 2>/dev/null");
  const auto rj = run("wk-table --h 2 --N-max 3000 --step 1000 --limit 10000 "
                      "--format json --precision 6 2>/dev/null");
  REQUIRE(rc.exit_code == 0);
  REQUIRE(rj.exit_code == 0);
  const auto csv = parse_csv(rc.out);
  const auto doc = nlohmann::json::parse(rj.out);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == csv.size() - 1);
  for (std::size_t i = 0; i < doc.size(); ++i) {
    CHECK(doc[i]["N"].get<std::int64_t>() == std::stoll(csv[i + 1][0]));
    CHECK(doc[i]["Psi"].get<double>() ==
          Catch::Approx(std::stod(csv[i + 1][1])).margin(1e-9));
    CHECK(doc[i]["Ratio"].get<double>() ==
          Catch::Approx(std::stod(csv[i + 1][3])).margin(1e-9));
  }
}

TEST_CASE("identical parameters produce byte-identical output") {
  const std::string args =
      "singular --h 6 --trunc 5000 --compare-partial 500 --format json "
      "--output /tmp/rflab_det_";
  REQUIRE(run(args + "a.json 2>/dev/null").exit_code == 0);
  REQUIRE(run(args + "b.json 2>/dev/null").exit_code == 0);
  const auto a = slurp("/tmp/rflab_det_a.json");
  const auto b = slurp("/tmp/rflab_det_b.json");
  REQUIRE(!a.empty());
  CHECK(a == b);
}

TEST_CASE("run manifest lands in the requested file as one JSON line") {
  std::remove("/tmp/rflab_manifest.jsonl");
  const auto r = run("glaisher --n 10 --manifest /tmp/rflab_manifest.jsonl "
                     "2>/dev/null");
  REQUIRE(r.exit_code == 0);
  const auto text = slurp("/tmp/rflab_manifest.jsonl");
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc["command"] == "glaisher");
  CHECK(doc["params"]["n"] == 10);
  CHECK(doc.contains("duration_s"));
  CHECK(doc.contains("version"));
}

TEST_CASE("sieve snapshot dump and inspect round trip") {
  const auto rd = run("sieve-dump --limit 5000 --dump-to /tmp/rflab_tables.bin "
                      "--format csv 2>/dev/null");
  REQUIRE(rd.exit_code == 0);
  const auto ri = run("sieve-dump --input /tmp/rflab_tables.bin --format csv "
                      "2>/dev/null");
  REQUIRE(ri.exit_code == 0);
  const auto rows = parse_csv(ri.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][0] == "5000");
  CHECK(rows[1][1] == "669");  // pi(5000)
}

TEST_CASE("reference-weight table reproduces published rows") {
  // Abbreviated run: two rows at the published step; the full grid is part
  // of the acceptance suite.
  const auto r = run("wk-table --h 2 --N-max 200000 --step 100000 --weight "
                     "reference --limit 1000000 --format csv 2>/dev/null");
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(std::abs(std::stod(rows[1][1]) - 131522.552204) < 0.15);
  CHECK(std::abs(std::stod(rows[2][1]) - 264287.347531) < 0.3);
}

TEST_CASE("paper-defaults run emits the full published table") {
  const auto r = run("wk-table --h 2 --paper-defaults --format csv 2>/dev/null");
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 11);  // header + ten rows
  const double last_psi = std::stod(rows[10][1]);
  CHECK(std::abs(last_psi - 1312843.985016) / 1312843.985016 < 1e-6);
  const double last_ratio = std::stod(rows[10][3]);
  CHECK(std::abs(last_ratio - 1.005697) < 1e-3);
}
