#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "steerdet/cli.hpp"
#include "steerdet/error.hpp"
#include "steerdet/io.hpp"
#include "support.hpp"

using namespace steerdet;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("steerdet_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("state JSON round trip is exact") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix rho = random_density(seed, 2, 3);
    const DensityMatrix back = parse_state_json(state_to_json_string(rho));
    CHECK(back.dims() == rho.dims());
    CHECK(back.mat().data() == rho.mat().data());
  }
}

TEST_CASE("state JSON errors name the field") {
  const auto message = [](const std::string& text) {
    try {
      parse_state_json(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("{\"matrix\": []}").find("dims") != std::string::npos);
  CHECK(message("{\"dims\": [2, 2]}").find("matrix") != std::string::npos);
  CHECK(message("{\"dims\": [2], \"matrix\": []}").find("dims") != std::string::npos);
  CHECK(message("{\"dims\": [1, 1], \"matrix\": [[1, \"x\"]]}").find("entry 0") != std::string::npos);
  CHECK(message("{\"dims\": [1, 1], \"matrix\": [[1, 0], [0, 0]]}").find("matrix") != std::string::npos);
  CHECK(message("not json").find("malformed") != std::string::npos);
  CHECK_THROWS_AS(parse_state_json("{\"dims\": [1, 1], \"matrix\": [[0.99, 0]]}"), ValidationError);
  CHECK_THROWS_AS(parse_state_json("{\"dims\": [4, 5], \"matrix\": []}"), DimensionError);
}

TEST_CASE("report JSON round trips") {
  const SteeringReport r = thm1_verdict(werner(0.7));
  const SteeringReport back = json(r).get<SteeringReport>();
  CHECK(back.b_to_a.verdict == r.b_to_a.verdict);
  CHECK(back.a_to_b.verdict == r.a_to_b.verdict);
  CHECK(*back.b_to_a.witness_min_eig == *r.b_to_a.witness_min_eig);
  CHECK(back.mu_used == r.mu_used);
  CHECK(*back.ls3_value == *r.ls3_value);

  const SteeringReport q = thm1_verdict(lossy_werner(0.8, 0.4));
  const json jq = q;
  CHECK(jq["verdict_BtoA"] == "not_applicable");
  CHECK(jq["detected_BtoA"] == false);
  CHECK(jq["witness_min_eig_BtoA"].is_null());
  CHECK(jq["ls2_value"].is_null());
  const SteeringReport qb = jq.get<SteeringReport>();
  CHECK_FALSE(qb.b_to_a.witness_min_eig);
  CHECK_FALSE(qb.ls2_value);

  const EntanglementReport e = spa_report(werner(0.9));
  const EntanglementReport eb = json(e).get<EntanglementReport>();
  CHECK(eb.entangled == e.entangled);
  CHECK(eb.method == EntanglementMethod::spa);
  CHECK(*eb.spa_min_eig == *e.spa_min_eig);

  ThresholdResult t{"p", 0.5, 0.49, 0.51, "thm1", DetectionSide::below, 12};
  const ThresholdResult tb = json(t).get<ThresholdResult>();
  CHECK(tb.param_name == "p");
  CHECK(tb.lo == 0.49);
  CHECK(tb.side == DetectionSide::below);
  CHECK(tb.iterations == 12);
}

TEST_CASE("cli verdict on werner(0.7)") {
  TempDir tmp;
  const std::string path = tmp.file("w.json");
  write_text(path, state_to_json_string(werner(0.7)));
  const Run r = run_cli({"verdict", path});
  REQUIRE(r.code == cli::kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["steering"]["detected_BtoA"] == true);
  CHECK(j["steering"]["detected_AtoB"] == true);
  CHECK(j["entanglement"]["ppt"]["entangled"] == true);
  CHECK(j["entanglement"]["spa"]["entangled"] == true);
  CHECK(j["dims"] == json({2, 2}));

  const Run low = run_cli({"verdict", path, "--mu", "0.1"});
  CHECK(json::parse(low.out)["steering"]["detected_BtoA"] == false);
}

TEST_CASE("cli verdict rejects a trace-0.99 state with exit 2") {
  TempDir tmp;
  const std::string path = tmp.file("bad.json");
  write_text(path, "{\"dims\": [2, 2], \"matrix\": [[0.99,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],"
                   "[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]}");
  const Run r = run_cli({"verdict", path});
  CHECK(r.code == cli::kExitBadInput);
  CHECK(r.err.find("trace") != std::string::npos);
  CHECK(run_cli({"verdict", tmp.file("missing.json")}).code == cli::kExitBadInput);
}

TEST_CASE("cli verdict on a qubit-qutrit file") {
  TempDir tmp;
  const std::string path = tmp.file("lossy.json");
  const Run fam = run_cli({"family", "--family", "lossy_werner", "--param", "p=0.8", "--param", "mu=0.3", "--out", path});
  REQUIRE(fam.code == cli::kExitOk);
  const Run r = run_cli({"verdict", path});
  REQUIRE(r.code == cli::kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["steering"]["verdict_BtoA"] == "not_applicable");
  CHECK(j["steering"]["verdict_AtoB"] == "detected");
  CHECK_FALSE(j["entanglement"].contains("spa"));
}

TEST_CASE("cli sweep") {
  const Run w = run_cli({"sweep", "--family", "werner", "--detector", "thm1"});
  REQUIRE(w.code == cli::kExitOk);
  const json jw = json::parse(w.out);
  CHECK(std::abs(jw["boundary"].get<double>() - 1.0 / std::sqrt(3.0)) <= 1e-5);
  CHECK(jw["family"] == "werner");
  const ThresholdResult back = jw.get<ThresholdResult>();
  CHECK(back.side == DetectionSide::above);

  const Run ad = run_cli({"sweep", "--family", "amp_damp_bell", "--detector", "thm1"});
  const json jad = json::parse(ad.out);
  CHECK(std::abs(jad["boundary"].get<double>() - 0.411) <= 1e-3);
  CHECK(jad["direction_of_detection"] == "below");

  const json ab = json::parse(run_cli({"sweep", "--family", "one_way", "--detector", "thm1_ab"}).out);
  const json ba = json::parse(run_cli({"sweep", "--family", "one_way", "--detector", "thm1_ba"}).out);
  CHECK(std::abs(ab["boundary"].get<double>() - 0.566) <= 1e-3);
  CHECK(std::abs(ba["boundary"].get<double>() - 0.577) <= 1e-3);

  const Run csv = run_cli({"sweep", "--family", "werner", "--format", "csv"});
  REQUIRE(csv.code == cli::kExitOk);
  CHECK(csv.out.rfind(std::string(kPrescanCsvHeader) + "\n", 0) == 0);
  CHECK(count_lines(csv.out) == 1 + kPrescanPoints);

  CHECK(run_cli({"sweep", "--family", "nosuch"}).code == cli::kExitBadInput);
  CHECK(run_cli({"sweep", "--family", "werner", "--detector", "bogus"}).code == cli::kExitBadInput);
  CHECK(run_cli({"sweep", "--family", "nmems", "--detector", "ls2"}).code == cli::kExitBadInput);
  CHECK(run_cli({"sweep", "--family", "lossy_werner"}).code == cli::kExitBadInput);
}

TEST_CASE("cli region CSV") {
  TempDir tmp;
  const std::string a = tmp.file("a.csv"), b = tmp.file("b.csv"), c = tmp.file("c.csv");
  REQUIRE(run_cli({"region", "--family", "werner_derivative", "--out", a, "--threads", "1"}).code == cli::kExitOk);
  REQUIRE(run_cli({"region", "--family", "werner_derivative", "--out", b, "--threads", "1"}).code == cli::kExitOk);
  REQUIRE(run_cli({"region", "--out", c, "--threads", "4"}).code == cli::kExitOk);
  const std::string text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text == slurp(c));

  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(line == "alpha,theta,thm1_ba,thm1_ab,ls2,ls3");
  std::size_t rows = 0, row55 = 0;
  bool corner = false;
  std::string first;
  while (std::getline(in, line)) {
    if (rows == 0) first = line;
    ++rows;
    if (line.rfind("0.550000,", 0) == 0) {
      ++row55;
      CHECK(line.substr(line.size() - 7, 3) == "0,0");
    }
    if (line.rfind("1.000000,0.785398,", 0) == 0) corner = (line == "1.000000,0.785398,1,1,1,1");
  }
  CHECK(rows == 40401);
  CHECK(row55 == 201);
  CHECK(corner);
  CHECK(first.rfind("0.000000,0.000000,", 0) == 0);

  CHECK(run_cli({"region", "--family", "werner", "--out", c}).code == cli::kExitBadInput);
  CHECK(run_cli({"region", "--grid", "3x", "--out", c}).code == cli::kExitBadInput);
  CHECK(run_cli({"region", "--grid", "5x3", "--out", tmp.file("nodir/x.csv")}).code == cli::kExitBadInput);
}

TEST_CASE("cli region grid option") {
  const Run r = run_cli({"region", "--grid", "5x3"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(count_lines(r.out) == 1 + 15);
}

TEST_CASE("cli family writes a parseable state") {
  const Run r = run_cli({"family", "--family", "munro", "--param", "C=0.8"});
  REQUIRE(r.code == cli::kExitOk);
  const DensityMatrix rho = parse_state_json(r.out);
  CHECK(testsupport::max_diff(rho.mat(), munro(0.8).mat()) == 0.0);
  CHECK(run_cli({"family", "--family", "munro"}).code == cli::kExitBadInput);
  CHECK(run_cli({"family", "--family", "munro", "--param", "C"}).code == cli::kExitBadInput);
}

TEST_CASE("cli argument errors") {
  CHECK(run_cli({}).code == cli::kExitBadInput);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitBadInput);
  CHECK(run_cli({"sweep", "--family", "werner", "--mu", "0.9"}).code == cli::kExitBadInput);
  CHECK(run_cli({"sweep", "--family", "werner", "--format", "xml"}).code == cli::kExitBadInput);
  const Run help = run_cli({"--help"});
  CHECK(help.code == cli::kExitOk);
  CHECK(help.out.find("selftest") != std::string::npos);
}
