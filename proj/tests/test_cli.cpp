#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ellipdrive/cli.hpp"
#include "ellipdrive/output.hpp"

using namespace ellipdrive;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ellipdrive");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (line.empty() || line[0] == '#' || eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string* header = nullptr) {
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  return {std::istreambuf_iterator<char>(is), {}};
}

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() / "ellipdrive_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("format_number") {
  CHECK(format_number(0.125, 12) == "0.125");
  CHECK(format_number(-0.0, 12) == "0");
  CHECK(format_number(1.0 / 3.0, 6) == "0.333333");
  CHECK(format_number(1e-20, 3) == "1e-20");
}

TEST_CASE("params") {
  const auto r = run({"params", "--a", "0.3", "--k", "0.25", "--omega", "1", "--hbar", "1"});
  CHECK(r.code == kExitOk);
  const auto kv = key_values(r.out);
  CHECK(kv.at("x") == "1.6 (solved)");
  CHECK(kv.at("B") == "0.125");
  CHECK(kv.at("T") == "0.316227766017");
  CHECK(std::stod(kv.at("drive_period")) == doctest::Approx(6.38496888853).epsilon(1e-11));
  CHECK(kv.at("status") == "ok");
}

TEST_CASE("params rejects") {
  const auto bad = run({"params", "--a", "0.3", "--x", "1.0", "--k", "0.25"});
  CHECK(bad.code == kExitDomain);
  CHECK(std::stod(key_values(bad.out).at("condition_residual")) == doctest::Approx(0.0975));
  const auto zero = run({"params", "--k", "0"});
  CHECK(zero.code == kExitDomain);
  CHECK(zero.err.find("degenerate modulus") != std::string::npos);
  CHECK(run({"params", "--a", "0.9"}).code == kExitDomain);
  CHECK(run({"params", "--bogus", "1"}).code == kExitUsage);
  CHECK(run({"params", "--a", "abc"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"simulate", "--samples", "1"}).code == kExitUsage);
  CHECK(run({"simulate", "--format", "png"}).code == kExitUsage);
}

TEST_CASE("simulate ground state") {
  const auto r = run({"simulate"});
  REQUIRE(r.code == kExitOk);
  std::string header;
  const auto rows = parse_csv(r.out, &header);
  CHECK(header == kTrajectoryHeader);
  REQUIRE(rows.size() == 601);
  CHECK(rows[0][0] == 0.0);
  CHECK(std::abs(rows[0][7] - 1.0) <= 1e-12);
  CHECK(rows[0][8] <= 1e-15);
  CHECK(rows[0][9] <= 1e-15);
  CHECK(rows[0][10] == 0.0);
  CHECK(rows.back()[0] == 60.0);
  double min_p1 = 1.0;
  for (const auto& row : rows) {
    REQUIRE(row.size() == 14);
    CHECK(std::abs(row[7] + row[8] + row[9] - 1.0) <= 1e-10);
    min_p1 = std::min(min_p1, row[7]);
  }
  CHECK(min_p1 >= 0.5);
  CHECK(min_p1 < 0.6);
}

TEST_CASE("simulate is byte-stable") {
  const auto a = run({"simulate", "--samples", "301", "--precision", "17"});
  const auto b = run({"simulate", "--samples", "301", "--precision", "17"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
}

TEST_CASE("simulate initial states") {
  const auto plus = run({"simulate", "--initial", "plus", "--samples", "11"});
  CHECK(plus.code == kExitOk);
  CHECK(run({"simulate", "--initial", "0.6,0,0,0.8,0,0", "--samples", "11"}).code == kExitOk);
  CHECK(run({"simulate", "--initial", "1,0,1,0,0,0"}).code == kExitDomain);
  CHECK(run({"simulate", "--initial", "1,0,0"}).code == kExitUsage);
  CHECK(run({"simulate", "--initial", "sideways"}).code == kExitUsage);
}

TEST_CASE("simulate to files") {
  const auto dir = scratch_dir();
  const auto csv = dir / "traj.csv";
  fs::remove(dir / "traj.svg");
  const auto r = run({"simulate", "--out", csv.string(), "--format", "csv+svg", "--samples", "101"});
  CHECK(r.code == kExitOk);
  CHECK(slurp(csv).starts_with(std::string(kTrajectoryHeader) + "\n"));
  const auto svg = slurp(dir / "traj.svg");
  CHECK(svg.starts_with("<svg"));
  CHECK(svg.find("p1") != std::string::npos);

  CHECK(run({"simulate", "--format", "csv+svg"}).code == kExitUsage);
  CHECK(run({"simulate", "--out", (dir / "missing" / "x.csv").string()}).code == kExitIo);
}

TEST_CASE("config file with flag override") {
  const auto dir = scratch_dir();
  const auto cfg = dir / "run.conf";
  {
    std::ofstream os(cfg);
    os << "a=0.2\nk=0.3\nsamples=21\n";
  }
  const auto r = run({"params", "--config", cfg.string(), "--a", "0.3"});
  CHECK(r.code == kExitOk);
  const auto kv = key_values(r.out);
  CHECK(kv.at("a") == "0.3");
  CHECK(kv.at("k") == "0.3");
  const auto sim = run({"simulate", "--config", cfg.string()});
  CHECK(parse_csv(sim.out).size() == 21);
  CHECK(run({"params", "--config", (dir / "nope.conf").string()}).code == kExitUsage);
}

TEST_CASE("phase") {
  const auto r = run({"phase"});
  REQUIRE(r.code == kExitOk);
  std::string header;
  const auto rows = parse_csv(r.out, &header);
  CHECK(header == kPhaseHeader);
  CHECK(rows[0][1] == 0.0);
  CHECK(rows[0][2] == 0.0);
  const auto kv = key_values(r.err);
  CHECK(std::stod(kv.at("phase_rate_at_0")) == doctest::Approx(0.711513).epsilon(1e-6));
  CHECK(std::stod(kv.at("mean_phase_rate")) < std::stod(kv.at("drive_angular_frequency")));
  CHECK(std::stod(kv.at("drive_angular_frequency")) == doctest::Approx(0.98406).epsilon(1e-5));

  const auto dir = scratch_dir();
  const auto to_file = run({"phase", "--out", (dir / "phase.csv").string()});
  CHECK(to_file.code == kExitOk);
  CHECK(key_values(to_file.out).count("mean_phase_rate") == 1);
}

TEST_CASE("verify") {
  const auto ok = run({"verify"});
  CHECK(ok.code == kExitOk);
  auto kv = key_values(ok.out);
  CHECK(kv.at("result") == "pass");
  CHECK(kv.at("matched_variant") == "three_halves");
  CHECK(std::stod(kv.at("max_state_deviation")) <= 1e-6);

  const auto zero = run({"verify", "--zero-phase", "--samples", "121"});
  CHECK(zero.code == kExitVerificationFailed);
  CHECK(std::stod(key_values(zero.out).at("state_deviation_plus")) > 0.1);

  const auto soliton = run({"verify", "--k", "1", "--a", "1.2", "--x", "1.6", "--t-max", "20", "--samples", "201"});
  CHECK(soliton.code == kExitOk);
  CHECK(soliton.out.find("phase identically zero") != std::string::npos);

  const auto broken = run({"verify", "--x", "1.0"});
  CHECK(broken.code == kExitDomain);
  CHECK(key_values(broken.out).at("validation") == "failed");
}

TEST_CASE("density") {
  const auto r = run({"density", "--k", "0.7071067811865476", "--t-max", "20", "--samples", "201"});
  REQUIRE(r.code == kExitOk);
  const auto kv = key_values(r.err);
  CHECK(std::stod(kv.at("A")) == doctest::Approx(0.0816497).epsilon(1e-6));
  CHECK(std::stod(kv.at("B")) == doctest::Approx(0.1632993).epsilon(1e-6));
  CHECK(std::stod(kv.at("C")) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(kv.at("matched_variant") == "three_halves");
  CHECK(kv.at("configuration") == "ladder");

  std::string header;
  const auto rows = parse_csv(r.out, &header);
  CHECK(header.starts_with("t,re_rho11,im_rho11"));
  const std::size_t eig = rows[0].size() - 4;
  for (const auto& row : rows) {
    CHECK(row[eig] == doctest::Approx(0.2253210).epsilon(1e-6));
    CHECK(std::abs(row[eig] - rows[0][eig]) <= 1e-10);
    CHECK(std::abs(row[eig + 1] - 1.0 / 3.0) <= 1e-10);
    CHECK(std::abs(row[eig + 2] - rows[0][eig + 2]) <= 1e-10);
  }

  CHECK(run({"density", "--mu", "1", "--lambda", "1.5"}).code == kExitDomain);
}
