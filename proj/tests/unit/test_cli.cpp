#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>

#include <json.hpp>

#include "mbw/commands.hpp"
#include "mbw/datasets.hpp"

namespace fs = std::filesystem;
using namespace mbw;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("mbwell_test_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("CSV round trip is bit-identical") {
  const std::vector<io::CsvRow> rows{
      {0.25, 0.0, 0.0, 0.0, 0.0, std::nullopt},
      {0.25, 0.1, 0.1 + 0.2, -1.0 / 3.0, 5e-324, 2.0 / 7.0},
      {0.25, 2.0, 0.0, -0.0, 0.0, std::nullopt},
  };
  const std::string text = io::to_csv(rows);
  CHECK(text.rfind(std::string(io::kCsvHeader) + "\n", 0) == 0);
  const auto back = io::parse_csv(text);
  CHECK(back == rows);
  CHECK(io::to_csv(back) == text);
}

TEST_CASE("malformed CSV is rejected") {
  CHECK_THROWS_AS(io::parse_csv("t,x,re\n"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_csv(std::string(io::kCsvHeader) + "\n0.1,0.2,0.3\n"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_csv(std::string(io::kCsvHeader) + "\n0.1,0.2,abc,0,0,1\n"), std::invalid_argument);
}

TEST_CASE("exit codes") {
  TempDir tmp;
  const std::string out = tmp.path.string();
  CHECK(run({"--version"}).code == cli::kExitOk);
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"sample", "--bogus"}).code == cli::kExitUsage);
  CHECK(run({"sample", "--family", "pt", "--n", "1", "--out", out}).code == cli::kExitUsage);
  CHECK(run({"sample", "--family", "confluent", "--m", "2", "--omega", "0", "--n", "eps", "--out", out}).code ==
        cli::kExitUsage);
  CHECK(run({"sample", "--family", "confluent", "--m", "2", "--omega", "0.4", "--n", "2", "--out", out}).code ==
        cli::kExitUsage);
  const auto bad = run({"verify", "--family", "confluent", "--m", "1", "--omega", "-0.5", "--out", out});
  CHECK(bad.code == cli::kExitVerificationFailed);
  CHECK(bad.out.find("RegularityViolation") != std::string::npos);
  CHECK(bad.out.find("RegularityViolation: RegularityViolation") == std::string::npos);
  const auto good = run({"verify", "--family", "box", "--times", "0.5", "--out", out});
  CHECK(good.code == cli::kExitOk);
  CHECK(fs::exists(tmp.path / "report.txt"));
  CHECK(fs::exists(tmp.path / "report.json"));
  CHECK(run({"replay", (tmp.path / "missing.json").string()}).code != cli::kExitOk);
}

TEST_CASE("output directory falls back to the environment") {
  TempDir tmp;
  const fs::path dir = tmp.path / "from_env";
  ::setenv(cli::kOutDirEnv, dir.string().c_str(), 1);
  const auto r = run({"sample", "--family", "box", "--n", "2", "--times", "0.5", "--points", "101"});
  ::unsetenv(cli::kOutDirEnv);
  REQUIRE(r.code == cli::kExitOk);
  CHECK(fs::exists(dir / "box_2.csv"));
  CHECK(fs::exists(dir / "manifest.json"));
  const auto rows = io::parse_csv(io::read_text(dir / "box_2.csv"));
  CHECK(rows.size() == 101);
  CHECK_FALSE(rows.front().potential.has_value());
  CHECK_FALSE(rows.back().potential.has_value());
  CHECK(rows.back().x == doctest::Approx(3.0));
}

TEST_CASE("replaying a manifest reproduces identical files") {
  TempDir tmp;
  const fs::path first = tmp.path / "first";
  const fs::path second = tmp.path / "second";
  REQUIRE(run({"sample", "--family", "confluent", "--m", "2", "--omega", "0.4", "--n", "1,eps,3", "--times",
               "0.25,1", "--points", "201", "--out", first.string()})
              .code == cli::kExitOk);
  const auto manifest = nlohmann::json::parse(io::read_text(first / "manifest.json"));
  CHECK(manifest["command"] == "sample");
  CHECK(manifest["version"] == cli::kVersion);
  for (const char* key : {"timestamp", "argv", "out_dir", "parameters", "outputs"}) CHECK(manifest.contains(key));
  REQUIRE(run({"replay", (first / "manifest.json").string(), "--out", second.string()}).code == cli::kExitOk);
  for (const char* name : {"confluent_1.csv", "confluent_eps.csv", "confluent_3.csv"}) {
    CHECK(io::read_text(first / name) == io::read_text(second / name));
  }
}

TEST_CASE("figure configurations") {
  const auto specs = io::figure_specs();
  REQUIRE(specs.size() == 5);
  CHECK(specs[0].name == "fig1");
  CHECK(specs[0].request.family.kind == FamilyKind::MovingBox);
  CHECK(specs[1].request.family.kind == FamilyKind::MovingPoschlTeller);
  CHECK(specs[2].request.family.confluent_config().omega() == 0.4);
  bool eps = false;
  for (const auto& s : specs[2].request.states) eps = eps || s.missing;
  CHECK(eps);
  for (int k : {3, 4}) {
    for (const auto& s : specs[k].request.states) CHECK_FALSE(s.missing);
    CHECK(specs[k].request.family.confluent_config().m() == 2);
  }
  CHECK(specs[3].request.family.confluent_config().omega() == -1.0);
  CHECK(specs[4].request.family.confluent_config().omega() == 0.0);
}

TEST_CASE("normalized datasets integrate to one") {
  io::SampleRequest req{FamilyId::poschl_teller(), {StateSelector::level(2)}, {0.5}, 1001, {}};
  const auto ds = io::build_datasets(req);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].name == "pt_2");
  CHECK(io::integrate_density(ds[0].rows, 0.5) == doctest::Approx(1.0).epsilon(1e-6));
}

}
