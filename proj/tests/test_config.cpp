// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "spinboson/config.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/experiments.hpp"
#include "spinboson/io.hpp"

using namespace spinboson;

namespace
{

std::string slurp(const std::filesystem::path &p)
{
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool mentions(const ValidationReport &r, const std::string &key)
{
  for (const auto &v : r.violations)
  {
    if (v.find(key) != std::string::npos)
    {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_SUITE("config")
{
  TEST_CASE("default configuration is valid")
  {
    const RunConfig c;
    const ValidationReport r = validate(c);
    CHECK(r.ok());
    CHECK(r.dorm2.ok());
    CHECK_NOTHROW(require_valid(c));
  }

  TEST_CASE("shipped default file matches the built-in defaults")
  {
    const RunConfig c = load_config(std::filesystem::path(SPINBOSON_SOURCE_DIR) / "configs/default.yaml");
    CHECK(c.hash() == RunConfig{}.hash());
  }

  TEST_CASE("theta outside the strip is rejected")
  {
    const RunConfig c = parse_config("model:\n  theta: {re: 0.0, im: 0.2}\n");
    const ValidationReport r = validate(c);
    CHECK_FALSE(r.ok());
    CHECK(mentions(r, "model.theta"));
    CHECK_THROWS_AS(require_valid(c), ConfigError);
  }

  TEST_CASE("mu outside (0, 1/2) is rejected")
  {
    const ValidationReport r = validate(parse_config("model: {mu: 0.6}\n"));
    CHECK_FALSE(r.ok());
    CHECK(mentions(r, "mu"));
  }

  TEST_CASE("dorm2 failure is reported")
  {
    const ValidationReport r = validate(parse_config("multiscale: {c_bold: 2.0}\n"));
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.dorm2.first);
  }

  TEST_CASE("strict keys and types")
  {
    CHECK_THROWS_WITH_AS(parse_config("modle: {g: 0.1}\n"), doctest::Contains("modle"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("model: {gg: 0.1}\n"), doctest::Contains("model.gg"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("model: {g: abc}\n"), doctest::Contains("model.g"), ConfigError);
    CHECK_THROWS_AS(parse_config("experiment: nonsense\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("packets: [[1.0, 0.3]]\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model: [1, 2]\n"), ConfigError);
  }

  TEST_CASE("parsed values and hash")
  {
    const RunConfig c = parse_config("experiment: lineshape\nmodel: {g: 0.05}\npackets: [[0.9, 0.2], [1.1, 0.2]]\n");
    REQUIRE(c.experiment);
    CHECK(*c.experiment == Experiment::Lineshape);
    CHECK(c.model.g == 0.05);
    REQUIRE(c.packets.size() == 1);
    CHECK(c.packets[0].second.center == 1.1);
    CHECK(c.hash() != RunConfig{}.hash());
    CHECK(c.hash() == parse_config("model: {g: 0.05}\nexperiment: lineshape\npackets: [[0.9, 0.2], [1.1, 0.2]]\n").hash());
    CHECK(c.hash().size() == 16);
  }

  TEST_CASE("experiment names round trip")
  {
    for (auto e : {Experiment::Spectrum, Experiment::Kernel, Experiment::Lineshape, Experiment::LaplaceCheck,
                   Experiment::PlemeljCheck, Experiment::MultiscaleCheck, Experiment::OracleCheck})
    {
      CHECK(parse_experiment(to_string(e)) == e);
    }
  }
}

TEST_SUITE("io")
{
  TEST_CASE("csv and hashes")
  {
    CsvTable t({"a", "b"});
    t.add({1.0, 0.1});
    std::ostringstream os;
    t.write(os);
    CHECK(os.str() == "a,b\n1,0.10000000000000001\n");
    CHECK_THROWS(t.add({1.0}));
    CHECK(hex64(fnv1a("")) == "cbf29ce484222325");
    CHECK(hex64(fnv1a("a")) == "af63dc4c8601ec8c");
    CHECK(complex_json(cplx(1.0, -2.0)) == nlohmann::json{{"re", 1.0}, {"im", -2.0}});
  }
}

TEST_SUITE("experiments")
{
  TEST_CASE("ccr study passes")
  {
    const Study s = ccr_study(Targets{});
    CHECK(s.pass());
    CHECK(s.results["pairs"] == 60);
  }

  TEST_CASE("free spectrum summary")
  {
    RunConfig c;
    c.model.g = 0.0;
    const Study s = free_study(c);
    CHECK(s.pass());
  }

  TEST_CASE("runs are deterministic")
  {
    const auto base = std::filesystem::temp_directory_path() / "spinboson_test_run";
    RunConfig c;
    RunOptions o;
    o.deterministic = true;
    o.out = base / "a";
    const RunSummary s = run(c, Experiment::PlemeljCheck, o);
    CHECK(s.pass());
    o.out = base / "b";
    run(c, Experiment::PlemeljCheck, o);
    for (auto f : {"summary.json", "plemelj.csv"})
    {
      CHECK(slurp(base / "a" / f) == slurp(base / "b" / f));
    }
    const auto j = nlohmann::json::parse(slurp(base / "a" / "summary.json"));
    CHECK(j["config_hash"] == c.hash());
    CHECK(j["versions"].contains("spinboson"));
    CHECK(j["versions"].contains("eigen"));
    CHECK_FALSE(j["studies"]["plemelj"].contains("seconds"));
    std::filesystem::remove_all(base);
  }

  TEST_CASE("invalid configuration does not run")
  {
    RunConfig c;
    c.model.form.mu = 0.6;
    RunOptions o;
    o.out = std::filesystem::temp_directory_path() / "spinboson_never";
    CHECK_THROWS_AS(run(c, Experiment::Spectrum, o), ConfigError);
  }
}
