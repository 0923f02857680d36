// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPINBOSON_EXPERIMENTS_HPP
#define SPINBOSON_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spinboson/config.hpp"
#include "spinboson/io.hpp"

namespace spinboson
{

inline constexpr const char *version = "0.1.0";

struct Check
{
  std::string name;
  bool pass = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct Study
{
  std::string name;
  nlohmann::json results = nlohmann::json::object();
  std::vector<Check> checks;
  std::vector<std::pair<std::string, CsvTable>> tables;
  double seconds = 0.0;
  bool pass() const;
};

// One study per verifiable claim; the acceptance binary and the CLI share them.
Study ccr_study(const Targets &t, std::uint64_t seed = 20260101);
Study free_study(const RunConfig &c);
Study resonance_study(const RunConfig &c);
Study width_scaling_study(const RunConfig &c);
Study laplace_study(const RunConfig &c, int threads = 1);
Study plemelj_study(const RunConfig &c);
Study lineshape_study(const RunConfig &c, int threads = 1);
Study oracle_study(const RunConfig &c, int threads = 1);
Study kernel_study(const RunConfig &c, int threads = 1);
Study proof_study(const RunConfig &c, int threads = 1);
Study thl12_study(const RunConfig &c, int threads = 1);
Study tail_uniformity_study(const RunConfig &c, int threads = 1);

struct RunOptions
{
  std::filesystem::path out;
  bool deterministic = false;
  int threads = 1;
};

struct RunSummary
{
  Experiment experiment = Experiment::Spectrum;
  std::string config_hash;
  std::vector<Study> studies;
  bool pass() const;
  nlohmann::json to_json(const RunConfig &c, bool deterministic) const;
};

// Runs the studies behind `e`, writes summary.json and the CSV tables to
// opt.out. Throws ConfigError for invalid configs.
RunSummary run(const RunConfig &c, Experiment e, const RunOptions &opt);

}  // namespace spinboson

#endif  // SPINBOSON_EXPERIMENTS_HPP
