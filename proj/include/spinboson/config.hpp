// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPINBOSON_CONFIG_HPP
#define SPINBOSON_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spinboson/hamiltonian.hpp"
#include "spinboson/multiscale.hpp"
#include "spinboson/scattering.hpp"
#include "spinboson/spectral.hpp"

namespace spinboson
{

enum class Experiment
{
  Spectrum,
  Kernel,
  Lineshape,
  LaplaceCheck,
  PlemeljCheck,
  MultiscaleCheck,
  OracleCheck
};

Experiment parse_experiment(const std::string &s);
std::string to_string(Experiment e);

struct ContourConfig
{
  double eps = 0.05;
  double R = 5.0;
  double h = 0.05;
  double ray_h = 0.25;
  double grading = 0.25;
  int order = 16;
  int refine_levels = 2;  // node doublings checked by laplace-check
  std::vector<double> times{0.5, 2.0, 10.0};
  std::vector<double> couplings{0.0, 0.1};
};

struct LemmaConfig
{
  double gamma = 0.05;  // surrogate pole at e1 - i gamma
  WavePacket probe{0.45, 0.15};
  Thl12Plan plan;
  double q = 0.01;
  std::vector<double> Q{5.0, 10.0, 20.0, 40.0, 80.0};
  double zeta_sigma = 20.0;
  std::vector<std::pair<int, double>> levels{{1, 10.0}, {2, 20.0}, {3, 40.0}};
};

struct SpectrumConfig
{
  std::vector<double> couplings{0.02, 0.04, 0.08};  // width-scaling fit
  int refine_factor = 2;                            // second grid has modes * refine_factor
};

struct Targets
{
  double ccr = 1e-12;
  double free_eigen = 1e-12;
  double free_u = 1e-10;
  double laplace = 1e-6;
  double plemelj_c = 5.0;
  double plemelj_order = 0.9;
  double extrapolation = 1e-6;
  double width_p_lo = 1.9, width_p_hi = 2.1, width_c = 0.1;
  double lineshape_width = 0.15;
  double oracle_rel = 1e-3, oracle_abs = 1e-8;
  double thl12_band = 0.3;
  double tail_band = 0.2;
  double proof_rel = 1e-8;
  double kernel_forms = 1e-8;
};

struct RunConfig
{
  std::optional<Experiment> experiment;
  std::string output = "out";
  ModelParams model;
  ResonanceOptions resonance;
  SpectrumConfig spectrum;
  ContourConfig contour;
  MultiscaleParams multiscale;
  LemmaConfig lemma;
  std::vector<std::pair<WavePacket, WavePacket>> packets{{{1.0, 0.3}, {1.0, 0.3}}, {{0.9, 0.3}, {1.1, 0.3}}};
  double lineshape_g = 0.05;
  ScanSpec scan;
  TimeOptions time;
  ProofOptions proof;
  std::vector<double> q_values{1e-2, 1e-3};
  Targets targets;

  // Normalized form of every parsed value; the config hash is taken over its dump.
  nlohmann::json canonical() const;
  std::string hash() const;
};

// Strict YAML parsing: unknown keys and type mismatches raise ConfigError with
// the offending key path.
RunConfig parse_config(const std::string &yaml);
RunConfig load_config(const std::filesystem::path &path);

struct ValidationReport
{
  std::vector<std::string> violations;
  Dorm2Report dorm2;
  bool ok() const { return violations.empty(); }
  nlohmann::json to_json() const;
};

// Dry run of every invariant: model, strip membership, multiscale admissibility,
// packets, contour, scan and time-quadrature settings.
ValidationReport validate(const RunConfig &cfg);
// Throws ConfigError listing the violations.
void require_valid(const RunConfig &cfg);

}  // namespace spinboson

#endif  // SPINBOSON_CONFIG_HPP
