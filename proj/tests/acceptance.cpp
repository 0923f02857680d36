// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance criteria 1-10 at desk scale. Prints one PASS/FAIL line per
// criterion; the exit status is 0 only when every selected criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "spinboson/config.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/experiments.hpp"

namespace
{

namespace sb = spinboson;

struct Criterion
{
  int id;
  const char *name;
  double budget;  // seconds
  std::function<std::vector<sb::Study>(const sb::RunConfig &, int)> run;
};

std::vector<Criterion> criteria()
{
  using V = std::vector<sb::Study>;
  return {
    {1, "ccr-exactness", 10.0, [](const sb::RunConfig &c, int) { return V{sb::ccr_study(c.targets)}; }},
    {2, "free-closed-forms", 30.0, [](const sb::RunConfig &c, int) { return V{sb::free_study(c)}; }},
    {3, "laplace-representation", 300.0, [](const sb::RunConfig &c, int t) { return V{sb::laplace_study(c, t)}; }},
    {4, "sokhotski-plemelj", 60.0, [](const sb::RunConfig &c, int) { return V{sb::plemelj_study(c)}; }},
    {5, "resonance-width-scaling", 300.0, [](const sb::RunConfig &c, int) { return V{sb::width_scaling_study(c)}; }},
    {6, "line-shape", 600.0, [](const sb::RunConfig &c, int t) { return V{sb::lineshape_study(c, t)}; }},
    {7, "oracle-equivalence", 900.0, [](const sb::RunConfig &c, int t) { return V{sb::oracle_study(c, t)}; }},
    {8, "thl12-rates", 300.0, [](const sb::RunConfig &c, int t) { return V{sb::thl12_study(c, t)}; }},
    {9, "uniform-tail", 300.0, [](const sb::RunConfig &c, int t) { return V{sb::tail_uniformity_study(c, t)}; }},
    {10, "proof-decomposition", 120.0, [](const sb::RunConfig &c, int t) { return V{sb::proof_study(c, t)}; }},
  };
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"acceptance criteria"};
  std::string config;
  std::vector<int> only;
  int threads = 1;
  bool verbose = false;
  app.add_option("--config", config, "YAML configuration file")->check(CLI::ExistingFile);
  app.add_option("--criterion", only, "run only these criteria (1-10)")->check(CLI::Range(1, 10));
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", verbose, "print every individual check");
  CLI11_PARSE(app, argc, argv);

  sb::RunConfig cfg;
  try
  {
    if (!config.empty())
    {
      cfg = sb::load_config(config);
    }
    sb::require_valid(cfg);
  }
  catch (const std::exception &e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }

  const std::set<int> selected(only.begin(), only.end());
  int failed = 0;
  for (const auto &c : criteria())
  {
    if (!selected.empty() && !selected.count(c.id))
    {
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<sb::Study> studies;
    std::string error;
    try
    {
      studies = c.run(cfg, threads);
    }
    catch (const std::exception &e)
    {
      error = e.what();
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    bool pass = error.empty() && sec <= c.budget;
    std::string worst;
    for (const auto &s : studies)
    {
      for (const auto &k : s.checks)
      {
        if (!k.pass)
        {
          pass = false;
          char buf[256];
          if (k.detail.empty())
          {
            std::snprintf(buf, sizeof buf, " %s=%.4g (tol %.4g)", k.name.c_str(), k.value, k.tolerance);
          }
          else
          {
            std::snprintf(buf, sizeof buf, " %s=%.4g (%s)", k.name.c_str(), k.value, k.detail.c_str());
          }
          worst += buf;
        }
      }
    }
    if (!error.empty())
    {
      worst = " error: " + error;
    }
    else if (sec > c.budget)
    {
      worst += " over the runtime budget";
    }
    std::printf("%s criterion %2d %-26s %8.2fs / %4.0fs%s\n", pass ? "PASS" : "FAIL", c.id, c.name, sec, c.budget,
                worst.c_str());
    if (verbose)
    {
      for (const auto &s : studies)
      {
        for (const auto &k : s.checks)
        {
          std::printf("       %s %-32s %.6g  tol %.6g  %s\n", k.pass ? "ok  " : "FAIL", k.name.c_str(), k.value,
                      k.tolerance, k.detail.c_str());
        }
      }
    }
    std::fflush(stdout);
    failed += !pass;
  }
  return failed == 0 ? 0 : 1;
}
