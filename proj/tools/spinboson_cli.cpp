// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "spinboson/config.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/experiments.hpp"

namespace
{

namespace sb = spinboson;

enum Exit : int
{
  Pass = 0,
  AcceptanceFailure = 1,
  BadConfig = 2,
  NumericalFailure = 3
};

struct Flags
{
  std::string config;
  std::string out;
  bool deterministic = false;
  int threads = 1;
};

void add_flags(CLI::App *sub, Flags &f)
{
  sub->add_option("--config", f.config, "YAML configuration file")->check(CLI::ExistingFile);
  sub->add_option("--out", f.out, "output directory (overrides the config)");
  sub->add_flag("--deterministic", f.deterministic, "omit timings so repeated runs are byte-identical");
  sub->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
}

sb::RunConfig load(const Flags &f)
{
  return f.config.empty() ? sb::RunConfig{} : sb::load_config(f.config);
}

void print(const sb::RunSummary &s)
{
  std::cout << "experiment " << sb::to_string(s.experiment) << "  config " << s.config_hash << '\n';
  for (const auto &st : s.studies)
  {
    std::cout << st.name << '\n';
    for (const auto &c : st.checks)
    {
      std::cout << "  " << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(34) << c.name << std::right
                << std::setprecision(4) << std::scientific << c.value << "  tol " << c.tolerance
                << std::defaultfloat;
      if (!c.detail.empty())
      {
        std::cout << "  (" << c.detail << ')';
      }
      std::cout << '\n';
    }
  }
  std::cout << (s.pass() ? "PASS" : "FAIL") << '\n';
}

int do_validate(const Flags &f)
{
  const sb::RunConfig cfg = load(f);
  const sb::ValidationReport rep = sb::validate(cfg);
  std::cout << rep.to_json().dump(2) << '\n';
  return rep.ok() ? Pass : BadConfig;
}

int do_run(const Flags &f, sb::Experiment e)
{
  const sb::RunConfig cfg = load(f);
  sb::RunOptions opt;
  opt.out = f.out.empty() ? std::filesystem::path(cfg.output) : std::filesystem::path(f.out);
  opt.deterministic = f.deterministic;
  opt.threads = f.threads;
  const sb::RunSummary s = sb::run(cfg, e, opt);
  print(s);
  std::cout << "wrote " << (opt.out / "summary.json").string() << '\n';
  return s.pass() ? Pass : AcceptanceFailure;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Spin-boson resonance and scattering numerics"};
  app.set_version_flag("--version", sb::version);
  app.require_subcommand(1);

  Flags flags;
  std::function<int()> action;

  auto *val = app.add_subcommand("validate", "check a configuration without running anything");
  add_flags(val, flags);
  val->callback([&] { action = [&] { return do_validate(flags); }; });

  for (auto e : {sb::Experiment::Spectrum, sb::Experiment::Kernel, sb::Experiment::Lineshape,
                 sb::Experiment::LaplaceCheck, sb::Experiment::PlemeljCheck, sb::Experiment::MultiscaleCheck,
                 sb::Experiment::OracleCheck})
  {
    auto *sub = app.add_subcommand(sb::to_string(e), "run the " + sb::to_string(e) + " experiment");
    add_flags(sub, flags);
    sub->callback([&, e] { action = [&, e] { return do_run(flags, e); }; });
  }

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int rc = app.exit(e);
    return rc == 0 ? Pass : BadConfig;
  }

  try
  {
    return action();
  }
  catch (const sb::ConfigError &e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return BadConfig;
  }
  catch (const sb::DomainError &e)
  {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return BadConfig;
  }
  catch (const sb::NumericalError &e)
  {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return NumericalFailure;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return NumericalFailure;
  }
}
