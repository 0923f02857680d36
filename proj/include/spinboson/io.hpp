// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPINBOSON_IO_HPP
#define SPINBOSON_IO_HPP

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinboson/quadrature.hpp"

namespace spinboson
{

nlohmann::json complex_json(cplx z);

// Minimal CSV table: header once, then rows of numbers at full precision.
class CsvTable
{
public:
  explicit CsvTable(std::vector<std::string> columns);
  void add(std::vector<double> row);
  std::size_t rows() const { return rows_.size(); }
  void write(std::ostream &os) const;
  void write(const std::filesystem::path &path) const;

private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

void write_json(const std::filesystem::path &path, const nlohmann::json &j);

// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string &bytes);
std::string hex64(std::uint64_t h);

}  // namespace spinboson

#endif  // SPINBOSON_IO_HPP
