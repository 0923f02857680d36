// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include "spinboson/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "spinboson/errors.hpp"

namespace spinboson
{

nlohmann::json complex_json(cplx z)
{
  return {{"re", z.real()}, {"im", z.imag()}};
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add(std::vector<double> row)
{
  if (row.size() != columns_.size())
  {
    throw DomainError("CsvTable: row width does not match header");
  }
  rows_.push_back(std::move(row));
}

void CsvTable::write(std::ostream &os) const
{
  for (std::size_t c = 0; c < columns_.size(); c++)
  {
    os << (c ? "," : "") << columns_[c];
  }
  os << '\n' << std::setprecision(17);
  for (const auto &r : rows_)
  {
    for (std::size_t c = 0; c < r.size(); c++)
    {
      os << (c ? "," : "") << r[c];
    }
    os << '\n';
  }
}

void CsvTable::write(const std::filesystem::path &path) const
{
  std::ofstream os(path);
  if (!os)
  {
    throw std::runtime_error("cannot write " + path.string());
  }
  write(os);
}

void write_json(const std::filesystem::path &path, const nlohmann::json &j)
{
  std::ofstream os(path);
  if (!os)
  {
    throw std::runtime_error("cannot write " + path.string());
  }
  os << j.dump(2) << '\n';
}

std::uint64_t fnv1a(const std::string &bytes)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes)
  {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h)
{
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace spinboson
