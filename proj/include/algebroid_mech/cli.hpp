#pragma once

// Command-line front end. Exit codes: 0 success, 1 a check failed (the report is still
// written), 2 usage or domain error, 3 numeric failure.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebroid_mech/report.hpp"

namespace algebroid_mech
{

/// Fully resolved settings of one invocation. Unset optionals take the gallery defaults.
struct RunConfig
{
  std::string command;
  std::string system;
  std::map<std::string, double> params;
  std::string omega = "constant";
  std::optional<Vec> x0;
  double t0 = 0.0;
  std::optional<double> t1;
  std::optional<double> dt;
  std::string out;
  std::string format;
  std::optional<Box> box;
  std::vector<int> grid;
  int samples = 128;
  std::uint64_t seed = 42;
  std::optional<double> tol;
  std::string section;
  std::optional<Vec> point;
  int depth = 4;
  std::string map = "identity";
};

Json to_json(const RunConfig& cfg);

/// Parses a comma-separated list of decimals ("1,-2.5,3e-1"). UsageError on bad input.
std::vector<double> parse_list(const std::string& text);
/// Parses "lo1,hi1,lo2,hi2,...".
Box parse_box(const std::string& text);
/// Parses "name=value".
std::pair<std::string, double> parse_param(const std::string& text);

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace algebroid_mech
