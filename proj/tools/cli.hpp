#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "slat/breadth.hpp"
#include "slat/propagation.hpp"

namespace slat::cli {

enum class Format { Json, Text };

struct RunConfig {
  std::string subcommand;
  std::string instance;  ///< JSON path or gen:<family>:<params>
  std::string weight;    ///< "" = embedded or family default
  Format format = Format::Json;
  bool strict = false;
  bool close = false;
  std::size_t budget = SearchOptions{}.budget;
  std::size_t cap = BreadthOptions{}.cap;
  unsigned jobs = 0;
  std::uint64_t seed = 0;

  // Subcommand arguments.
  std::string set;
  std::string psi;
  std::string e;
  std::string z;
  std::string c;
  std::string level = "1";
  bool check = false;
  std::size_t nmax = 3;
  std::size_t barrier_cap = 4096;
  std::string family;
  std::size_t from = 2;
  std::size_t to = 8;
  std::string op = "profile";
  bool timing = false;
};

/// Exit status for a library error: 1 for rejected instances, 2 for usage and
/// input errors, 3 for budget exhaustion in strict mode.
int exit_code(ErrorCode code);

/// Parses argv and runs one subcommand, writing the report to `out` and
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs an already parsed configuration.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace slat::cli
