#ifndef TRES_CLI_HPP
#define TRES_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "tres/parser.hpp"
#include "tres/report.hpp"

namespace tres {

struct CliOptions {
  bool json = false;
  std::uint64_t seed = 1;
  std::string mode = "symbolic";  ///< "symbolic" or "numeric"
  std::size_t max_minors = 64;    ///< budget for the minor-gcd resultant
  bool verify = false;            ///< enable cross-oracle checks
};

/// Runs the query of a parsed system and assembles the report.
/// Throws Error; the caller maps codes to process exit codes.
Report run_query(const SystemSpec& spec, const CliOptions& opt);

/// Full command line entry point: parses flags, reads the input file
/// (or standard input for "-"), runs the query and prints the report to
/// `out` (UTF-8 text, or JSON with --json); diagnostics go to `err`.
/// Returns the process exit code: 0 success, 2 degenerate input,
/// 3 unsupported configuration, 1 anything else.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace tres

#endif  // TRES_CLI_HPP
