#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nisac {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSingular = 3;
inline constexpr int kExitVerify = 4;

// Runs one command line (args excludes the program name). Results go to the
// --out files, check listings to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Jobs used when --jobs is absent: NISAC_JOBS if set and positive, otherwise
// the hardware concurrency.
int default_jobs();

// "a.csv" -> "a_trace.csv"
std::string sidecar_path(const std::string& out_path, const std::string& suffix);

// Comma-separated numbers; ConfigError on anything else.
std::vector<double> parse_grid(const std::string& text);

}  // namespace nisac
