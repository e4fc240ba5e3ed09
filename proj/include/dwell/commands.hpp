#pragma once

// Subcommand drivers. Each returns a process exit code and never throws:
//   0 success, 1 configuration error, 2 solver error, 3 tolerance gate failed.
// Output files are written only after the computation succeeds.

#include <iosfwd>

#include "dwell/config.hpp"

namespace dwell {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitSolver = 2, kExitGate = 3 };

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_detect(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// "<out minus .csv>.edges.csv"
std::string edges_path(const std::string& out_path);

}  // namespace dwell
