#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qdist/config.hpp"
#include "qdist/distance.hpp"
#include "qdist/report.hpp"

namespace qdist {

/// Called when a cell exceeds a resource cap; `cell` names it.
using CapSink = std::function<void(const std::string& cell, const std::string& what)>;

/// Dimensions a suite runs at when the config gives none.
std::vector<int> default_dims(const std::string& suite);

/// Runs one named check suite over every configured field and dimension.
/// Randomized suites run `trials` seeded trials (default 10) per size
/// combination; when no sizes are configured each trial draws its own.
void run_check_suite(const RunConfig& cfg, const std::string& suite, const ReportSink& emit, const CapSink& on_cap);

SweepConfig sweep_config(const RunConfig& cfg);

/// Outcome of the CLI: 0 pass, 1 assertion failure, 2 resource cap, 3 config error.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitCap = 2, kExitConfig = 3 };

/// The whole `qdist` front end. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdist
