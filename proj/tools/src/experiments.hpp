#pragma once

#include <map>
#include <ostream>
#include <string>

#include "config.hpp"

namespace hst::cli {

enum ExitCode : int { kOk = 0, kError = 1, kInconclusive = 2, kConfig = 3 };

struct RunResult {
  int exit_code = kOk;
  json summary;
  // file name -> content, written into the output directory
  std::map<std::string, std::string> files;
};

// Runs the configured experiment in memory. Output never depends on threads.
RunResult run_experiment(const RunConfig& cfg, int threads = 1);
void write_outputs(const RunResult& r, const std::string& dir);
std::string experiment_description(const std::string& name);

}  // namespace hst::cli
