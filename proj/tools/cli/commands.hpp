#pragma once

#include <memory>
#include <string>

#include "config.hpp"
#include "ellt/curve/psi_store.hpp"

namespace ellt::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kConfig = 1;
inline constexpr int kCapTooSmall = 2;
inline constexpr int kValidation = 3;

struct JobResult {
  int code = kOk;
  std::string text;     // the report, or the error message
  bool report = false;  // text is a report (a failed verify still has one)
  std::shared_ptr<curve::CycCache> cache;  // set when the job built one
};

// Runs one job against an optional preloaded store. Never throws; the error
// class decides the code.
JobResult run_job(const JobConfig& cfg, const curve::PsiStore* store,
                  const std::optional<std::filesystem::path>& cache_path);

// The whole command line; returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace ellt::cli
