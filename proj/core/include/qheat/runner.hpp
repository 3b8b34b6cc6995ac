#pragma once

#include <string>

#include "qheat/config.hpp"

namespace qheat {

inline constexpr int kExitOk = 0;           // all checks passed
inline constexpr int kExitCheckFailed = 1;  // a mathematical check failed
inline constexpr int kExitConfigError = 2;  // configuration invalid

struct RunOutcome {
    int exit_code = kExitOk;
    std::string message;  // names the failing check / offending field
};

/// Each runner writes its artifacts into out_dir (created if absent) and
/// returns the exit status per the contract above. Identical configs and
/// seeds produce byte-identical artifacts.
RunOutcome run_direct(const RunConfig& c, const std::string& out_dir);
RunOutcome run_inverse(const RunConfig& c, const std::string& out_dir);
RunOutcome run_verify(const RunConfig& c, const std::string& out_dir, unsigned long long seed);
RunOutcome run_sweep(const RunConfig& c, const std::string& out_dir);

/// Dispatch on c.command.
RunOutcome run(const RunConfig& c, const std::string& out_dir, unsigned long long seed);

}  // namespace qheat
