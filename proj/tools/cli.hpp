#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "asense/lyapunov.hpp"
#include "asense/observability.hpp"
#include "json.hpp"

namespace asense::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,       ///< unknown subcommand, bad flag or unparsable value
    kValidation = 3,  ///< parameters violate a module precondition
    kIo = 4,          ///< config or output file could not be read or written
    kNumerical = 5,   ///< computation failed (non-finite state, bad bracket)
};

/// Runs the tool. args[0] is the program name. Summaries go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// {delta, eta, verified, worstDetQ, worstTraceQ, argminT}
[[nodiscard]] nlohmann::json toJson(const LyapunovCert& cert);

/// {point: {x, z}, gamma, linearRank, nonlinearCondition, locallyObservable}
[[nodiscard]] nlohmann::json toJson(const ObservabilityReport& report);

}  // namespace asense::cli
