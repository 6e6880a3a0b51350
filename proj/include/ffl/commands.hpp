#pragma once

#include <string>
#include <vector>

#include "ffl/config.hpp"
#include "ffl/report.hpp"

namespace ffl {

// Each command validates the config and returns its report; no numbers are formed here
// beyond what the modules return.
Table cmd_verify(const RunConfig& cfg, bool& all_passed);
Table cmd_lfun(const RunConfig& cfg);
Table cmd_zeros(const RunConfig& cfg);
Table cmd_decompose(const RunConfig& cfg);
Table cmd_moments(const RunConfig& cfg);
Table cmd_twisted(const RunConfig& cfg);
Table cmd_constants(const RunConfig& cfg);
Table cmd_rmt(const RunConfig& cfg);

// One message per genus whose full enumeration exceeds cfg.budget.
std::vector<std::string> budget_warnings(const RunConfig& cfg, const std::string& command);

}  // namespace ffl
