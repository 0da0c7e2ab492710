#pragma once
#include "run_config.hpp"

namespace rmlab::cli {

// Exit status of a subcommand: 0 when its check passes, 1 when it fails.
int cmd_sample_spectra(const RunConfig& c);
int cmd_moments_table(const RunConfig& c);
int cmd_fluctuations(const RunConfig& c);
int cmd_limit_check(const RunConfig& c);
int cmd_toda_dos(const RunConfig& c);

} // namespace rmlab::cli
