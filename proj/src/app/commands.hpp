#ifndef QCLOCK_APP_COMMANDS_HPP
#define QCLOCK_APP_COMMANDS_HPP

#include "app/config.hpp"
#include "app/output.hpp"

namespace qclock::app {

Table cmd_overlap(const RunConfig& cfg);
Table cmd_figure(int which, const RunConfig& cfg);
Table cmd_clock_trace(const RunConfig& cfg);
Table cmd_symbols(const RunConfig& cfg);

/// Property suite. The table carries one row per check; all_pass is also in
/// the metadata.
struct VerifyReport {
    Table table;
    bool all_pass = true;
};

VerifyReport cmd_verify(const RunConfig& cfg);

} // namespace qclock::app

#endif // QCLOCK_APP_COMMANDS_HPP
