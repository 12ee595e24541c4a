#ifndef QCLOCK_APP_RUN_HPP
#define QCLOCK_APP_RUN_HPP

#include <ostream>

namespace qclock::app {

enum ExitCode : int { success = 0, usage_error = 1, verification_failure = 2 };

/// Full command-line driver. Table output goes to --out (or `out` when no
/// path is given); diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qclock::app

#endif // QCLOCK_APP_RUN_HPP
