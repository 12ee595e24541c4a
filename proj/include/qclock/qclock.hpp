#ifndef QCLOCK_QCLOCK_HPP
#define QCLOCK_QCLOCK_HPP

#include "qclock/classical.hpp"
#include "qclock/clock.hpp"
#include "qclock/coherent.hpp"
#include "qclock/fock.hpp"
#include "qclock/quadrature.hpp"
#include "qclock/special.hpp"
#include "qclock/symbols.hpp"
#include "qclock/types.hpp"

namespace qclock {

inline constexpr const char* version = "0.1.0";

} // namespace qclock

#endif // QCLOCK_QCLOCK_HPP
