#pragma once

#include <iosfwd>

#include "ionspin/config.hpp"
#include "ionspin/couplings.hpp"
#include "ionspin/output.hpp"

namespace ionspin {

// Coupling matrix (rad/ms) described by the config's couplings section.
CouplingMatrix coupling_matrix(const RunConfig& c);
TrapSpec trap_spec(const RunConfig& c);

// Runs the configured experiment; throws on failure.
ProtocolResult run_experiment(const RunConfig& c);

// Runs and writes c.output. Exit codes: 0 success, 2 validation error,
// 3 numerical failure, 1 I/O failure. Messages go to err.
int dispatch(const RunConfig& c, std::ostream& err);

}  // namespace ionspin
