#ifndef ROBINFLOW_ACCEPTANCE_HPP
#define ROBINFLOW_ACCEPTANCE_HPP

#include <ostream>

namespace robinflow::acceptance {

// Runs every acceptance criterion, printing one PASS/FAIL line per criterion.
// Returns the number of failures.
int run_all(std::ostream& os);

} // namespace robinflow::acceptance

#endif
