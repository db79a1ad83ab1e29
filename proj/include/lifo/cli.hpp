#pragma once

#include <string>
#include <vector>

namespace lifo {

/**
 * Command-line driver; args excludes the program name. Returns the process
 * exit code: 0 on success, 1 when a verification, play or equivalence check
 * fails, 2 for usage and input errors.
 */
int cli_main(const std::vector<std::string>& args);

} // namespace lifo
