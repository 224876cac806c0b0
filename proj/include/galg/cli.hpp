#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace galg {

// Runs one command line (without the program name), writing the report or
// the error message to `out`. Returns the process exit code: 0 ok, 1 other
// error, 2 parse, 3 flavor/degree-cap limits, 4 confluence, 5 nakayama
// certification, 6 module certification.
int run_cli(const std::vector<std::string>& args, std::ostream& out);

}  // namespace galg
