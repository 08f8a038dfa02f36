#ifndef BICM_CLI_HPP
#define BICM_CLI_HPP

#include <string>
#include <vector>

namespace bicm {

inline constexpr const char* kVersion = "1.0.0";

/// Exit codes: 0 success/confirmed, 1 invalid config, 2 verification not
/// confirmed, 3 I/O failure, 4 numerical failure, 5 inconclusive.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace bicm

#endif
