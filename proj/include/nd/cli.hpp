#ifndef ND_CLI_HPP
#define ND_CLI_HPP

namespace nd {

// Exit codes: 0 success, 2 input error, 3 partial (warnings),
// 4 verification failure, 5 numerical failure.
int run_cli(int argc, char** argv);

}  // namespace nd

#endif
