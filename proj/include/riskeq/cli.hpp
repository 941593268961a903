#pragma once

namespace riskeq {

// Full command-line surface. Returns the process exit code:
//   0 success (and pass where a command carries a verdict)
//   1 a checked property failed
//   2 input error (bad flags, malformed files, dimension mismatches)
//   3 numerical failure inside a solver
int run_cli(int argc, char** argv);

}  // namespace riskeq
