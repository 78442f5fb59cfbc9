#pragma once

namespace fsa {

/// Entry point behind the fsa_cli binary; returns the process exit code
/// (0 ok, 2 usage/contract, 3 divergence, 4 I/O).
int run_cli(int argc, const char* const* argv);

}  // namespace fsa
