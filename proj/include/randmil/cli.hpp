#pragma once

namespace randmil::cli {

/// Entry point of the randmil tool. Subcommands: convergence, timing,
/// quadrature, residual. Returns the process exit status (0 on success,
/// nonzero with a message on stderr for config or validation errors).
int run(int argc, const char* const* argv);

}  // namespace randmil::cli
