#pragma once

namespace mmsim {

// Execution backend for the data-parallel kernels. Serial is the reference
// path; Parallel uses OpenMP and must produce bit-identical results.
enum class ExecPolicy { Serial, Parallel };

}  // namespace mmsim
