#ifndef QGLR_EXEC_HPP
#define QGLR_EXEC_HPP

namespace qglr {

// Kernel execution policy. The omp path parallelizes over independent output
// elements only (reductions are never split), so both policies produce
// bit-identical results; the serial path is kept as the reference the tests
// compare against.
enum class Exec { serial, omp };

}  // namespace qglr

#endif
