#pragma once

namespace optocool {

/// Execution policy for the data-parallel kernels (parameter sweeps,
/// spectrum grids, Langevin ensembles). The serial path is the reference
/// implementation; the parallel path must produce bit-identical results.
enum class Exec {
    serial,
    parallel,
};

} // namespace optocool
