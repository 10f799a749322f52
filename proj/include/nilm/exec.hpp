#pragma once

namespace nilm {

/// Selects the OpenMP kernel or its serial reference. Both produce identical
/// output; `serial` exists for testing and benchmarking.
enum class Exec { serial, parallel };

}  // namespace nilm
