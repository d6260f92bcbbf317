#pragma once

#include <vector>

#include "modseries/modring.hpp"

namespace modseries {

// Kernel of the matrix whose rows are `rows_of_A` (each of length ncols) over
// Z/m, via Howell-style elimination of [A^T | I] with annihilator completion.
// Exact for prime and prime-power m; for other composite m only unit pivots
// are used and the kernel may be under-generated.
std::vector<std::vector<u64>> kernel_zm(const std::vector<std::vector<u64>>& rows_of_A,
                                        int ncols, u64 m);

}  // namespace modseries
