#pragma once

#include <vector>

#include "mva/vstate.hpp"

namespace mva {

// All canonical PBW monomials of exact weight w, in ascending lexicographic
// order on the mode vectors.  The order is part of the output contract:
// reports index weight spaces by it.
std::vector<Pbw> pbw_basis(const LieAlgebraSpec& g, int w);

// Per-weight dimensions, for w = 0..weight_cap, of the joint kernel of all
// x_n with 0 <= n <= w on the weight-w slice of V^level(g).  Modes n > w
// act as zero on that slice for degree reasons, so the finite check is
// complete.  Brute-force exact nullspace; columns of the operator matrix
// are assembled independently (in parallel when workers > 1) and the result
// does not depend on the worker count.
std::vector<int> centre_dimension(const LieAlgebraSpec& g, const Scalar& level, int weight_cap,
                                  int workers, std::size_t capacity = 200000);

// Serial reference used by tests and the benchmark: same contract,
// straight-line assembly and elimination.
std::vector<int> centre_dimension_serial(const LieAlgebraSpec& g, const Scalar& level,
                                         int weight_cap, std::size_t capacity = 200000);

}  // namespace mva
