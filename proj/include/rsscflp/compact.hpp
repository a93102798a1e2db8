#pragma once

#include <optional>

#include "rsscflp/instance.hpp"

namespace rsscflp {

// LP relaxation value of the compact robust formulation, in which the inner
// worst-case demand maximization is dualized into auxiliary variables p_ij
// (per assignment) and q_i (per facility budget). Includes the variable
// upper bounds x_ij <= y_i, which strengthen the relaxation. Serves as the
// reference bound that the column-generation root must dominate.
//
// Returns nullopt when the relaxation is infeasible. Throws
// std::invalid_argument when the instance is too large for the dense
// simplex (the row count grows with 2*m*n).
std::optional<double> compact_lp_bound(const Instance& inst);

}  // namespace rsscflp
