#pragma once

#include <optional>
#include <vector>

#include "vvmf/numtheory.hpp"

namespace vvmf {

using RatMatrix = std::vector<std::vector<Rat>>;

// Some solution of A x = b (free variables set to zero), or nothing if inconsistent.
std::optional<std::vector<Rat>> solve_rational(RatMatrix A, std::vector<Rat> b);

Rat det_rational(RatMatrix A);

// Numbers of positive and negative eigenvalues of a symmetric rational matrix.
std::pair<int, int> inertia(RatMatrix A);

}  // namespace vvmf
