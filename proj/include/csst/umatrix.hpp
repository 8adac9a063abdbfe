#pragma once

#include "csst/dataset.hpp"
#include "csst/som.hpp"

namespace csst {

using UMatrix = Matrix;

// Expands an r x c codebook into the (2r-1) x (2c-1) unified-distance matrix:
//   cell (2a, 2b+1)   = ||c(a,b) - c(a,b+1)||
//   cell (2a+1, 2b)   = ||c(a,b) - c(a+1,b)||
//   cell (2a+1, 2b+1) = mean of the two diagonal prototype distances
//   cell (2a, 2b)     = median of the adjacent between-neuron cells
// Throws GridTooSmall unless rows >= 2 and cols >= 2.
UMatrix compute_umatrix(const Codebook& codebook);

} // namespace csst
