#ifndef NNLIF_NNLIF_HPP
#define NNLIF_NNLIF_HPP

// Umbrella header for the delayed NNLIF laboratory.

#include "params.hpp"
#include "grid.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"
#include "discrete.hpp"
#include "pde.hpp"
#include "init.hpp"
#include "experiments.hpp"
#include "svg.hpp"
#include "bundle.hpp"
#include "config.hpp"

#endif  // NNLIF_NNLIF_HPP
