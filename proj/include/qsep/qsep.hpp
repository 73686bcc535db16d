#pragma once

/// Umbrella header: separability analysis and canonical product-state
/// decompositions for 2x2 and 2x3 bipartite density matrices.

#include "qsep/complex_matrix.hpp"
#include "qsep/decomposition.hpp"
#include "qsep/density_matrix.hpp"
#include "qsep/errors.hpp"
#include "qsep/hermitian_eig.hpp"
#include "qsep/partial_transpose.hpp"
#include "qsep/plane_geometry.hpp"
#include "qsep/product_vector.hpp"
#include "qsep/quadratic_roots.hpp"
#include "qsep/range_search.hpp"
#include "qsep/rng.hpp"
#include "qsep/states.hpp"
#include "qsep/svd2.hpp"
#include "qsep/tolerances.hpp"
