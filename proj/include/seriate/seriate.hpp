#pragma once

// Umbrella header: spectral seriation of unit/feature matrices with
// PQ-tree output.

#include "seriate/error.hpp"
#include "seriate/fixtures.hpp"
#include "seriate/matrix.hpp"
#include "seriate/pqtree.hpp"
#include "seriate/pqtree_io.hpp"
#include "seriate/spectral.hpp"
