#pragma once

#include "hmskit/cache.hpp"
#include "hmskit/collections.hpp"
#include "hmskit/error.hpp"
#include "hmskit/grading.hpp"
#include "hmskit/hom.hpp"
#include "hmskit/int_matrix.hpp"
#include "hmskit/json_io.hpp"
#include "hmskit/linalg.hpp"
#include "hmskit/m_grading.hpp"
#include "hmskit/matfac.hpp"
#include "hmskit/poly.hpp"
#include "hmskit/polyforms.hpp"
#include "hmskit/quiver.hpp"
#include "hmskit/scalar.hpp"
#include "hmskit/symmetry.hpp"
#include "hmskit/verify.hpp"
