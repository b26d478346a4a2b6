#pragma once

#include "carlitz/drinfeld/carlitz_module.hpp"
#include "carlitz/drinfeld/torsion.hpp"
#include "carlitz/error.hpp"
#include "carlitz/field/extension.hpp"
#include "carlitz/field/fq.hpp"
#include "carlitz/field/perfected.hpp"
#include "carlitz/field/rational_field.hpp"
#include "carlitz/linalg.hpp"
#include "carlitz/parallel.hpp"
#include "carlitz/poly/dense.hpp"
#include "carlitz/poly/poly_a.hpp"
#include "carlitz/reciprocity/ray_class.hpp"
#include "carlitz/skew/skew_series.hpp"
#include "carlitz/skew/twisted_poly.hpp"
#include "carlitz/tower/infty.hpp"
#include "carlitz/tower/tower_field.hpp"
