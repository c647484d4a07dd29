#pragma once

// Umbrella header.

#include "isored/error.hpp"
#include "isored/polynomial.hpp"
#include "isored/rational_function.hpp"
#include "isored/roots.hpp"
#include "isored/expression.hpp"
#include "isored/matrix.hpp"
#include "isored/digraph.hpp"
#include "isored/structural.hpp"
#include "isored/reduce.hpp"
#include "isored/spectrum.hpp"
#include "isored/transform.hpp"
#include "isored/equivalence.hpp"
#include "isored/document.hpp"
