#pragma once

#include "quasifold/error.hpp"
#include "quasifold/rational_poly.hpp"
#include "quasifold/field.hpp"
#include "quasifold/scalar.hpp"
#include "quasifold/expression.hpp"
#include "quasifold/matrix.hpp"
#include "quasifold/integer_forms.hpp"
#include "quasifold/polytope.hpp"
#include "quasifold/polytope_io.hpp"
#include "quasifold/construction.hpp"
#include "quasifold/moment.hpp"
#include "quasifold/verifier.hpp"
#include "quasifold/report.hpp"
#include "quasifold/plot.hpp"
#include "quasifold/corpus.hpp"
