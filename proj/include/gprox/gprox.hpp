#pragma once

#include "gprox/commute_column.hpp"
#include "gprox/eval.hpp"
#include "gprox/graph.hpp"
#include "gprox/katz_push.hpp"
#include "gprox/lanczos.hpp"
#include "gprox/operators.hpp"
#include "gprox/pairwise.hpp"
#include "gprox/quadrature.hpp"
#include "gprox/report.hpp"
#include "gprox/solvers.hpp"
