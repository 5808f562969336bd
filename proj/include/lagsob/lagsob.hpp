#pragma once

#include "lagsob/csv.hpp"
#include "lagsob/expr.hpp"
#include "lagsob/laguerre.hpp"
#include "lagsob/polynomial.hpp"
#include "lagsob/quadrature.hpp"
#include "lagsob/sobolev.hpp"
#include "lagsob/solver.hpp"
#include "lagsob/specfun.hpp"
#include "lagsob/tridiagonal.hpp"
#include "lagsob/validate.hpp"
