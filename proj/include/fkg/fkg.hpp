#pragma once

#include "fkg/errors.hpp"
#include "fkg/summation.hpp"
#include "fkg/scalar_kernels.hpp"
#include "fkg/series.hpp"
#include "fkg/quadrature.hpp"
#include "fkg/ek_operators.hpp"
#include "fkg/kg_solver.hpp"
#include "fkg/verification.hpp"
