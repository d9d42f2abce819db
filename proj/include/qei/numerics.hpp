#pragma once

#include "qei/numerics/fd_eigen.hpp"
#include "qei/numerics/interval.hpp"
#include "qei/numerics/quadrature.hpp"
#include "qei/numerics/roots.hpp"
#include "qei/numerics/series.hpp"
