#pragma once

#include "besselw/bessel.hpp"
#include "besselw/error.hpp"
#include "besselw/model_document.hpp"
#include "besselw/morse.hpp"
#include "besselw/numeric.hpp"
#include "besselw/oracle.hpp"
#include "besselw/parallel.hpp"
#include "besselw/partitions.hpp"
#include "besselw/polynomial.hpp"
#include "besselw/quadrature.hpp"
#include "besselw/quasi_rational.hpp"
#include "besselw/rational.hpp"
#include "besselw/rational_function.hpp"
#include "besselw/sturm.hpp"
#include "besselw/wronskian.hpp"
