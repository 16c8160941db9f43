#pragma once

#include "turanlab/error.hpp"
#include "turanlab/geometry.hpp"
#include "turanlab/quadrature.hpp"
#include "turanlab/capacity.hpp"
#include "turanlab/polynomial.hpp"
#include "turanlab/certify.hpp"
#include "turanlab/bounds.hpp"
#include "turanlab/parallel.hpp"
#include "turanlab/oscillation.hpp"
#include "turanlab/domain_spec.hpp"
#include "turanlab/verify.hpp"
#include "turanlab/report.hpp"
