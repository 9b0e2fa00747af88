#pragma once

// Umbrella header: Bergman monomial norms over intersections of complex
// ellipsoids, self-commutator decay diagnostics, monomial-ideal box covers,
// the box-module resolution with its exactness checks, and the signed index
// certificate.

#include "bergbox/boxes.hpp"
#include "bergbox/budget.hpp"
#include "bergbox/commutators.hpp"
#include "bergbox/config.hpp"
#include "bergbox/domain.hpp"
#include "bergbox/errors.hpp"
#include "bergbox/gamma.hpp"
#include "bergbox/ideal.hpp"
#include "bergbox/montecarlo.hpp"
#include "bergbox/multiindex.hpp"
#include "bergbox/norms.hpp"
#include "bergbox/quotient.hpp"
#include "bergbox/rational.hpp"
#include "bergbox/resolution.hpp"
