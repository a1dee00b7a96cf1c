#pragma once

#include "eqloc/characters.hpp"
#include "eqloc/common.hpp"
#include "eqloc/config.hpp"
#include "eqloc/dh.hpp"
#include "eqloc/fixtures.hpp"
#include "eqloc/integrand.hpp"
#include "eqloc/localize.hpp"
#include "eqloc/measure.hpp"
#include "eqloc/noncompact.hpp"
#include "eqloc/oracles.hpp"
#include "eqloc/polynomial.hpp"
#include "eqloc/quadrature.hpp"
#include "eqloc/regularity.hpp"
#include "eqloc/report.hpp"
#include "eqloc/rng.hpp"
#include "eqloc/root_system.hpp"
#include "eqloc/surfaces.hpp"
#include "eqloc/types.hpp"
