#pragma once

#include "cremona/errors.hpp"
#include "cremona/poly.hpp"
#include "cremona/parser.hpp"
#include "cremona/linalg.hpp"
#include "cremona/univariate.hpp"
#include "cremona/groebner.hpp"
#include "cremona/ideal.hpp"
#include "cremona/projective.hpp"
#include "cremona/plane_curves.hpp"
#include "cremona/singularities.hpp"
#include "cremona/maps.hpp"
#include "cremona/pipeline.hpp"
#include "cremona/report.hpp"
#include "cremona/cli.hpp"
