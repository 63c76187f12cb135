#pragma once

#include "simsurp/errors.hpp"
#include "simsurp/interchange.hpp"
#include "simsurp/metrics.hpp"
#include "simsurp/oracle.hpp"
#include "simsurp/random.hpp"
#include "simsurp/regression.hpp"
#include "simsurp/similarity.hpp"
