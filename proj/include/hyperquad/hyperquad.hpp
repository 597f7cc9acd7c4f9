#ifndef HYPERQUAD_HYPERQUAD_HPP
#define HYPERQUAD_HYPERQUAD_HPP

#include "certificates.hpp"
#include "error.hpp"
#include "interval.hpp"
#include "map.hpp"
#include "metric.hpp"
#include "nonwandering.hpp"
#include "parallel.hpp"
#include "report.hpp"
#include "symbolic.hpp"

#endif
