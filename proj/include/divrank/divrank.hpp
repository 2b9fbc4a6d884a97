#pragma once

#include "divrank/corpus.hpp"
#include "divrank/divisor.hpp"
#include "divrank/divisor_algebra.hpp"
#include "divrank/error.hpp"
#include "divrank/exact.hpp"
#include "divrank/geometry.hpp"
#include "divrank/graph.hpp"
#include "divrank/ilp.hpp"
#include "divrank/lattice.hpp"
#include "divrank/orientation.hpp"
#include "divrank/polytope.hpp"
#include "divrank/rank.hpp"
#include "divrank/suites.hpp"
