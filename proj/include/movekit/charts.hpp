#pragma once
// Composite chart objects: plots, bar charts, pie charts and rings.

#include "movekit/bars.hpp"
#include "movekit/plot.hpp"
#include "movekit/radial.hpp"
