#ifndef DUNKL_HITTIME_HPP
#define DUNKL_HITTIME_HPP

#include "dunkl/hittime/density.hpp"
#include "dunkl/hittime/normalization.hpp"
#include "dunkl/hittime/series.hpp"
#include "dunkl/hittime/tail.hpp"

#endif  // DUNKL_HITTIME_HPP
