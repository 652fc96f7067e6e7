#ifndef DUNKL_MCSIM_HPP
#define DUNKL_MCSIM_HPP

#include "dunkl/mcsim/bm_sim.hpp"
#include "dunkl/mcsim/config.hpp"
#include "dunkl/mcsim/dunkl_sim.hpp"
#include "dunkl/mcsim/estimators.hpp"
#include "dunkl/mcsim/parallel.hpp"

#endif  // DUNKL_MCSIM_HPP
