#ifndef DUNKL_SPECFUN_HPP
#define DUNKL_SPECFUN_HPP

#include "dunkl/specfun/bessel.hpp"
#include "dunkl/specfun/gamma.hpp"
#include "dunkl/specfun/hypergeometric.hpp"
#include "dunkl/specfun/identities.hpp"
#include "dunkl/specfun/orthopoly.hpp"
#include "dunkl/specfun/quadrature.hpp"

#endif  // DUNKL_SPECFUN_HPP
