#ifndef INVGUARD_CORRECTORS_HPP
#define INVGUARD_CORRECTORS_HPP

#include "invguard/correctors/targets.hpp"
#include "invguard/correctors/flux_l2.hpp"
#include "invguard/correctors/rhs_l2.hpp"
#include "invguard/correctors/dg_l2.hpp"
#include "invguard/correctors/euler2d.hpp"
#include "invguard/correctors/entropy.hpp"

#endif
