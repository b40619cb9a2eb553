#ifndef INVGUARD_SCHEMES_HPP
#define INVGUARD_SCHEMES_HPP

#include "invguard/schemes/fv1d.hpp"
#include "invguard/schemes/fv2d.hpp"
#include "invguard/schemes/poisson.hpp"
#include "invguard/schemes/dg.hpp"
#include "invguard/schemes/spectral.hpp"
#include "invguard/schemes/euler1d.hpp"

#endif
