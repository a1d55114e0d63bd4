#ifndef ABVAC_ABVAC_HPP
#define ABVAC_ABVAC_HPP

#include <abvac/errors.hpp>
#include <abvac/quadrature.hpp>
#include <abvac/roots.hpp>
#include <abvac/specfun.hpp>
#include <abvac/spectrum.hpp>
#include <abvac/solutions.hpp>
#include <abvac/vacuum.hpp>

#endif // ABVAC_ABVAC_HPP
