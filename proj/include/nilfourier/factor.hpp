#pragma once

#include <map>

#include "nilfourier/rat.hpp"

namespace nilfourier {

/// Miller-Rabin, deterministic for the sizes arising here (norms < ~1e13).
bool miller_rabin(const Int& n);

/// Prime factorization of |n|, n != 0: trial division then Pollard rho.
std::map<Int, unsigned> factor_integer(Int n);

} // namespace nilfourier
