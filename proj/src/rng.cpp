#include "robmom/rng.hpp"

// RngStream is header-only; this unit pins the seeding constants.
static_assert(robmom::splitmix64(0) == 0xE220A8397B1DCDAFULL);
