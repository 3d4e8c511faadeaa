#pragma once

#include "doctest.h"

namespace testutil {

// doctest's Approx adds a scale-1 absolute slack term, which would swamp the
// relative tolerance for quantities far from unit magnitude (pressures in Pa,
// frequencies in rad/s).  This wrapper makes epsilon purely relative.
inline doctest::Approx Approx(double value) {
  return doctest::Approx(value).scale(0.0);
}

}  // namespace testutil
