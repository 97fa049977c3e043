/*
 * isingq.hpp — umbrella header for the whole library.
 *
 * Exact thermal observables and Husimi phase-space distributions for the
 * periodic spin-1/2 chain with nearest-neighbour coupling and a
 * longitudinal field, H = -J sum S_k S_{k+1} + B sum S_k on a ring.
 * Closed forms come from the 2x2 transfer-matrix spectrum and work for
 * any chain length; a brute-force enumeration layer provides the ground
 * truth at small N.
 */

#pragma once

#include "enumerate.hpp"
#include "husimi.hpp"
#include "model.hpp"
#include "quadrature.hpp"
#include "random.hpp"
#include "transfer.hpp"

namespace isingq {

inline constexpr const char* version = "0.1.0";

}  // namespace isingq
