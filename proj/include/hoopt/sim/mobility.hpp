#pragma once

#include <vector>

#include "hoopt/rng.hpp"
#include "hoopt/sim/types.hpp"

namespace hoopt {

/// Uniform initial positions and waypoints; speed picked uniformly from the
/// configured speed set and held for the run.
std::vector<User> init_users(const NetworkConfig& net, std::uint64_t run_seed);

/// Random-waypoint step with zero pause: the user covers exactly
/// speed * dt of path; on arrival a fresh uniform waypoint is drawn and the
/// leftover distance continues towards it.
void step_mobility(User& u, double dt_ms, double area_side_m, Rng& rng);

}  // namespace hoopt
