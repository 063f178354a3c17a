#include "hoopt/sim/mobility.hpp"

#include <cmath>
#include <stdexcept>

namespace hoopt {

std::vector<User> init_users(const NetworkConfig& net, std::uint64_t run_seed) {
  const int n = net.user_count();
  std::vector<User> users;
  users.reserve(n);
  Rng rng(substream_seed(run_seed, "users"));
  for (int i = 0; i < n; ++i) {
    User u;
    u.user_id = i;
    u.x_m = rng.uniform(0.0, net.area_side_m);
    u.y_m = rng.uniform(0.0, net.area_side_m);
    u.wp_x_m = rng.uniform(0.0, net.area_side_m);
    u.wp_y_m = rng.uniform(0.0, net.area_side_m);
    u.speed_kmh = net.user_speeds_kmh[rng.bounded(net.user_speeds_kmh.size())];
    u.prb_demand = net.user_prb_demand;
    users.push_back(u);
  }
  return users;
}

void step_mobility(User& u, double dt_ms, double area_side_m, Rng& rng) {
  if (dt_ms <= 0.0) throw std::invalid_argument("step_mobility: dt must be positive");
  double step = u.speed_kmh / 3600.0 * dt_ms;  // km/h * ms -> m
  while (step > 0.0) {
    const double dx = u.wp_x_m - u.x_m;
    const double dy = u.wp_y_m - u.y_m;
    const double rem = std::sqrt(dx * dx + dy * dy);
    if (step < rem) {
      const double f = step / rem;
      u.x_m += dx * f;
      u.y_m += dy * f;
      break;
    }
    // Arrived: zero pause, draw the next waypoint, keep walking.
    u.x_m = u.wp_x_m;
    u.y_m = u.wp_y_m;
    step -= rem;
    u.wp_x_m = rng.uniform(0.0, area_side_m);
    u.wp_y_m = rng.uniform(0.0, area_side_m);
  }
}

}  // namespace hoopt
