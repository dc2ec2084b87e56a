#include "fvk/pde/euler.hpp"

namespace fvk {

bool euler_admissible(std::span<const double> q) {
  if (!(q[0] > 0.0)) return false;
  return q[q.size() - 1] - detail::kinetic_energy(q) > 0.0;
}

void euler_from_primitive(double rho, std::span<const double> velocity, double pressure,
                          const EulerParameters& params, std::span<double> q) {
  const std::size_t d = velocity.size();
  double speedSquared = 0.0;
  q[0] = rho;
  for (std::size_t a = 0; a < d; ++a) {
    q[1 + a] = rho * velocity[a];
    speedSquared += velocity[a] * velocity[a];
  }
  q[d + 1] = pressure / (params.gamma - 1.0) + 0.5 * rho * speedSquared;
}

}  // namespace fvk
