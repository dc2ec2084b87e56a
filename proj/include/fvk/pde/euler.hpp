#pragma once

#include <cmath>
#include <span>
#include <string>

#include "fvk/pde/pde.hpp"

namespace fvk {

struct EulerParameters {
  double gamma = 1.4;
};

// Compressible Euler in conservative variables (rho, j_0..j_{d-1}, E_t) with
// an ideal-gas closure. The dimension is q.size() - 2.

namespace detail {

inline double kinetic_energy(std::span<const double> q) {
  const std::size_t d = q.size() - 2;
  double momentumSquared = 0.0;
  for (std::size_t a = 0; a < d; ++a) momentumSquared += q[1 + a] * q[1 + a];
  return 0.5 * momentumSquared / q[0];
}

}  // namespace detail

/// (gamma - 1) (E_t - |j|^2 / (2 rho)). Throws NonPhysicalStateError if rho <= 0.
inline double euler_pressure(std::span<const double> q, const EulerParameters& params) {
  if (!(q[0] > 0.0)) throw NonPhysicalStateError("non-positive density " + std::to_string(q[0]));
  return (params.gamma - 1.0) * (q[q.size() - 1] - detail::kinetic_energy(q));
}

/// Directional flux (j_n, j_n j / rho + p e_n, (E_t + p) j_n / rho).
inline void euler_flux(std::span<const double> q, int direction, const EulerParameters& params,
                       std::span<double> flux) {
  const std::size_t d = q.size() - 2;
  const double p = euler_pressure(q, params);
  const double jn = q[1 + static_cast<std::size_t>(direction)];
  const double un = jn / q[0];

  flux[0] = jn;
  for (std::size_t a = 0; a < d; ++a) flux[1 + a] = un * q[1 + a];
  flux[1 + static_cast<std::size_t>(direction)] += p;
  flux[d + 1] = (q[d + 1] + p) * un;
}

/// |u_n| + c, c = sqrt(gamma p / rho). Throws NonPhysicalStateError on
/// rho <= 0 or negative pressure.
inline double euler_max_eigenvalue(std::span<const double> q, int direction, const EulerParameters& params) {
  const double p = euler_pressure(q, params);
  if (p < 0.0) throw NonPhysicalStateError("negative pressure " + std::to_string(p));
  const double un = q[1 + static_cast<std::size_t>(direction)] / q[0];
  const double c = std::sqrt(params.gamma * p / q[0]);
  return std::abs(un) + c;
}

/// rho > 0 and positive internal energy.
bool euler_admissible(std::span<const double> q);

/// Conserved state from primitive variables; `velocity` has d entries.
void euler_from_primitive(double rho, std::span<const double> velocity, double pressure,
                          const EulerParameters& params, std::span<double> q);

template <int Dim>
class Euler {
  static_assert(Dim == 2 || Dim == 3);

 public:
  static constexpr int dimensions = Dim;
  static constexpr int unknowns = Dim + 2;

  explicit Euler(EulerParameters params = {}) : params_(params) {
    if (!(params_.gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
  }

  const EulerParameters& parameters() const { return params_; }

  void flux(std::span<const double> q, const Coord& /*x*/, double /*t*/, int normal,
            std::span<double> out) const {
    euler_flux(q.first<unknowns>(), normal, params_, out);
  }

  double maxEigenvalue(std::span<const double> q, const Coord& /*x*/, double /*t*/, int normal) const {
    return euler_max_eigenvalue(q.first<unknowns>(), normal, params_);
  }

  bool admissible(std::span<const double> q) const { return euler_admissible(q.first<unknowns>()); }

 private:
  EulerParameters params_;
};

static_assert(Pde<Euler<2>> && Pde<Euler<3>>);
static_assert(!HasNonConservativeProduct<Euler<2>>);

}  // namespace fvk
