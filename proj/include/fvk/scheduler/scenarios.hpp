#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>

#include "fvk/pde/euler.hpp"

namespace fvk::scheduler {

// Initial conditions for Euler runs on a periodic box [0, L)^d. Each is a
// callable (const Coord& x, std::span<double> q).

struct ConstantState {
  double rho = 1.0;
  std::array<double, 3> velocity{};
  double pressure = 1.0;
  int dimensions = 2;
  EulerParameters params{};

  void operator()(const Coord& /*x*/, std::span<double> q) const {
    euler_from_primitive(rho, std::span<const double>(velocity.data(), static_cast<std::size_t>(dimensions)),
                         pressure, params, q);
  }
};

/// Density bump rho = rho0 + amplitude * exp(-|x - centre|^2 / (2 width^2))
/// carried by a uniform velocity at uniform pressure: a contact
/// discontinuity-free moving density profile. The exact solution is the
/// initial profile translated by velocity * t (periodically).
struct MovingDensityBump {
  double rho0 = 1.0;
  double amplitude = 0.5;
  double width = 0.1;
  Coord centre{0.5, 0.5, 0.5};
  std::array<double, 3> velocity{1.0, 0.0, 0.0};
  double pressure = 1.0;
  double domainLength = 1.0;
  int dimensions = 2;
  EulerParameters params{};

  /// Exact density at x and time t, summed over the nearest periodic images.
  double density(const Coord& x, double t) const {
    double bump = 1.0;
    for (int a = 0; a < dimensions; ++a) {
      double sum = 0.0;
      const double shifted = x[a] - velocity[static_cast<std::size_t>(a)] * t - centre[a];
      for (int image = -2; image <= 2; ++image) {
        const double r = shifted - image * domainLength;
        sum += std::exp(-r * r / (2.0 * width * width));
      }
      bump *= sum;
    }
    return rho0 + amplitude * bump;
  }

  void operator()(const Coord& x, std::span<double> q) const {
    euler_from_primitive(density(x, 0.0),
                         std::span<const double>(velocity.data(), static_cast<std::size_t>(dimensions)), pressure,
                         params, q);
  }
};

}  // namespace fvk::scheduler
