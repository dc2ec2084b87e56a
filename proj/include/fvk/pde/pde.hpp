#pragma once

#include <algorithm>
#include <concepts>
#include <span>
#include <stdexcept>
#include <string>

#include "fvk/mesh/patch_spec.hpp"

namespace fvk {

/// Raised when a state has no physical meaning for the PDE (e.g. rho <= 0).
class NonPhysicalStateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A hyperbolic system dq/dt + sum_j d f^j(q) / dx_j = 0 bound statically
/// into the kernels.
///
/// `flux` writes the directional flux f^normal(q); `maxEigenvalue` returns
/// max_k |lambda_k| of the Jacobian of f^normal. Both must be pure.
template <class P>
concept Pde = requires(const P& pde, std::span<const double> q, std::span<double> out, const Coord& x, double t,
                       int normal) {
  { P::dimensions } -> std::convertible_to<int>;
  { P::unknowns } -> std::convertible_to<int>;
  { pde.flux(q, x, t, normal, out) };
  { pde.maxEigenvalue(q, x, t, normal) } -> std::convertible_to<double>;
};

/// PDEs with a non-conservative product B(q) dq/dx_normal. `gradQ` holds d*s
/// entries, direction-major. PDEs without this member get an implicit zero.
template <class P>
concept HasNonConservativeProduct =
    Pde<P> && requires(const P& pde, std::span<const double> q, std::span<const double> gradQ,
                       std::span<double> out, const Coord& x, double t, int normal) {
      { pde.nonconservativeProduct(q, gradQ, x, t, normal, out) };
    };

/// PDEs that can tell whether a state is admissible.
template <class P>
concept HasAdmissibilityCheck = Pde<P> && requires(const P& pde, std::span<const double> q) {
  { pde.admissible(q) } -> std::convertible_to<bool>;
};

/// The default non-conservative product: all zeros.
inline void zero_ncp(std::span<const double> /*q*/, std::span<const double> /*gradQ*/, const Coord& /*x*/,
                     double /*t*/, int /*normal*/, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
}

}  // namespace fvk
