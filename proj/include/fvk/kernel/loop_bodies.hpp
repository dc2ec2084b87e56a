#pragma once

// Loop bodies of the Rusanov patch update. Each body handles one index tuple
// and is safe to run concurrently with any other tuple of the same step.
//
// For a face between volumes L and R along direction n, with nu = dt/dx:
//   a   = max(lambda_L, lambda_R)
//   D   = 1/2 a (Q_R - Q_L)            dissipation
//   C   = 1/2 (f_L + f_R)              centred flux
//   F   = C - D                        Rusanov face flux
// and Q_new = Q + nu * sum over directions of (D_right - D_left) - (C_right - C_left).
// Both volumes of a face evaluate D and C from the same operands in the same
// order, so the two sides see bitwise identical face values.

#include <array>
#include <span>
#include <string>

#include "fvk/kernel/temporaries.hpp"
#include "fvk/kernel/variant.hpp"
#include "fvk/pde/pde.hpp"

namespace fvk::kernel {

inline constexpr int kMaxUnknowns = 16;

namespace detail {

inline VolumeIndex shifted(VolumeIndex h, int axis, int by) {
  h[axis] += by;
  return h;
}

}  // namespace detail

/// Step 1: QOut = QIn on interior volume `v`, unknown `k`.
inline void copy_solution(const BatchView& view, int patch, const VolumeIndex& v, int k) {
  view.qOutVolume(patch, v)[k] = view.qInVolume(patch, view.haloed(v))[k];
}

/// Step 2: directional max |lambda| of haloed volume `h` into the temporaries.
template <Pde P, Layout K>
void compute_eigenvalues(const BatchView& view, const P& pde, KernelTemporaries& temps, int patch,
                         const VolumeIndex& h) {
  const std::span<const double> q(view.qInVolume(patch, h), static_cast<std::size_t>(view.s));
  const Coord x = view.volumeCentre(patch, h);
  for (int dir = 0; dir < view.dimensions; ++dir) {
    if (!view.readAlong(h, dir)) continue;
    try {
      temps.eigenvalues[temps.eigenEnumerator.offset<K>(patch, h, dir)] =
          pde.maxEigenvalue(q, x, view.t[patch], dir);
    } catch (const NonPhysicalStateError& e) {
      throw KernelError(patch, h, e.what());
    }
  }
}

/// Steps 3-4: add the dissipation of the 2d faces of interior volume `v`,
/// unknown `k`, onto the update temporary.
template <Layout K>
void accumulate_dissipation(const BatchView& view, KernelTemporaries& temps, int patch, const VolumeIndex& v,
                            int k) {
  const VolumeIndex h = view.haloed(v);
  const double nu = view.dt[patch] / view.volumeSize(patch);
  const double qi = view.qInVolume(patch, h)[k];
  const auto& eig = temps.eigenEnumerator;

  double& update = temps.updates[temps.updateEnumerator.offset<K>(patch, v, k)];
  double acc = update;
  for (int dir = 0; dir < view.dimensions; ++dir) {
    const VolumeIndex left = detail::shifted(h, dir, -1);
    const VolumeIndex right = detail::shifted(h, dir, +1);
    const double lambdaLeft = temps.eigenvalues[eig.offset<K>(patch, left, dir)];
    const double lambdaSelf = temps.eigenvalues[eig.offset<K>(patch, h, dir)];
    const double lambdaRight = temps.eigenvalues[eig.offset<K>(patch, right, dir)];
    const double aLeft = lambdaLeft < lambdaSelf ? lambdaSelf : lambdaLeft;
    const double aRight = lambdaSelf < lambdaRight ? lambdaRight : lambdaSelf;

    const double dLeft = 0.5 * aLeft * (qi - view.qInVolume(patch, left)[k]);
    const double dRight = 0.5 * aRight * (view.qInVolume(patch, right)[k] - qi);
    acc += nu * (dRight - dLeft);
  }
  update = acc;
}

/// Step 5: f(Q) of haloed volume `h` for every direction it is read along.
template <Pde P, Layout K>
void compute_fluxes(const BatchView& view, const P& pde, KernelTemporaries& temps, int patch,
                    const VolumeIndex& h) {
  const std::span<const double> q(view.qInVolume(patch, h), static_cast<std::size_t>(view.s));
  const Coord x = view.volumeCentre(patch, h);
  std::array<double, kMaxUnknowns> f{};
  const std::span<double> flux(f.data(), static_cast<std::size_t>(view.s));
  for (int dir = 0; dir < view.dimensions; ++dir) {
    if (!view.readAlong(h, dir)) continue;
    try {
      pde.flux(q, x, view.t[patch], dir, flux);
    } catch (const NonPhysicalStateError& e) {
      throw KernelError(patch, h, e.what());
    }
    for (int k = 0; k < view.s; ++k) {
      temps.fluxValues[temps.fluxEnumerator.offset<K>(patch, h, dir * view.s + k)] = f[static_cast<std::size_t>(k)];
    }
  }
}

/// Steps 6-7: subtract the centred-flux difference over the 2d faces of
/// interior volume `v`, unknown `k`, from the update temporary.
template <Layout K>
void accumulate_flux(const BatchView& view, KernelTemporaries& temps, int patch, const VolumeIndex& v, int k) {
  const VolumeIndex h = view.haloed(v);
  const double nu = view.dt[patch] / view.volumeSize(patch);
  const auto& fe = temps.fluxEnumerator;

  double& update = temps.updates[temps.updateEnumerator.offset<K>(patch, v, k)];
  double acc = update;
  for (int dir = 0; dir < view.dimensions; ++dir) {
    const int component = dir * view.s + k;
    const double fLeft = temps.fluxValues[fe.offset<K>(patch, detail::shifted(h, dir, -1), component)];
    const double fSelf = temps.fluxValues[fe.offset<K>(patch, h, component)];
    const double fRight = temps.fluxValues[fe.offset<K>(patch, detail::shifted(h, dir, +1), component)];
    const double cLeft = 0.5 * (fLeft + fSelf);
    const double cRight = 0.5 * (fSelf + fRight);
    acc -= nu * (cRight - cLeft);
  }
  update = acc;
}

/// Step 8: non-conservative product over the 2d faces of interior volume
/// `v`. Each face contributes -dt/2 * B(Q_face) gradQ_face with Q_face the
/// face average and gradQ the jump over dx along the face normal.
/// Step 9: QOut += update.
template <Pde P, Layout K>
void ncp_and_finalize(const BatchView& view, const P& pde, KernelTemporaries& temps, int patch,
                      const VolumeIndex& v) {
  const int s = view.s;
  std::array<double, kMaxUnknowns> update{};
  for (int k = 0; k < s; ++k) {
    update[static_cast<std::size_t>(k)] = temps.updates[temps.updateEnumerator.offset<K>(patch, v, k)];
  }

  if constexpr (HasNonConservativeProduct<P>) {
    const VolumeIndex h = view.haloed(v);
    const double dt = view.dt[patch];
    const double dx = view.volumeSize(patch);
    const Coord centre = view.volumeCentre(patch, h);
    std::array<double, kMaxUnknowns> qFace{};
    std::array<double, 3 * kMaxUnknowns> gradQ{};
    std::array<double, kMaxUnknowns> ncp{};
    for (int dir = 0; dir < view.dimensions; ++dir) {
      for (const int side : {-1, +1}) {
        const double* qLeft = view.qInVolume(patch, side < 0 ? detail::shifted(h, dir, -1) : h);
        const double* qRight = view.qInVolume(patch, side < 0 ? h : detail::shifted(h, dir, +1));
        gradQ.fill(0.0);
        for (int k = 0; k < s; ++k) {
          qFace[static_cast<std::size_t>(k)] = 0.5 * (qLeft[k] + qRight[k]);
          gradQ[static_cast<std::size_t>(dir * s + k)] = (qRight[k] - qLeft[k]) / dx;
        }
        Coord x = centre;
        x[dir] += 0.5 * side * dx;
        pde.nonconservativeProduct(std::span<const double>(qFace.data(), static_cast<std::size_t>(s)),
                                   std::span<const double>(gradQ.data(), static_cast<std::size_t>(view.dimensions * s)),
                                   x, view.t[patch], dir, std::span<double>(ncp.data(), static_cast<std::size_t>(s)));
        for (int k = 0; k < s; ++k) update[static_cast<std::size_t>(k)] -= 0.5 * dt * ncp[static_cast<std::size_t>(k)];
      }
    }
  }

  double* out = view.qOutVolume(patch, v);
  for (int k = 0; k < s; ++k) out[k] += update[static_cast<std::size_t>(k)];
}

}  // namespace fvk::kernel
