#pragma once

// Direct integration of the full bichromatic dynamics, used as the oracle for
// the first-order results. Time is tau = omega t; the Hamiltonian is
// H(tau) = b(tau).sigma / 2 with
//
//   b(tau) = ( w0x + xi cos tau + X cos(q tau + Phi_x),
//              w0y + Y cos(p tau + Phi_y),
//              w0z + Z cos(r tau + Phi_z) ) / omega-units,
//
// and the spin-1 magnetization obeys dM/dtau = b(tau) x M.

#include <Eigen/Dense>

#include "dressed/effective_field.hpp"
#include "dressed/model.hpp"

namespace dressed {

struct IntegratorControl {
  int steps_per_period = 512;
  double rel_tol = 1e-10;
  int max_refinements = 6;
  double unitarity_drift_limit = 1e-6;

  /// Throws std::invalid_argument on steps_per_period < 64 or non-positive tolerances.
  void check() const;
};

enum class SeriesSource { analytic, numeric };

struct CoherenceSeries {
  std::vector<double> times;  ///< seconds
  std::vector<double> sx, sy, sz;
  SeriesSource source = SeriesSource::numeric;
  Spin spin = Spin::half;
  bool degenerate = false;        ///< analytic series with Omega_L = 0
  double max_norm_drift = 0.0;    ///< numeric: max | |psi|^2 - 1 | or | |M| - |M0| | / |M0|
  int steps_per_period = 0;       ///< numeric: step count that met the tolerance

  std::size_t size() const { return times.size(); }
};

struct QuasiEnergy {
  double omega_L_numeric = 0.0;  ///< rad/s, principal branch [0, omega/2]
  bool alias_ambiguous = false;
  double monodromy_unitarity_error = 0.0;
  double rotation_angle = 0.0;   ///< Bloch-sphere rotation per period, [0, pi]
  int steps_per_period = 0;
};

/// Dimensionless field vector b(tau).
class DriveField {
 public:
  explicit DriveField(const DimensionlessParams& params);

  Vec3 operator()(double tau) const;

 private:
  Vec3 static_;
  double xi_;
  struct Term {
    int axis;
    double amplitude;
    int harmonic;
    double phase;
  };
  std::vector<Term> terms_;
};

using Spinor = Eigen::Vector2cd;

/// +1 eigenstate of sigma_x.
Spinor sigma_x_eigenstate();

/// Propagator U(tau_end) from tau = 0 with a fixed number of RK4 steps.
Eigen::Matrix2cd propagator_matrix(const DriveConfiguration& config, double tau_end, int steps);

/// One-period propagator under step halving. `steps_used` receives the step
/// count of the returned matrix.
Eigen::Matrix2cd monodromy(const DriveConfiguration& config, const IntegratorControl& ctl = {},
                           int* steps_used = nullptr);

/// One-period rotation matrix of the Bloch equation.
Eigen::Matrix3d rotation_monodromy(const DriveConfiguration& config, const IntegratorControl& ctl = {},
                                   int* steps_used = nullptr);

/// Larmor frequency from the eigenphases of the one-period propagator
/// (spin 1/2) or the rotation angle of the one-period Bloch map (spin 1),
/// chosen by config.spin.
QuasiEnergy monodromy_quasienergy(const DriveConfiguration& config, const IntegratorControl& ctl = {});

/// <sigma_j(t)> sampled at `samples` equally spaced times on [0, t_end].
/// Throws Error(NoConvergence) or Error(UnitarityLost).
CoherenceSeries propagate_spin_half(const DriveConfiguration& config, double t_end, int samples,
                                    const Spinor& initial = sigma_x_eigenstate(),
                                    const IntegratorControl& ctl = {});

/// Magnetization M(t) of the Bloch equation, sampled as above.
CoherenceSeries propagate_bloch_spin1(const DriveConfiguration& config, double t_end, int samples,
                                      const Vec3& initial = {1.0, 0.0, 0.0},
                                      const IntegratorControl& ctl = {});

/// First-order closed forms for an initial sigma_x eigenstate, with
/// exp(-i P1) replaced by the identity. Omega_L = 0 gives sx = 1,
/// sy = sz = 0 and sets `degenerate`.
CoherenceSeries analytic_coherences(const DriveConfiguration& config, double t_end, int samples);

}  // namespace dressed
