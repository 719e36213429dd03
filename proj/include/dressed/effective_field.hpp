#pragma once

// First-order Floquet-Magnus picture of the dressed spin. In the frame that
// follows the dressing rotation exp(-i xi sin(tau) sigma_x / 2) the motion
// factorizes as exp(-i P1(tau)) exp(-i Lambda1 tau), with Lambda1 set by the
// rectified field h and P1 periodic with P1(0) = 0.

#include <array>
#include <optional>
#include <span>

#include <Eigen/Dense>

#include "dressed/model.hpp"
#include "dressed/special_functions.hpp"

namespace dressed {

using Vec3 = std::array<double, 3>;

struct EffectiveField {
  double hx = 0.0;  ///< rad/s
  double hy = 0.0;
  double hz = 0.0;
  double omega_L = 0.0;  ///< |h|, rad/s
  double eta = 0.0;      ///< perturbation_strength() of the source configuration

  Vec3 vector() const { return {hx, hy, hz}; }

  /// Unit precession axis; empty when h = 0.
  std::optional<Vec3> axis() const;
};

/// Rectified field for any combination of x/y/z tuning fields.
/// hx = omega0x always; the y and z rows follow the harmonic parity of the
/// y (index p) and z (index r) tuning fields:
///   hy = J0 w0y + [p even] Jp Y cos(Phi_y) - [r odd]  Jr Z sin(Phi_z)
///   hz = J0 w0z + [p odd]  Jp Y sin(Phi_y) + [r even] Jr Z cos(Phi_z)
/// An x-axis tuning field commutes with the dressing and averages to zero.
EffectiveField rectified_field(const DriveConfiguration& config);

/// |h| in rad/s.
double larmor_frequency(const DriveConfiguration& config);

/// Precession frequency without tuning: sqrt(w0x^2 + w0z^2 J0(xi)^2).
double bare_precession(double omega0x, double omega0z, double xi);

struct FloquetFirstOrder {
  Spin spin = Spin::half;
  /// Spin 1/2: the Hermitian 2x2 h.sigma / (2 omega).
  /// Spin 1: the real antisymmetric 3x3 generator (h / omega).L acting on M.
  Eigen::MatrixXcd lambda1;
  /// max over the tau grid of the spectral norm of P1(tau).
  double p1_norm_max = 0.0;

  /// Real spectrum of lambda1 (spin 1/2) or of i*lambda1 (spin 1), ascending.
  std::vector<double> spectrum() const;
};

/// Vector p(tau) with P1(tau) = p . sigma for spin 1/2 (dimensionless,
/// includes the 1/2 of the Pauli coupling). The spin-1 generator is 2 p . L.
Vec3 micromotion(const DriveConfiguration& config, double tau, const SeriesControl& ctl = {});

/// Same as micromotion() for many tau values sharing one Bessel table.
std::vector<Vec3> micromotion(const DriveConfiguration& config, std::span<const double> tau_grid,
                              const SeriesControl& ctl = {});

FloquetFirstOrder floquet_first_order(const DriveConfiguration& config, std::span<const double> tau_grid,
                                      const SeriesControl& ctl = {});

/// `points` equally spaced tau values covering [0, 2pi].
std::vector<double> uniform_period_grid(int points);

/// Spin-1 rotation generators, (L_j)_{ac} = epsilon_{a j c}, so that
/// (B . L) M = B x M.
std::array<Eigen::Matrix3d, 3> rotation_generators();

/// Pauli matrices sigma_x, sigma_y, sigma_z.
std::array<Eigen::Matrix2cd, 3> pauli();

}  // namespace dressed
