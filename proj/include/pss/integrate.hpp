#pragma once

#include <Eigen/Core>

#include "pss/types.hpp"

namespace pss::ode {

/// State vector (M, V, F, G) at one radius, with G = dF/dr.
struct OdeState {
    double M = 0.0;
    double V = 0.0;
    double F = 0.0;
    double G = 0.0;
};

/// Knobs for the adaptive outward integration.
struct IntegrationConfig {
    double rel_tol = 1e-10;        ///< local relative error tolerance
    double abs_tol = 1e-10;        ///< local absolute error tolerance
    double h0 = 1e-6;              ///< radius of the series-expansion first point
    double r_max = 1e6;            ///< hard radius cap
    double blowup_factor = 10.0;   ///< divergence cut, relative to the oscillation ceiling
    double tail_epsilon = 1e-8;    ///< tail truncation cut, relative to max |F|
};

/// Right-hand side of the radial system:
///   M' = 8 pi r^2 F^2,  V' = M / r^2,  F' = G,
///   G' = 2 m [(m - omega) F + m V F] - 2 G / r.
/// Throws numerical_error on non-finite input ("non-finite state").
OdeState derivatives(double r, const OdeState& s, double m, double omega);

/// Second-order series step off the regular origin (F'(0) = V'(0) = M(0) = 0):
///   F(h) = f0 + F2 h^2        with F2 = m ((m - omega) + m v0) f0 / 3
///   G(h) = 2 F2 h
///   M(h) = (8 pi / 3) f0^2 h^3
///   V(h) = v0 + (4 pi / 3) f0^2 h^2
/// Throws std::invalid_argument when h0 <= 0.
OdeState origin_step(double f0, double v0, double m, double omega, double h0);

struct IntegrationResult {
    RadialProfile profile;
    TerminationReason reason = TerminationReason::MaxRadius;
    /// Sum of the embedded local error estimates per component (M, V, F, G);
    /// a crude but useful global error gauge.
    Eigen::Vector4d accumulated_error = Eigen::Vector4d::Zero();
};

/// Integrate outward from r = cfg.h0 (seeded by origin_step) until the field
/// decays, diverges, or r_max is hit. Every accepted step is recorded.
IntegrationResult integrate_profile(double f0, double v0, double m, double omega,
                                    const IntegrationConfig& cfg = {});

/// Worst per-step consistency of a recorded profile with the ODE: every step
/// is re-integrated with two half-steps of the same scheme and compared
/// against the stored endpoint, in units of the local tolerance. A profile
/// accepted at (rel_tol, abs_tol) should score well below 10.
double max_step_residual(const RadialProfile& profile, double m, double omega,
                         const IntegrationConfig& cfg = {});

}  // namespace pss::ode
