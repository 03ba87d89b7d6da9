#pragma once

// Embedded Dormand-Prince 5(4) stepper and the outward radial integration
// loop, templated on the scalar type. Everything here works on the raw state
// vector y = (M, V, F, G); classification of what the run means is left to
// the callers in integrate.cpp / shooting.cpp.

#include <Eigen/Core>

#include <cmath>
#include <vector>

#include "pss/types.hpp"

namespace pss::detail {

template <class Scalar>
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;

// Component order inside the state vector.
inline constexpr int iM = 0;
inline constexpr int iV = 1;
inline constexpr int iF = 2;
inline constexpr int iG = 3;

template <class Scalar>
Scalar pi_v() {
    return static_cast<Scalar>(3.14159265358979323846264338327950288L);
}

/// Right-hand side of the radial system at fixed (m, omega):
///   M' = 8 pi r^2 F^2,  V' = M / r^2,  F' = G,
///   G' = 2 m [(m - omega) F + m V F] - 2 G / r.
template <class Scalar>
struct RadialRhs {
    Scalar m;
    Scalar omega;

    Vec4<Scalar> operator()(Scalar r, const Vec4<Scalar>& y) const {
        Vec4<Scalar> d;
        const Scalar F = y[iF];
        d[iM] = Scalar(8) * pi_v<Scalar>() * r * r * F * F;
        d[iV] = y[iM] / (r * r);
        d[iF] = y[iG];
        d[iG] = Scalar(2) * m * ((m - omega) + m * y[iV]) * F - Scalar(2) * y[iG] / r;
        return d;
    }
};

/// One Dormand-Prince 5(4) stage evaluation. k1 must hold f(r, y) on entry
/// (FSAL: k7 of the previous accepted step). Returns the 5th-order solution,
/// the embedded error vector and f(r + h, y5) in k_last.
template <class Scalar, class Rhs>
void dp45_step(const Rhs& rhs, Scalar r, const Vec4<Scalar>& y, Scalar h, const Vec4<Scalar>& k1,
               Vec4<Scalar>& y5, Vec4<Scalar>& err, Vec4<Scalar>& k_last) {
    using V = Vec4<Scalar>;
    const V k2 = rhs(r + h * Scalar(1.0L / 5), V(y + h * (Scalar(1.0L / 5) * k1)));
    const V k3 = rhs(r + h * Scalar(3.0L / 10),
                     V(y + h * (Scalar(3.0L / 40) * k1 + Scalar(9.0L / 40) * k2)));
    const V k4 = rhs(r + h * Scalar(4.0L / 5),
                     V(y + h * (Scalar(44.0L / 45) * k1 - Scalar(56.0L / 15) * k2 +
                                Scalar(32.0L / 9) * k3)));
    const V k5 = rhs(r + h * Scalar(8.0L / 9),
                     V(y + h * (Scalar(19372.0L / 6561) * k1 - Scalar(25360.0L / 2187) * k2 +
                                Scalar(64448.0L / 6561) * k3 - Scalar(212.0L / 729) * k4)));
    const V k6 = rhs(r + h,
                     V(y + h * (Scalar(9017.0L / 3168) * k1 - Scalar(355.0L / 33) * k2 +
                                Scalar(46732.0L / 5247) * k3 + Scalar(49.0L / 176) * k4 -
                                Scalar(5103.0L / 18656) * k5)));
    y5 = y + h * (Scalar(35.0L / 384) * k1 + Scalar(500.0L / 1113) * k3 +
                  Scalar(125.0L / 192) * k4 - Scalar(2187.0L / 6784) * k5 +
                  Scalar(11.0L / 84) * k6);
    k_last = rhs(r + h, y5);
    // y5 - y4, written directly in terms of the stages
    err = h * (Scalar(71.0L / 57600) * k1 - Scalar(71.0L / 16695) * k3 +
               Scalar(71.0L / 1920) * k4 - Scalar(17253.0L / 339200) * k5 +
               Scalar(22.0L / 525) * k6 - Scalar(1.0L / 40) * k_last);
}

enum class RawReason {
    Decayed,
    DivergedPositive,
    DivergedNegative,
    MaxRadius,
    NodeCapExceeded,
};

template <class Scalar>
struct RawRun {
    std::vector<Scalar> r, M, V, F, G;
    RawReason reason = RawReason::MaxRadius;
    int nodes = 0;
    Vec4<double> accumulated_error = Vec4<double>::Zero();
    long accepted_steps = 0;
    long rejected_steps = 0;
};

template <class Scalar>
struct RawConfig {
    Scalar rel_tol;
    Scalar abs_tol;
    Scalar r_max;
    Scalar blowup_factor;
    Scalar tail_epsilon;
    int node_cap = -1;  // < 0: unlimited
};

/// Integrate outward from (r0, y0) until the run decays, diverges, exceeds
/// the node cap, or reaches r_max. Every accepted step is recorded.
template <class Scalar>
RawRun<Scalar> integrate_raw(const RadialRhs<Scalar>& rhs, Scalar r0, const Vec4<Scalar>& y0,
                             const RawConfig<Scalar>& cfg) {
    RawRun<Scalar> run;
    auto record = [&run](Scalar r, const Vec4<Scalar>& y) {
        run.r.push_back(r);
        run.M.push_back(y[iM]);
        run.V.push_back(y[iV]);
        run.F.push_back(y[iF]);
        run.G.push_back(y[iG]);
    };

    Scalar r = r0;
    Vec4<Scalar> y = y0;
    record(r, y);

    // |F| ceiling over the oscillatory region, i.e. where the coefficient
    // (m - omega) + m V is still negative. Both the tail cut and the blowup
    // cut are relative to it.
    Scalar max_abs_f = std::abs(y[iF]);
    Scalar last_sign = y[iF] > Scalar(0) ? Scalar(1) : (y[iF] < Scalar(0) ? Scalar(-1) : Scalar(0));

    Vec4<Scalar> k1 = rhs(r, y);
    Scalar h = r0 / Scalar(2);

    while (true) {
        if (r + h > cfg.r_max) {
            h = cfg.r_max - r;
            if (h <= r * Scalar(1e-14)) {
                run.reason = RawReason::MaxRadius;
                return run;
            }
        }
        if (h < r * Scalar(1e-14))
            throw numerical_error("stiff region: step size underflow at r = " +
                                  std::to_string(static_cast<double>(r)));

        Vec4<Scalar> y_new, err_vec, k_last;
        dp45_step<Scalar>(rhs, r, y, h, k1, y_new, err_vec, k_last);

        Scalar err = Scalar(0);
        for (int i = 0; i < 4; ++i) {
            const Scalar scale =
                cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err = std::max(err, std::abs(err_vec[i]) / scale);
        }
        if (!std::isfinite(static_cast<double>(err)) || !y_new.allFinite())
            throw numerical_error("non-finite state during integration at r = " +
                                  std::to_string(static_cast<double>(r)));

        if (err > Scalar(1)) {
            ++run.rejected_steps;
            h *= std::max(Scalar(0.2), Scalar(0.9) * std::pow(err, Scalar(-0.2)));
            continue;
        }

        r += h;
        y = y_new;
        k1 = k_last;
        record(r, y);
        ++run.accepted_steps;
        for (int i = 0; i < 4; ++i)
            run.accumulated_error[i] += std::abs(static_cast<double>(err_vec[i]));

        const Scalar s = y[iF] > Scalar(0) ? Scalar(1) : (y[iF] < Scalar(0) ? Scalar(-1) : Scalar(0));
        if (s != Scalar(0)) {
            if (last_sign != Scalar(0) && s != last_sign) {
                ++run.nodes;
                if (cfg.node_cap >= 0 && run.nodes > cfg.node_cap) {
                    run.reason = RawReason::NodeCapExceeded;
                    return run;
                }
            }
            last_sign = s;
        }

        const Scalar coeff = (rhs.m - rhs.omega) + rhs.m * y[iV];
        if (coeff <= Scalar(0)) {
            max_abs_f = std::max(max_abs_f, std::abs(y[iF]));
        } else {
            if (std::abs(y[iF]) <= cfg.tail_epsilon * max_abs_f) {
                run.reason = RawReason::Decayed;
                return run;
            }
            if (std::abs(y[iF]) >= cfg.blowup_factor * max_abs_f && y[iF] * y[iG] > Scalar(0)) {
                run.reason = y[iF] > Scalar(0) ? RawReason::DivergedPositive
                                               : RawReason::DivergedNegative;
                return run;
            }
        }

        if (r >= cfg.r_max) {
            run.reason = RawReason::MaxRadius;
            return run;
        }

        h *= std::min(Scalar(5), std::max(Scalar(0.2), Scalar(0.9) * std::pow(std::max(err, Scalar(1e-12)), Scalar(-0.2))));
    }
}

}  // namespace pss::detail
