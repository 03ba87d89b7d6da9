#include "pss/integrate.hpp"

#include <cmath>

#include "pss/detail/rk45.hpp"

namespace pss::ode {

using detail::iF;
using detail::iG;
using detail::iM;
using detail::iV;

OdeState derivatives(double r, const OdeState& s, double m, double omega) {
    if (!(std::isfinite(r) && std::isfinite(s.M) && std::isfinite(s.V) && std::isfinite(s.F) &&
          std::isfinite(s.G) && std::isfinite(m) && std::isfinite(omega)))
        throw numerical_error("non-finite state");
    if (!(r > 0.0)) throw std::invalid_argument("derivatives requires r > 0");
    if (!(m > 0.0)) throw std::invalid_argument("derivatives requires m > 0");

    const detail::RadialRhs<double> rhs{m, omega};
    const auto d = rhs(r, detail::Vec4<double>(s.M, s.V, s.F, s.G));
    return {d[iM], d[iV], d[iF], d[iG]};
}

OdeState origin_step(double f0, double v0, double m, double omega, double h0) {
    if (!(h0 > 0.0)) throw std::invalid_argument("origin_step requires h0 > 0");
    const double pi = detail::pi_v<double>();
    const double f2 = m * ((m - omega) + m * v0) * f0 / 3.0;
    OdeState s;
    s.F = f0 + f2 * h0 * h0;
    s.G = 2.0 * f2 * h0;
    s.M = 8.0 * pi / 3.0 * f0 * f0 * h0 * h0 * h0;
    s.V = v0 + 4.0 * pi / 3.0 * f0 * f0 * h0 * h0;
    return s;
}

namespace {

template <class Scalar>
detail::RawConfig<Scalar> raw_config(const IntegrationConfig& cfg, int node_cap = -1) {
    detail::RawConfig<Scalar> raw;
    raw.rel_tol = static_cast<Scalar>(cfg.rel_tol);
    raw.abs_tol = static_cast<Scalar>(cfg.abs_tol);
    raw.r_max = static_cast<Scalar>(cfg.r_max);
    raw.blowup_factor = static_cast<Scalar>(cfg.blowup_factor);
    raw.tail_epsilon = static_cast<Scalar>(cfg.tail_epsilon);
    raw.node_cap = node_cap;
    return raw;
}

TerminationReason public_reason(detail::RawReason raw) {
    switch (raw) {
        case detail::RawReason::Decayed: return TerminationReason::Decayed;
        case detail::RawReason::DivergedPositive: return TerminationReason::DivergedPositive;
        case detail::RawReason::DivergedNegative: return TerminationReason::DivergedNegative;
        case detail::RawReason::MaxRadius: return TerminationReason::MaxRadius;
        case detail::RawReason::NodeCapExceeded: break;
    }
    throw numerical_error("unexpected integration termination");
}

}  // namespace

IntegrationResult integrate_profile(double f0, double v0, double m, double omega,
                                    const IntegrationConfig& cfg) {
    if (!(f0 > 0.0)) throw std::invalid_argument("integrate_profile requires f0 > 0");
    if (!(m > 0.0)) throw std::invalid_argument("integrate_profile requires m > 0");

    const OdeState s0 = origin_step(f0, v0, m, omega, cfg.h0);
    const detail::RadialRhs<double> rhs{m, omega};
    auto run = detail::integrate_raw<double>(rhs, cfg.h0, detail::Vec4<double>(s0.M, s0.V, s0.F, s0.G),
                                             raw_config<double>(cfg));

    IntegrationResult result;
    const auto n = static_cast<Eigen::Index>(run.r.size());
    result.profile.r = Eigen::Map<const Eigen::ArrayXd>(run.r.data(), n);
    result.profile.M = Eigen::Map<const Eigen::ArrayXd>(run.M.data(), n);
    result.profile.V = Eigen::Map<const Eigen::ArrayXd>(run.V.data(), n);
    result.profile.F = Eigen::Map<const Eigen::ArrayXd>(run.F.data(), n);
    result.profile.Fr = Eigen::Map<const Eigen::ArrayXd>(run.G.data(), n);
    result.reason = public_reason(run.reason);
    result.accumulated_error = run.accumulated_error;
    return result;
}

double max_step_residual(const RadialProfile& profile, double m, double omega,
                         const IntegrationConfig& cfg) {
    const detail::RadialRhs<double> rhs{m, omega};
    double worst = 0.0;
    for (Eigen::Index i = 0; i + 1 < profile.size(); ++i) {
        const double r0 = profile.r[i];
        const double h = profile.r[i + 1] - r0;
        detail::Vec4<double> y(profile.M[i], profile.V[i], profile.F[i], profile.Fr[i]);
        detail::Vec4<double> y5, err, k_last;
        detail::Vec4<double> k1 = rhs(r0, y);
        dp45_step<double>(rhs, r0, y, h / 2.0, k1, y5, err, k_last);
        dp45_step<double>(rhs, r0 + h / 2.0, y5, h / 2.0, k_last, y, err, k_last);
        const detail::Vec4<double> stored(profile.M[i + 1], profile.V[i + 1], profile.F[i + 1],
                                          profile.Fr[i + 1]);
        for (int c = 0; c < 4; ++c) {
            const double scale =
                cfg.abs_tol + cfg.rel_tol * std::max(std::abs(stored[c]), std::abs(y[c]));
            worst = std::max(worst, std::abs(y[c] - stored[c]) / scale);
        }
    }
    return worst;
}

}  // namespace pss::ode
