#include "pss/types.hpp"

#include <cmath>
#include <sstream>

namespace pss {

const char* to_string(TerminationReason reason) {
    switch (reason) {
        case TerminationReason::Decayed: return "decayed";
        case TerminationReason::DivergedPositive: return "diverged_positive";
        case TerminationReason::DivergedNegative: return "diverged_negative";
        case TerminationReason::MaxRadius: return "max_radius";
    }
    return "unknown";
}

std::string Regime::name() const {
    return std::to_string(n_min) + "-" + std::to_string(n_max);
}

Regime parse_regime(const std::string& text) {
    auto sep = text.find_first_of("-:");
    if (sep == std::string::npos || sep == 0 || sep + 1 == text.size())
        throw std::invalid_argument("regime must be of the form MIN-MAX, got '" + text + "'");
    Regime regime;
    try {
        regime.n_min = std::stoi(text.substr(0, sep));
        regime.n_max = std::stoi(text.substr(sep + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("regime must be of the form MIN-MAX, got '" + text + "'");
    }
    if (regime.n_min < 0 || regime.n_min >= regime.n_max)
        throw std::invalid_argument("regime requires 0 <= n_min < n_max, got '" + text + "'");
    return regime;
}

const char* fit_label(Quantity q) {
    switch (q) {
        case Quantity::NodesPlusOne: return "n+1";
        case Quantity::OmegaGap: return "m-omega";
        case Quantity::NegV0: return "-V0";
        case Quantity::F0: return "F0";
        case Quantity::RHalf: return "Rh";
        case Quantity::RDecay: return "Rdecay";
        case Quantity::MassRatio: return "Mratio";
        case Quantity::FDecayAbs: return "Fdecay";
        case Quantity::VMax: return "vmax";
    }
    return "?";
}

const char* parameter_label(Quantity q) {
    switch (q) {
        case Quantity::NodesPlusOne: return "n";
        case Quantity::OmegaGap: return "omega";
        case Quantity::NegV0: return "V0";
        case Quantity::F0: return "F0";
        case Quantity::RHalf: return "Rh";
        case Quantity::RDecay: return "Rdecay";
        case Quantity::MassRatio: return "Mdecay";
        case Quantity::FDecayAbs: return "Fdecay";
        case Quantity::VMax: return "vmax";
    }
    return "?";
}

Quantity parse_quantity(const std::string& name) {
    for (int i = 0; i < kQuantityCount; ++i) {
        auto q = static_cast<Quantity>(i);
        if (name == fit_label(q) || name == parameter_label(q)) return q;
    }
    // a few forgiving aliases seen in reports
    if (name == "n") return Quantity::NodesPlusOne;
    if (name == "omega" || name == "w") return Quantity::OmegaGap;
    if (name == "V0" || name == "v0") return Quantity::NegV0;
    if (name == "f0") return Quantity::F0;
    if (name == "rh") return Quantity::RHalf;
    if (name == "rdecay") return Quantity::RDecay;
    if (name == "mdecay" || name == "mratio") return Quantity::MassRatio;
    if (name == "fdecay" || name == "fdecay_abs") return Quantity::FDecayAbs;
    if (name == "v_max") return Quantity::VMax;
    throw std::invalid_argument("unknown quantity '" + name + "'");
}

const RelationConstants::Row* RelationConstants::find(const Regime& regime) const {
    for (const auto& row : rows)
        if (row.regime == regime) return &row;
    return nullptr;
}

double RelationConstants::constant(const Regime& regime, Quantity q) const {
    const Row* row = find(regime);
    if (!row) {
        std::ostringstream msg;
        msg << "unknown regime " << regime.name() << "; known:";
        for (const auto& r : rows) msg << ' ' << r.regime.name();
        throw std::invalid_argument(msg.str());
    }
    return row->c[static_cast<int>(q)];
}

int count_nodes(const RadialProfile& profile) {
    int nodes = 0;
    double last_sign = 0.0;
    for (Eigen::Index i = 0; i < profile.F.size(); ++i) {
        double s = profile.F[i] > 0.0 ? 1.0 : (profile.F[i] < 0.0 ? -1.0 : 0.0);
        if (s == 0.0) continue;  // exact zeros do not count as strict changes
        if (last_sign != 0.0 && s != last_sign) ++nodes;
        last_sign = s;
    }
    return nodes;
}

namespace {

bool finite(const Eigen::ArrayXd& a) { return a.isFinite().all(); }

void check_profile(const RadialProfile& p, std::vector<std::string>& out) {
    const Eigen::Index n = p.r.size();
    if (n < 2 || p.F.size() != n || p.Fr.size() != n || p.M.size() != n || p.V.size() != n) {
        out.push_back("profile arrays must have equal length >= 2");
        return;
    }
    if (!(finite(p.r) && finite(p.F) && finite(p.Fr) && finite(p.M) && finite(p.V)))
        out.push_back("profile values must be finite");
    if (!(p.r[0] > 0.0) || (p.r.tail(n - 1) <= p.r.head(n - 1)).any())
        out.push_back("r strictly increasing with r[0] > 0");
    if (!(p.M[0] >= 0.0) || (p.M.tail(n - 1) < p.M.head(n - 1)).any())
        out.push_back("M non-decreasing");
    if ((p.V.tail(n - 1) < p.V.head(n - 1)).any())
        out.push_back("V non-decreasing");
}

}  // namespace

std::vector<std::string> validate_state(const StaticState& state) {
    std::vector<std::string> out;
    check_profile(state.profile, out);

    if (!(state.m > 0.0)) out.push_back("m must be positive");
    if (!(state.omega > 0.0 && state.omega < state.m))
        out.push_back("omega must satisfy 0 < ω < m");
    if (state.n < 0) out.push_back("node count must be non-negative");

    const ObservableSet& o = state.observables;
    if (!(o.f0 > 0.0)) out.push_back("F(0) must extrapolate positive");
    if (!(o.v0 < 0.0)) out.push_back("V(0) must extrapolate negative");
    if (!(o.rh > 0.0 && o.rh < o.r99)) out.push_back("0 < Rh < R99");
    if (!(o.mdecay < o.mtot)) out.push_back("Mdecay < Mtot");
    if (!(o.vmax > 0.0)) out.push_back("vmax must be positive");

    if (out.empty() && count_nodes(state.profile) != state.n)
        out.push_back("sign changes of F must equal n");
    return out;
}

}  // namespace pss
