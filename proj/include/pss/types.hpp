#pragma once

#include <Eigen/Core>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace pss {

/// Thrown when an integration or root search cannot produce a usable result
/// (divergence, missing bracket, stiff region, ...). Distinct from
/// std::invalid_argument, which is reserved for caller errors.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// How an outward integration ended.
enum class TerminationReason {
    Decayed,           ///< |F| fell below the tail cut beyond the outermost turning point
    DivergedPositive,  ///< F blew up towards +inf
    DivergedNegative,  ///< F blew up towards -inf
    MaxRadius,         ///< hit the hard radius cap
};

const char* to_string(TerminationReason reason);

/// Sampled radial solution on a strictly increasing grid with r[0] > 0.
/// The origin itself is not part of the grid; the field and potential values
/// at r = 0 are carried separately (see ObservableSet::f0 / v0).
/// All quantities are dimensionless (normalized units).
struct RadialProfile {
    Eigen::ArrayXd r;   ///< radius samples, strictly increasing
    Eigen::ArrayXd F;   ///< scalar field
    Eigen::ArrayXd Fr;  ///< dF/dr
    Eigen::ArrayXd M;   ///< mass function, non-decreasing
    Eigen::ArrayXd V;   ///< potential, non-decreasing

    Eigen::Index size() const { return r.size(); }
};

/// The twelve parameters extracted from one static state.
struct ObservableSet {
    double m = 0.0;           ///< particle mass term
    double omega = 0.0;       ///< field frequency
    int n = 0;                ///< node count
    double mtot = 0.0;        ///< total mass M(r -> inf)
    double r99 = 0.0;         ///< radius enclosing 99% of mtot
    double rh = 0.0;          ///< radius enclosing 50% of mtot
    double rdecay = 0.0;      ///< turning point: outermost zero of (m-omega) + m V
    double mdecay = 0.0;      ///< M(rdecay)
    double fdecay_abs = 0.0;  ///< |F(rdecay)|
    double vmax = 0.0;        ///< max of sqrt(M(r)/r)
    double v0 = 0.0;          ///< potential at the origin (negative)
    double f0 = 0.0;          ///< field at the origin (positive)
};

/// A standing-wave solution: profile plus its defining parameters and
/// extracted observables. Immutable by convention once built.
struct StaticState {
    double m = 0.0;
    double omega = 0.0;
    int n = 0;
    RadialProfile profile;
    ObservableSet observables;
    TerminationReason termination = TerminationReason::Decayed;
};

/// The (alpha, beta) pair of the two-parameter solution-to-solution map.
struct ScalingTransform {
    double alpha = 1.0;
    double beta = 1.0;
};

/// Exponent pair (k, l) describing how a quantity Q responds to a
/// ScalingTransform: Q -> alpha^k beta^l Q.
struct ScaleSignature {
    double k = 0.0;
    double l = 0.0;
};

/// Inclusive node-count range over which one set of fit constants applies.
struct Regime {
    int n_min = 0;
    int n_max = 0;

    bool contains(int n) const { return n >= n_min && n <= n_max; }
    std::string name() const;  ///< e.g. "0-20"

    friend bool operator==(const Regime&, const Regime&) = default;
};

/// Parse "A-B" or "A:B" into a Regime. Throws std::invalid_argument.
Regime parse_regime(const std::string& text);

/// Result of one log-log regression: ln y = slope * ln x + intercept.
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;      ///< natural-log scale
    double exp_intercept = 0.0;  ///< e^intercept, the power-law constant C
    double corr = 0.0;           ///< Pearson correlation of the log points
    Regime regime;
};

/// One halo from a catalog: total mass and radius in normalized units.
struct HaloRecord {
    std::string id;
    double mtot = 0.0;
    double r99 = 0.0;
};

/// The nine fitted quantities. Node count is fitted as n+1, the potential
/// origin value as -V0, and the decay-radius mass as 1 - Mdecay/Mtot.
enum class Quantity {
    NodesPlusOne,
    OmegaGap,  ///< m - omega
    NegV0,
    F0,
    RHalf,
    RDecay,
    MassRatio,
    FDecayAbs,
    VMax,
};

inline constexpr int kQuantityCount = 9;

/// Short label used in fit reports ("n+1", "m-omega", "-V0", ...).
const char* fit_label(Quantity q);
/// Parameter-style label used in constants tables ("n", "omega", "V0", ...).
const char* parameter_label(Quantity q);
/// Inverse of fit_label/parameter_label (accepts either). Throws std::invalid_argument.
Quantity parse_quantity(const std::string& name);

/// Per-regime power-law constants C, one per Quantity, stored with the sign
/// conventions of the summary relations (the V0 constant is negative, all
/// others positive).
struct RelationConstants {
    struct Row {
        Regime regime;
        std::array<double, kQuantityCount> c{};  // indexed by Quantity
    };
    std::vector<Row> rows;

    const Row* find(const Regime& regime) const;
    double constant(const Regime& regime, Quantity q) const;  ///< throws if regime unknown
};

/// Checks every documented invariant of a state and returns a description of
/// each violation; empty means valid. Never throws.
std::vector<std::string> validate_state(const StaticState& state);

/// Number of strict sign changes of F along the profile.
int count_nodes(const RadialProfile& profile);

}  // namespace pss
