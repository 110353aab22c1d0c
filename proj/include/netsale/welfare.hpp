#ifndef NETSALE_WELFARE_HPP
#define NETSALE_WELFARE_HPP

#include <vector>

#include "netsale/contract.hpp"
#include "netsale/graph.hpp"

namespace netsale {

// Free-rider link counts into the target, sorted descending. Two targets of
// equal size on the same graph produce k-vectors of equal length.
using KVector = std::vector<int>;

KVector k_vector(const Network& g, NodeSet target);

// Sum of buyer utilities under the optimal uniform contract on `target`
// (an independent set of size m, precision sqrt(m/gamma) - z0): every
// targeted buyer is priced down to its outside option -1/z0, a free rider
// with k links into the target sits at -1/(z0 + k z). Throws when the market
// is trivial (precision would be nonpositive).
double consumer_surplus(const Network& g, NodeSet target, const ModelParams& p);

enum class TargetOrder { FirstWeaklyBetter, SecondWeaklyBetter, Incomparable };

// Consumer-surplus dominance test on two k-vectors of equal length:
// componentwise at-least wins outright; with equal totals, the less spread
// vector (majorized by the other) wins for every parameter value. Anything
// else is incomparable.
TargetOrder compare_targets(const KVector& k1, const KVector& k2);

struct WelfareReport {
    NodeSet target;
    double consumer_surplus = 0.0;
    double seller_profit = 0.0;
    double social_welfare = 0.0; // consumer surplus plus profit
    KVector k;
    std::vector<double> per_node_utilities;
};

WelfareReport welfare_report(const Network& g, NodeSet target, const ModelParams& p);

struct BestTargetResult {
    WelfareReport report;
    bool truncated = false; // enumeration hit the cap; scan covered a prefix
};

// Scans maximum independent sets (up to `cap` of them) for the one with the
// highest consumer surplus; ties go to the smaller mask.
BestTargetResult best_target_for_consumers(const Network& g, const ModelParams& p,
                                           long long cap = kDefaultEnumerationCap);

// Planner's objective when everyone is served precision z for free:
// sum_i -1/(z0 + (deg_i + 1) z) - gamma z.
double social_welfare(const Network& g, double z, const ModelParams& p);

inline constexpr double kEfficiencyTolerance = 1e-12;

struct EfficiencyResult {
    double z_star = 0.0;
    bool corner = false; // no interior optimum: welfare is maximized at z = 0
};

// Unique positive root of sum_i (deg_i+1)/(z0 + (deg_i+1) z)^2 = gamma,
// found by bisection after doubling the upper end until bracketed.
EfficiencyResult socially_efficient_precision(const Network& g, const ModelParams& p);

struct PrecisionGap {
    double z_star = 0.0;         // socially efficient precision
    double z_seller = 0.0;       // precision the profit maximizer picks
    double gap = 0.0;            // z_seller - z_star
    bool clique_union = false;   // components are all cliques
    double limit_z_star = 0.0;   // z0 -> 0 limit: sqrt(caro_wei/gamma)
    double limit_z_seller = 0.0; // z0 -> 0 limit: sqrt(alpha/gamma)
    bool corner = false;
};

PrecisionGap precision_gap(const Network& g, const ModelParams& p);

} // namespace netsale

#endif
