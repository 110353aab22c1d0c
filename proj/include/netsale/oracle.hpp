#ifndef NETSALE_ORACLE_HPP
#define NETSALE_ORACLE_HPP

#include "netsale/contract.hpp"
#include "netsale/graph.hpp"

namespace netsale {

// Exhaustive reference solver. Slow by design: it exists to certify the
// closed-form solver on small instances, so it shares no search logic with
// optimal_contract.

inline constexpr int kOracleNodeCap = 20;
inline constexpr int kZGridPoints = 10000;
inline constexpr double kZTolerance = 1e-9;

// Profit from selling precision z to exactly `target`:
// sum of marginal prices at each buyer's in-target neighbour count, minus
// the production cost gamma * z.
double target_profit(const Network& g, NodeSet target, double z, const ModelParams& p);

struct BestZ {
    double z = 0.0;
    double profit = 0.0;
};

// Maximizes target_profit over z in [0, sqrt(n/gamma)]: a 10^4-point grid
// pass, then golden-section refinement inside the best cell's bracket down
// to an absolute z-tolerance of 1e-9. The profit surface can have several
// local maxima for non-independent targets; the grid is what guards against
// refining the wrong one.
BestZ best_z_for_target(const Network& g, NodeSet target, const ModelParams& p);

struct OracleResult {
    NodeSet best_target;
    double best_z = 0.0;
    double best_profit = 0.0;
    bool is_independent = false;
    bool matches_theorem1 = false; // closed-form solver reproduces this optimum
    long long scanned = 0;         // 2^n when the scan is exhaustive
};

// Scans every subset of buyers (ascending mask order, empty set included),
// optimizing z for each, and keeps the best (profit, then smaller mask).
// Sequential and parallel runs return the same result. Refuses graphs with
// more than node_cap nodes.
OracleResult brute_force_optimal(const Network& g, const ModelParams& p,
                                 int node_cap = kOracleNodeCap, int threads = 0);

} // namespace netsale

#endif
