#ifndef NETSALE_INTERVENTIONS_HPP
#define NETSALE_INTERVENTIONS_HPP

#include <optional>
#include <vector>

#include "netsale/contract.hpp"
#include "netsale/graph.hpp"
#include "netsale/welfare.hpp"

namespace netsale {

enum class InterventionKind { RemoveLink, IsolateNode };

// Effect of one structural edit on the seller's re-optimized contract.
struct InterventionOutcome {
    InterventionKind kind = InterventionKind::RemoveLink;
    int u = -1;               // link endpoints, set for RemoveLink
    int v = -1;
    int node = -1;            // set for IsolateNode
    int alpha_before = 0;
    int alpha_after = 0;
    double profit_delta = 0;  // seller profit, after minus before
    double cs_delta = 0;      // consumer surplus at the seller-optimal target
};

InterventionOutcome evaluate_link_removal(const Network& g, int u, int v, const ModelParams& p);
InterventionOutcome evaluate_node_isolation(const Network& g, int node, const ModelParams& p);

// All single-link removals and single-node isolations, best first.
// Ties break RemoveLink before IsolateNode, then by operands ascending.
// budget <= 0 keeps everything.
std::vector<InterventionOutcome> scan_interventions(const Network& g, const ModelParams& p,
                                                    int budget = 0);

struct ParetoCertificate {
    bool core_periphery = false;
    NodeSet core;
    NodeSet periphery;
    int m = 0;
    // Utility of each free rider under the seller-optimal contract, node ascending.
    std::vector<std::pair<int, double>> free_rider_utilities;
};

ParetoCertificate pareto_efficient_check(const Network& g, const ModelParams& p);

struct ParetoImprovement {
    Network graph;
    NodeSet target;
    double profit = 0;
    std::vector<double> utilities;  // all nodes, ascending
};

// Exhaustive search over every graph on the same node set for an outcome that
// leaves nobody worse off and somebody strictly better off. n <= 6 only.
std::optional<ParetoImprovement> find_pareto_improvement(const Network& g, const ModelParams& p);

} // namespace netsale

#endif
