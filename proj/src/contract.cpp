#include "netsale/contract.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "netsale/numeric.hpp"

namespace netsale {

void check_params(const ModelParams& p) {
    if (!(p.z0 > 0.0)) throw domain_error("z0 must be positive");
    if (!(p.gamma > 0.0)) throw domain_error("gamma must be positive");
}

void check_contract(const Network& g, const Contract& c) {
    if (c.target.bits & ~g.all_nodes()) throw domain_error("contract target out of range");
    if (c.z < 0.0) throw domain_error("contract precision must be nonnegative");
    if ((c.z == 0.0) != c.target.empty())
        throw domain_error("null contract means z = 0 and empty target together");
    NodeSet priced;
    int prev = -1;
    for (const auto& [node, price] : c.prices) {
        if (node <= prev) throw domain_error("contract prices must be sorted by node");
        prev = node;
        if (!c.target.contains(node)) throw domain_error("priced node outside target");
        if (price < 0.0) throw domain_error("negative price");
        priced.add(node);
    }
    if (priced != c.target) throw domain_error("every targeted node needs a price");
}

PurchaseCounts purchase_counts(const Network& g, NodeSet target) {
    if (target.bits & ~g.all_nodes()) throw domain_error("target out of range");
    PurchaseCounts pc;
    pc.counts.reserve(static_cast<size_t>(g.node_count()));
    for (int v = 0; v < g.node_count(); ++v)
        pc.counts.push_back(std::popcount(g.neighbors(v) & target.bits));
    return pc;
}

double marginal_price(int m, double z, const ModelParams& p) {
    check_params(p);
    if (m < 0) throw domain_error("neighbour count cannot be negative");
    if (z < 0.0) throw domain_error("precision cannot be negative");
    return 1.0 / (p.z0 + m * z) - 1.0 / (p.z0 + (m + 1) * z);
}

double willingness_to_pay(const Network& g, int i, const std::vector<double>& precisions,
                          const ModelParams& p) {
    check_params(p);
    if (i < 0 || i >= g.node_count()) throw domain_error("buyer out of range");
    if (static_cast<int>(precisions.size()) != g.node_count())
        throw domain_error("need one precision per node");
    for (double z : precisions)
        if (z < 0.0) throw domain_error("precision cannot be negative");

    NeumaierSum seen;
    for (std::uint64_t m = g.neighbors(i); m;) {
        int j = std::countr_zero(m);
        m &= m - 1;
        seen.add(precisions[static_cast<size_t>(j)]);
    }
    double without_own = seen.total();
    seen.add(precisions[static_cast<size_t>(i)]);
    double with_own = seen.total();
    return 1.0 / (p.z0 + without_own) - 1.0 / (p.z0 + with_own);
}

bool theorem1_precondition(const ModelParams& p, int n, bool uniform) {
    check_params(p);
    if (n < 1) throw domain_error("need at least one buyer");
    double bound = uniform ? 1.0 / (4.0 * std::sqrt(p.gamma))
                           : (n + 1) / (2.0 * std::sqrt(p.gamma) * (2 * n + 1));
    return p.z0 < bound;
}

OptimalContract optimal_contract(const Network& g, const ModelParams& p, bool uniform_bound) {
    check_params(p);
    OptimalContract r;
    r.precondition_ok = theorem1_precondition(p, g.node_count(), uniform_bound);

    NodeSet target = maximum_independent_set(g);
    r.m = target.size();
    double z = std::sqrt(r.m / p.gamma) - p.z0;
    if (z <= 0.0) {
        r.trivial = true; // even one buyer is not worth serving
        return r;
    }

    r.contract.target = target;
    r.contract.z = z;
    double price = 1.0 / p.z0 - std::sqrt(p.gamma / r.m);
    for (int v : target.to_vector()) r.contract.prices.emplace_back(v, price);
    r.profit = seller_profit(g, r.contract, p);
    return r;
}

double seller_profit(const Network& g, const Contract& c, const ModelParams& p) {
    check_params(p);
    check_contract(g, c);
    NeumaierSum revenue;
    for (const auto& [node, price] : c.prices) revenue.add(price);
    return revenue.total() - p.gamma * c.z;
}

double profit_closed_form(int m, const ModelParams& p) {
    check_params(p);
    if (m < 1) throw domain_error("profit needs at least one targeted buyer");
    return m / p.z0 + p.gamma * p.z0 - 2.0 * std::sqrt(p.gamma * m);
}

bool prop1_removal_test(const Network& g, NodeSet target, double z, const ModelParams& p) {
    check_params(p);
    if (target.empty()) throw domain_error("target must be nonempty");
    if (!(z > 0.0)) throw domain_error("precision must be positive");
    if (is_independent_set(g, target)) return false;

    PurchaseCounts pc = purchase_counts(g, target);
    double threshold = std::numeric_limits<double>::infinity();
    for (int v : target.to_vector())
        threshold = std::min(threshold, p.z0 / (1 + pc.counts[static_cast<size_t>(v)]));
    return z > threshold;
}

} // namespace netsale
