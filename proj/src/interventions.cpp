#include "netsale/interventions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <tuple>
#include <utility>

namespace netsale {

namespace {

// Everyone sits at the prior when the seller stays out.
double surplus_or_prior(const Network& g, const OptimalContract& oc, const ModelParams& p) {
    if (oc.trivial) return -static_cast<double>(g.node_count()) / p.z0;
    return consumer_surplus(g, oc.contract.target, p);
}

InterventionOutcome diff(const Network& before, const Network& after, const ModelParams& p) {
    InterventionOutcome out;
    OptimalContract a = optimal_contract(before, p);
    OptimalContract b = optimal_contract(after, p);
    out.alpha_before = a.m;
    out.alpha_after = b.m;
    out.profit_delta = b.profit - a.profit;
    out.cs_delta = surplus_or_prior(after, b, p) - surplus_or_prior(before, a, p);
    return out;
}

} // namespace

InterventionOutcome evaluate_link_removal(const Network& g, int u, int v, const ModelParams& p) {
    if (u > v) std::swap(u, v);
    InterventionOutcome out = diff(g, g.without_edge(u, v), p);
    out.kind = InterventionKind::RemoveLink;
    out.u = u;
    out.v = v;
    return out;
}

InterventionOutcome evaluate_node_isolation(const Network& g, int node, const ModelParams& p) {
    InterventionOutcome out = diff(g, g.without_node_edges(node), p);
    out.kind = InterventionKind::IsolateNode;
    out.node = node;
    return out;
}

std::vector<InterventionOutcome> scan_interventions(const Network& g, const ModelParams& p,
                                                    int budget) {
    check_params(p);
    std::vector<InterventionOutcome> all;
    for (auto [u, v] : g.edges()) all.push_back(evaluate_link_removal(g, u, v, p));
    for (int v = 0; v < g.node_count(); ++v)
        if (g.degree(v) > 0) all.push_back(evaluate_node_isolation(g, v, p));

    // Profit deltas come from the same closed form on both sides, so equal
    // alpha transitions tie exactly and the secondary key decides.
    auto rank = [](const InterventionOutcome& o) {
        bool isolate = o.kind == InterventionKind::IsolateNode;
        return std::make_tuple(isolate, isolate ? o.node : o.u, isolate ? -1 : o.v);
    };
    std::sort(all.begin(), all.end(),
              [&](const InterventionOutcome& x, const InterventionOutcome& y) {
                  if (x.profit_delta != y.profit_delta) return x.profit_delta > y.profit_delta;
                  return rank(x) < rank(y);
              });
    if (budget > 0 && all.size() > static_cast<size_t>(budget))
        all.resize(static_cast<size_t>(budget));
    return all;
}

ParetoCertificate pareto_efficient_check(const Network& g, const ModelParams& p) {
    check_params(p);
    ParetoCertificate cert;
    auto cp = is_core_periphery(g);
    if (!cp) return cert;
    cert.core_periphery = true;
    cert.core = cp->core;
    cert.periphery = cp->periphery;
    cert.m = cp->periphery.size();
    // Every core node is linked to the whole periphery, so each free rider
    // observes all m sold signals, the best any outsider can do at this alpha.
    double z = std::sqrt(cert.m / p.gamma) - p.z0;
    for (int v : cert.core.to_vector()) {
        double u = z > 0 ? -1.0 / (p.z0 + cert.m * z) : -1.0 / p.z0;
        cert.free_rider_utilities.emplace_back(v, u);
    }
    return cert;
}

std::optional<ParetoImprovement> find_pareto_improvement(const Network& g, const ModelParams& p) {
    check_params(p);
    int n = g.node_count();
    if (n > 6) throw capacity_error("exhaustive search over graphs limited to 6 nodes");

    // Baseline: the consumer-best maximum independent set on g. Profit is the
    // same for every maximum independent set, so this is the hardest outcome
    // a rewiring has to dominate.
    std::vector<double> base_u(static_cast<size_t>(n), -1.0 / p.z0);
    double base_profit = 0.0;
    OptimalContract oc = optimal_contract(g, p);
    if (!oc.trivial) {
        BestTargetResult best = best_target_for_consumers(g, p);
        base_u = best.report.per_node_utilities;
        base_profit = best.report.seller_profit;
    }

    const double eps = 1e-12;
    auto dominates = [&](const std::vector<double>& u, double profit) {
        if (profit < base_profit - eps) return false;
        bool strict = profit > base_profit + eps;
        for (int i = 0; i < n; ++i) {
            if (u[static_cast<size_t>(i)] < base_u[static_cast<size_t>(i)] - eps) return false;
            if (u[static_cast<size_t>(i)] > base_u[static_cast<size_t>(i)] + eps) strict = true;
        }
        return strict;
    };

    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);

    std::uint64_t total = std::uint64_t(1) << slots.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        Network h(n);
        for (size_t e = 0; e < slots.size(); ++e)
            if ((mask >> e) & 1u) h.add_edge(slots[e].first, slots[e].second);

        int alpha = independence_number(h);
        double z = std::sqrt(alpha / p.gamma) - p.z0;
        if (z <= 0) {
            std::vector<double> u(static_cast<size_t>(n), -1.0 / p.z0);
            if (dominates(u, 0.0)) return ParetoImprovement{h, NodeSet{}, 0.0, u};
            continue;
        }
        double profit = profit_closed_form(alpha, p);
        if (profit < base_profit - eps) continue;

        for (NodeSet t : enumerate_maximum_independent_sets(h).sets) {
            PurchaseCounts pc = purchase_counts(h, t);
            std::vector<double> u(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                u[static_cast<size_t>(i)] =
                    t.contains(i) ? -1.0 / p.z0
                                  : -1.0 / (p.z0 + pc.counts[static_cast<size_t>(i)] * z);
            if (dominates(u, profit)) return ParetoImprovement{h, t, profit, u};
        }
    }
    return std::nullopt;
}

} // namespace netsale
