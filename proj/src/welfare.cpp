#include "netsale/welfare.hpp"

#include <algorithm>
#include <cmath>

#include "netsale/numeric.hpp"

namespace netsale {

KVector k_vector(const Network& g, NodeSet target) {
    PurchaseCounts pc = purchase_counts(g, target);
    KVector k;
    k.reserve(static_cast<size_t>(g.node_count() - target.size()));
    for (int v = 0; v < g.node_count(); ++v)
        if (!target.contains(v)) k.push_back(pc.counts[static_cast<size_t>(v)]);
    std::sort(k.begin(), k.end(), std::greater<int>());
    return k;
}

namespace {

double contract_precision(int m, const ModelParams& p) {
    double z = std::sqrt(m / p.gamma) - p.z0;
    if (!(z > 0.0)) throw domain_error("trivial market: optimal precision is not positive");
    return z;
}

} // namespace

double consumer_surplus(const Network& g, NodeSet target, const ModelParams& p) {
    check_params(p);
    if (target.empty()) throw domain_error("target must be nonempty");
    if (!is_independent_set(g, target)) throw domain_error("target must be independent");
    const int m = target.size();
    const double z = contract_precision(m, p);

    // summing free riders in sorted order keeps mirror-image targets exactly
    // tied, which the lexicographic tie-break depends on
    NeumaierSum burden;
    burden.add(m / p.z0);
    for (int k : k_vector(g, target)) burden.add(1.0 / (p.z0 + k * z));
    return -burden.total();
}

TargetOrder compare_targets(const KVector& k1, const KVector& k2) {
    if (k1.size() != k2.size())
        throw domain_error("k-vectors must have equal length to be compared");
    KVector a = k1, b = k2;
    std::sort(a.begin(), a.end(), std::greater<int>());
    std::sort(b.begin(), b.end(), std::greater<int>());

    bool a_ge = true, b_ge = true;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) a_ge = false;
        if (b[i] < a[i]) b_ge = false;
    }
    if (a_ge) return TargetOrder::FirstWeaklyBetter;
    if (b_ge) return TargetOrder::SecondWeaklyBetter;

    long long sum_a = 0, sum_b = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        sum_a += a[i];
        sum_b += b[i];
    }
    if (sum_a == sum_b) {
        // equal mass: the vector whose descending prefix sums stay below is
        // the less spread one, and concave free-rider utility prefers it
        bool a_below = true, b_below = true;
        long long pa = 0, pb = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            pa += a[i];
            pb += b[i];
            if (pa > pb) a_below = false;
            if (pb > pa) b_below = false;
        }
        if (a_below) return TargetOrder::FirstWeaklyBetter;
        if (b_below) return TargetOrder::SecondWeaklyBetter;
    }
    return TargetOrder::Incomparable;
}

WelfareReport welfare_report(const Network& g, NodeSet target, const ModelParams& p) {
    check_params(p);
    WelfareReport r;
    r.target = target;
    r.consumer_surplus = consumer_surplus(g, target, p);
    r.seller_profit = profit_closed_form(target.size(), p);
    r.social_welfare = r.consumer_surplus + r.seller_profit;
    r.k = k_vector(g, target);

    const double z = contract_precision(target.size(), p);
    PurchaseCounts pc = purchase_counts(g, target);
    r.per_node_utilities.reserve(static_cast<size_t>(g.node_count()));
    for (int v = 0; v < g.node_count(); ++v) {
        if (target.contains(v))
            r.per_node_utilities.push_back(-1.0 / p.z0);
        else
            r.per_node_utilities.push_back(-1.0 / (p.z0 + pc.counts[static_cast<size_t>(v)] * z));
    }
    return r;
}

BestTargetResult best_target_for_consumers(const Network& g, const ModelParams& p,
                                           long long cap) {
    check_params(p);
    MisEnumeration mis = enumerate_maximum_independent_sets(g, cap);

    NodeSet best;
    double best_cs = 0.0;
    bool have = false;
    for (NodeSet t : mis.sets) { // ascending masks: first strict winner keeps ties lexicographic
        double cs = consumer_surplus(g, t, p);
        if (!have || cs > best_cs) {
            have = true;
            best = t;
            best_cs = cs;
        }
    }
    return BestTargetResult{welfare_report(g, best, p), mis.truncated};
}

double social_welfare(const Network& g, double z, const ModelParams& p) {
    check_params(p);
    if (z < 0.0) throw domain_error("precision cannot be negative");
    NeumaierSum burden;
    for (int v = 0; v < g.node_count(); ++v)
        burden.add(1.0 / (p.z0 + (g.degree(v) + 1) * z));
    return -burden.total() - p.gamma * z;
}

namespace {

double foc_lhs(const Network& g, double z, const ModelParams& p) {
    NeumaierSum s;
    for (int v = 0; v < g.node_count(); ++v) {
        double w = g.degree(v) + 1;
        double den = p.z0 + w * z;
        s.add(w / (den * den));
    }
    return s.total();
}

} // namespace

EfficiencyResult socially_efficient_precision(const Network& g, const ModelParams& p) {
    check_params(p);
    if (foc_lhs(g, 0.0, p) <= p.gamma) return EfficiencyResult{0.0, true};

    double weight_sum = 0.0;
    for (int v = 0; v < g.node_count(); ++v) weight_sum += g.degree(v) + 1;
    double hi = std::sqrt(weight_sum / p.gamma) + p.z0;
    while (foc_lhs(g, hi, p) >= p.gamma) hi *= 2.0;

    double lo = 0.0;
    while (hi - lo > kEfficiencyTolerance) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // interval at rounding resolution
        if (foc_lhs(g, mid, p) > p.gamma)
            lo = mid;
        else
            hi = mid;
    }
    return EfficiencyResult{0.5 * (lo + hi), false};
}

PrecisionGap precision_gap(const Network& g, const ModelParams& p) {
    check_params(p);
    PrecisionGap r;
    EfficiencyResult eff = socially_efficient_precision(g, p);
    r.z_star = eff.z_star;
    r.corner = eff.corner;
    int alpha = independence_number(g);
    r.z_seller = std::sqrt(alpha / p.gamma) - p.z0;
    r.gap = r.z_seller - r.z_star;
    r.clique_union = is_union_of_cliques(g);
    r.limit_z_star = std::sqrt(caro_wei_bound(g) / p.gamma);
    r.limit_z_seller = std::sqrt(alpha / p.gamma);
    return r;
}

} // namespace netsale
