#include "netsale/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "netsale/parallel.hpp"

namespace netsale {

double target_profit(const Network& g, NodeSet target, double z, const ModelParams& p) {
    check_params(p);
    if (z < 0.0) throw domain_error("precision cannot be negative");
    PurchaseCounts pc = purchase_counts(g, target);
    double revenue = 0.0;
    for (int v : target.to_vector()) revenue += marginal_price(pc.counts[static_cast<size_t>(v)], z, p);
    return revenue - p.gamma * z;
}

namespace {

// Profit evaluated from the target's neighbour-count histogram: nk distinct
// counts ks[] (ascending) with multiplicities cs[]. Keeping one evaluation
// routine, and one summation order, makes the grid pass, the refinement and
// the standalone entry point agree bit for bit.
double profit_from_counts(const int* ks, const int* cs, int nk, double z,
                          const ModelParams& p) {
    double acc = 0.0;
    for (int i = 0; i < nk; ++i) {
        double k = ks[i];
        acc += cs[i] * (1.0 / (p.z0 + k * z) - 1.0 / (p.z0 + (k + 1.0) * z));
    }
    return acc - p.gamma * z;
}

struct ZGrid {
    int points = kZGridPoints;
    double z_hi = 0.0;
    ModelParams p;
    std::vector<double> zs;    // grid abscissae
    std::vector<double> recip; // recip[k * points + t] = 1/(z0 + k zs[t]), k = 0..max_k
    std::vector<double> term_cap; // sup over [0, z_hi] of the k-th price term
    int max_k = 0;

    const double* row(int k) const { return recip.data() + static_cast<size_t>(k) * points; }
};

ZGrid build_grid(const ModelParams& p, int n, int max_k) {
    ZGrid grid;
    grid.p = p;
    grid.z_hi = std::sqrt(n / p.gamma);
    grid.max_k = max_k;
    const int G = grid.points;
    grid.zs.resize(static_cast<size_t>(G));
    for (int t = 0; t < G; ++t) grid.zs[static_cast<size_t>(t)] = grid.z_hi * t / (G - 1);
    grid.recip.resize(static_cast<size_t>(max_k + 1) * G);
    for (int k = 0; k <= max_k; ++k) {
        double* r = grid.recip.data() + static_cast<size_t>(k) * G;
        for (int t = 0; t < G; ++t) r[t] = 1.0 / (p.z0 + double(k) * grid.zs[static_cast<size_t>(t)]);
    }
    // analytic maximum of d_k(z) = 1/(z0+kz) - 1/(z0+(k+1)z): at z -> inf for
    // k = 0 (bounded by 1/z0), else at z0/sqrt(k(k+1)); clip to the domain
    grid.term_cap.resize(static_cast<size_t>(max_k));
    for (int k = 0; k < max_k; ++k) {
        double cap;
        if (k == 0) {
            cap = 1.0 / p.z0;
        } else {
            double zm = std::min(p.z0 / std::sqrt(double(k) * (k + 1)), grid.z_hi);
            cap = 1.0 / (p.z0 + k * zm) - 1.0 / (p.z0 + (k + 1.0) * zm);
        }
        grid.term_cap[static_cast<size_t>(k)] = cap * (1.0 + 1e-9);
    }
    return grid;
}

// Grid argmax plus golden-section polish. `acc` is caller-provided scratch of
// grid.points doubles.
BestZ refine_counts(const int* ks, const int* cs, int nk, const ZGrid& grid, double* acc) {
    const int G = grid.points;
    const ModelParams& p = grid.p;

    if (nk == 0) return BestZ{0.0, 0.0}; // nothing sold: stay out

    {
        const double* r0 = grid.row(ks[0]);
        const double* r1 = grid.row(ks[0] + 1);
        const double c = cs[0];
        for (int t = 0; t < G; ++t) acc[t] = c * (r0[t] - r1[t]);
    }
    for (int i = 1; i < nk; ++i) {
        const double* r0 = grid.row(ks[i]);
        const double* r1 = grid.row(ks[i] + 1);
        const double c = cs[i];
        for (int t = 0; t < G; ++t) acc[t] += c * (r0[t] - r1[t]);
    }

    int bt = 0;
    double bv = acc[0] - p.gamma * grid.zs[0];
    for (int t = 1; t < G; ++t) {
        double v = acc[t] - p.gamma * grid.zs[static_cast<size_t>(t)];
        if (v > bv) {
            bv = v;
            bt = t;
        }
    }

    double a = bt > 0 ? grid.zs[static_cast<size_t>(bt - 1)] : 0.0;
    double b = bt + 1 < G ? grid.zs[static_cast<size_t>(bt + 1)] : grid.z_hi;
    auto f = [&](double z) { return profit_from_counts(ks, cs, nk, z, p); };

    const double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > kZTolerance) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }

    BestZ best{0.0, f(0.0)}; // exact zero: no precision, no cost
    auto consider = [&](double z, double profit) {
        if (profit > best.profit || (profit == best.profit && z < best.z)) best = BestZ{z, profit};
    };
    consider(grid.zs[static_cast<size_t>(bt)], f(grid.zs[static_cast<size_t>(bt)]));
    if (f1 >= f2)
        consider(x1, f1);
    else
        consider(x2, f2);
    return best;
}

// Histogram of in-target neighbour counts, ascending by count.
int build_counts(const std::vector<std::uint64_t>& adj, std::uint64_t mask, int* ks, int* cs,
                 int* scratch) {
    int nk = 0;
    for (std::uint64_t m = mask; m;) {
        int v = std::countr_zero(m);
        m &= m - 1;
        int k = std::popcount(adj[static_cast<size_t>(v)] & mask);
        if (scratch[k]++ == 0) ks[nk++] = k;
    }
    std::sort(ks, ks + nk);
    for (int i = 0; i < nk; ++i) {
        cs[i] = scratch[ks[i]];
        scratch[ks[i]] = 0;
    }
    return nk;
}

struct Candidate {
    double profit = -std::numeric_limits<double>::infinity();
    double z = 0.0;
    std::uint64_t mask = ~std::uint64_t(0);
};

bool better(const Candidate& a, const Candidate& b) {
    if (a.profit != b.profit) return a.profit > b.profit;
    return a.mask < b.mask;
}

void atomic_floor_raise(std::atomic<double>& a, double v) {
    double cur = a.load(std::memory_order_relaxed);
    while (v > cur && !a.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
}

} // namespace

BestZ best_z_for_target(const Network& g, NodeSet target, const ModelParams& p) {
    check_params(p);
    if (target.empty()) throw domain_error("target must be nonempty");
    if (target.bits & ~g.all_nodes()) throw domain_error("target out of range");

    std::vector<std::uint64_t> adj(static_cast<size_t>(g.node_count()));
    for (int v = 0; v < g.node_count(); ++v) adj[static_cast<size_t>(v)] = g.neighbors(v);

    std::vector<int> ks(static_cast<size_t>(g.node_count()) + 1);
    std::vector<int> cs(static_cast<size_t>(g.node_count()) + 1);
    std::vector<int> scratch(static_cast<size_t>(g.node_count()) + 1, 0);
    int nk = build_counts(adj, target.bits, ks.data(), cs.data(), scratch.data());

    ZGrid grid = build_grid(p, g.node_count(), ks[nk - 1] + 1);
    std::vector<double> acc(static_cast<size_t>(grid.points));
    return refine_counts(ks.data(), cs.data(), nk, grid, acc.data());
}

OracleResult brute_force_optimal(const Network& g, const ModelParams& p, int node_cap,
                                 int threads) {
    check_params(p);
    const int n = g.node_count();
    if (node_cap < 1) throw domain_error("node cap must be positive");
    if (n > node_cap)
        throw capacity_error("subset scan capped at " + std::to_string(node_cap) + " nodes, got " +
                             std::to_string(n));
    if (n > 62) throw capacity_error("subset scan infeasible beyond 62 nodes");

    std::vector<std::uint64_t> adj(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) adj[static_cast<size_t>(v)] = g.neighbors(v);

    const ZGrid grid = build_grid(p, n, n);
    const long long total = 1LL << n;
    const long long chunk = 4096;
    const long long n_chunks = (total + chunk - 1) / chunk;

    std::vector<Candidate> chunk_best(static_cast<size_t>(n_chunks));
    std::atomic<double> floor{0.0}; // the empty set always achieves zero

    run_chunks(total, chunk, threads, [&](long long ci, long long begin, long long end) {
        std::vector<double> acc(static_cast<size_t>(grid.points));
        std::vector<int> ks(static_cast<size_t>(n) + 1), cs(static_cast<size_t>(n) + 1);
        std::vector<int> scratch(static_cast<size_t>(n) + 1, 0);
        Candidate local;
        for (long long mask = begin; mask < end; ++mask) {
            BestZ bz;
            if (mask == 0) {
                bz = BestZ{0.0, 0.0};
            } else {
                int nk = build_counts(adj, static_cast<std::uint64_t>(mask), ks.data(), cs.data(),
                                      scratch.data());
                double cap = 0.0;
                for (int i = 0; i < nk; ++i)
                    cap += cs[static_cast<size_t>(i)] *
                           grid.term_cap[static_cast<size_t>(ks[static_cast<size_t>(i)])];
                // strictly below the floor: cannot win or even tie, skip
                if (cap < floor.load(std::memory_order_relaxed)) continue;
                bz = refine_counts(ks.data(), cs.data(), nk, grid, acc.data());
            }
            Candidate cand{bz.profit, bz.z, static_cast<std::uint64_t>(mask)};
            if (better(cand, local)) local = cand;
        }
        chunk_best[static_cast<size_t>(ci)] = local;
        atomic_floor_raise(floor, local.profit);
    });

    Candidate overall;
    for (const Candidate& c : chunk_best)
        if (better(c, overall)) overall = c;

    OracleResult r;
    r.best_target = NodeSet(overall.mask);
    r.best_z = overall.z;
    r.best_profit = overall.profit;
    r.is_independent = is_independent_set(g, r.best_target);
    r.scanned = total;

    OptimalContract oc = optimal_contract(g, p);
    double reference = oc.trivial ? 0.0 : oc.profit;
    double scale = std::max(std::abs(reference), std::abs(r.best_profit));
    bool profits_agree = scale == 0.0 || std::abs(reference - r.best_profit) <= 1e-6 * scale;
    r.matches_theorem1 = profits_agree && r.is_independent && r.best_target.size() == oc.m;
    return r;
}

} // namespace netsale
