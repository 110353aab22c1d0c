#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "netsale/oracle.hpp"
#include "support/catalog.hpp"
#include "support/fixtures.hpp"

using namespace netsale;
using namespace testsupport;

namespace {

const ModelParams kDesk{0.1, 1.0};

// test-local reference: dense grid over z with no pruning and no shared code
struct GridBest {
    double z = 0.0;
    double profit = 0.0;
};

GridBest grid_best_z(const Network& g, NodeSet target, const ModelParams& p, int points) {
    std::vector<int> counts;
    for (int v : target.to_vector()) {
        int c = 0;
        for (int u : target.to_vector())
            if (u != v && g.adjacent(u, v)) ++c;
        counts.push_back(c);
    }
    double hi = std::sqrt(g.node_count() / p.gamma);
    GridBest best;
    for (int t = 0; t <= points; ++t) {
        double z = hi * t / points;
        double profit = -p.gamma * z;
        for (int m : counts)
            profit += 1.0 / (p.z0 + m * z) - 1.0 / (p.z0 + (m + 1) * z);
        if (profit > best.profit) best = {z, profit};
    }
    return best;
}

struct ScanBest {
    std::uint64_t mask = 0;
    double z = 0.0;
    double profit = 0.0;
};

ScanBest scan_everything(const Network& g, const ModelParams& p, int points) {
    ScanBest best;
    for (std::uint64_t s = 1; s <= g.all_nodes(); ++s) {
        GridBest b = grid_best_z(g, NodeSet{s}, p, points);
        if (b.profit > best.profit) best = {s, b.z, b.profit};
    }
    return best;
}

} // namespace

TEST_CASE("target profit arithmetic") {
    CHECK(target_profit(path(4), NodeSet{}, 2.5, kDesk) == doctest::Approx(-2.5).epsilon(1e-15));
    CHECK(target_profit(complete(2), NodeSet::of({0, 1}), 0.1, kDesk) ==
          doctest::Approx(2.0 * (1.0 / 0.2 - 1.0 / 0.3) - 0.1).epsilon(1e-13));
    CHECK(target_profit(complete(2), NodeSet::of({0, 1}), 0.1, kDesk) ==
          doctest::Approx(3.233333).epsilon(1e-6));
    double z = std::sqrt(2.0) - 0.1;
    CHECK(target_profit(path(4), NodeSet::of({0, 2}), z, kDesk) ==
          doctest::Approx(profit_closed_form(2, kDesk)).epsilon(1e-12));
    CHECK_THROWS_AS(target_profit(path(4), NodeSet::of({0}), -0.1, kDesk), domain_error);

    // matches a by-hand sum of marginal prices for arbitrary targets
    for (const Network& g : all_graphs(5))
        for (std::uint64_t t = 1; t <= g.all_nodes(); t += 3) {
            PurchaseCounts pc = purchase_counts(g, NodeSet{t});
            double want = -kDesk.gamma * 0.63;
            for (int v : NodeSet{t}.to_vector())
                want += marginal_price(pc.counts[static_cast<size_t>(v)], 0.63, kDesk);
            CHECK(target_profit(g, NodeSet{t}, 0.63, kDesk) ==
                  doctest::Approx(want).epsilon(1e-13));
        }
}

TEST_CASE("inner optimizer nails the closed form on independent targets") {
    BestZ one = best_z_for_target(Network(1), NodeSet::of({0}), kDesk);
    CHECK(one.z == doctest::Approx(0.9).epsilon(1e-6));
    CHECK(one.profit == doctest::Approx(8.1).epsilon(1e-9));

    BestZ p4 = best_z_for_target(path(4), NodeSet::of({0, 2}), kDesk);
    CHECK(p4.z == doctest::Approx(std::sqrt(2.0) - 0.1).epsilon(1e-6));
    CHECK(p4.profit == doctest::Approx(profit_closed_form(2, kDesk)).epsilon(1e-9));

    for (int n = 2; n <= 6; ++n)
        for (const Network& g : all_graphs(n))
            for (double z0 : {0.05, 0.1, 0.2}) {
                ModelParams p{z0, 1.0};
                NodeSet t = maximum_independent_set(g);
                BestZ b = best_z_for_target(g, t, p);
                double zstar = std::sqrt(double(t.size())) - z0;
                CHECK(b.z == doctest::Approx(zstar).epsilon(1e-6));
                CHECK(b.profit ==
                      doctest::Approx(profit_closed_form(t.size(), p)).epsilon(1e-9));
            }

    CHECK_THROWS_AS(best_z_for_target(path(4), NodeSet{}, kDesk), domain_error);
}

TEST_CASE("inner optimizer clamps at zero when the prior is too sharp") {
    BestZ b = best_z_for_target(Network(1), NodeSet::of({0}), ModelParams{2.0, 1.0});
    CHECK(b.z == 0.0);
    CHECK(b.profit == 0.0);
}

TEST_CASE("selling to both ends of an edge is dominated") {
    // non-independent target: optimizer must find the interior hump
    BestZ b = best_z_for_target(complete(2), NodeSet::of({0, 1}), kDesk);
    GridBest ref = grid_best_z(complete(2), NodeSet::of({0, 1}), kDesk, 2000000);
    CHECK(b.profit == doctest::Approx(ref.profit).epsilon(1e-9));
    CHECK(b.z == doctest::Approx(ref.z).epsilon(1e-4));
    CHECK(b.z == doctest::Approx(0.07).epsilon(0.05));
    CHECK(b.profit == doctest::Approx(3.36).epsilon(1e-2));
    CHECK(b.profit < profit_closed_form(1, kDesk));
}

TEST_CASE("exhaustive scan matches an independent dense-grid reference") {
    for (int n = 1; n <= 4; ++n)
        for (const Network& g : all_graphs(n)) {
            OracleResult r = brute_force_optimal(g, kDesk);
            ScanBest ref = scan_everything(g, kDesk, 400000);
            CHECK(r.best_profit == doctest::Approx(ref.profit).epsilon(2e-9));
            CHECK(r.best_target.bits == ref.mask);
            CHECK(r.scanned == (1ll << n));
        }
}

TEST_CASE("oracle certifies the solver on the stock examples") {
    OracleResult p4 = brute_force_optimal(path(4), kDesk);
    CHECK(p4.best_target == NodeSet::of({0, 2}));
    CHECK(p4.is_independent);
    CHECK(p4.matches_theorem1);
    CHECK(p4.best_profit == doctest::Approx(17.271573).epsilon(1e-6));
    CHECK(p4.scanned == 16);

    OracleResult k3 = brute_force_optimal(complete(3), kDesk);
    CHECK(k3.best_target == NodeSet::of({0}));
    CHECK(k3.best_profit == doctest::Approx(8.1).epsilon(1e-6));
    CHECK(k3.matches_theorem1);
    CHECK(k3.scanned == 8);
}

TEST_CASE("ties resolve to the smallest target mask") {
    Network two_edges(4); // {0,1} and {2,3}
    two_edges.add_edge(0, 1);
    two_edges.add_edge(2, 3);
    OracleResult r = brute_force_optimal(two_edges, kDesk);
    CHECK(r.best_target == NodeSet::of({0, 2}));
    CHECK(r.matches_theorem1);
}

TEST_CASE("certification holds across the connected catalog and parameter grid") {
    for (double z0 : {0.05, 0.1})
        for (double gamma : {1.0, 4.0}) {
            ModelParams p{z0, gamma};
            for (int n = 1; n <= 7; ++n) {
                REQUIRE(theorem1_precondition(p, n));
                for (const Network& g : connected_graphs(n)) {
                    OracleResult r = brute_force_optimal(g, p);
                    CHECK(r.matches_theorem1);
                    CHECK(r.is_independent);
                }
            }
        }
}

TEST_CASE("oracle profit never falls below the solver's, precondition or not") {
    for (double z0 : {0.05, 0.1, 0.3, 0.45}) {
        ModelParams p{z0, 1.0};
        for (int n = 1; n <= 5; ++n)
            for (const Network& g : all_graphs(n)) {
                OracleResult r = brute_force_optimal(g, p);
                OptimalContract c = optimal_contract(g, p);
                CHECK(r.best_profit >= c.profit - 1e-9);
                if (c.precondition_ok && !c.trivial)
                    CHECK(r.best_profit ==
                          doctest::Approx(c.profit).epsilon(1e-6));
            }
    }
}

TEST_CASE("beyond the precondition the report stays honest") {
    ModelParams p{0.35, 1.0};
    OracleResult r = brute_force_optimal(complete(2), p);
    CHECK(r.scanned == 4);
    CHECK_FALSE(optimal_contract(complete(2), p).precondition_ok);
    ScanBest ref = scan_everything(complete(2), p, 400000);
    CHECK(r.best_profit == doctest::Approx(ref.profit).epsilon(1e-9));
    CHECK(r.best_target.bits == ref.mask);
    bool agrees = std::abs(r.best_profit - optimal_contract(complete(2), p).profit) <=
                  1e-6 * std::max(std::abs(r.best_profit), 1.0);
    CHECK(r.matches_theorem1 == (agrees && r.is_independent &&
                                 r.best_target.size() == optimal_contract(complete(2), p).m));
}

TEST_CASE("scan is capped") {
    Network big(21);
    CHECK_THROWS_AS(brute_force_optimal(big, kDesk), capacity_error);
    CHECK_NOTHROW(brute_force_optimal(Network(3), kDesk, 3));
    CHECK_THROWS_AS(brute_force_optimal(Network(4), kDesk, 3), capacity_error);
    CHECK_THROWS_AS(brute_force_optimal(Network(4), kDesk, 0), domain_error);
}

TEST_CASE("thread count cannot change the answer") {
    for (int n : {5, 6, 7}) {
        Network g = random_graph(n, 0.4, 42 + n);
        OracleResult a = brute_force_optimal(g, kDesk, kOracleNodeCap, 1);
        for (int threads : {2, 4, 7}) {
            OracleResult b = brute_force_optimal(g, kDesk, kOracleNodeCap, threads);
            CHECK(a.best_target == b.best_target);
            CHECK(a.best_z == b.best_z);
            CHECK(a.best_profit == b.best_profit);
        }
    }
    Network g = random_graph(13, 0.3, 5);
    OracleResult a = brute_force_optimal(g, kDesk, kOracleNodeCap, 1);
    OracleResult b = brute_force_optimal(g, kDesk, kOracleNodeCap, 4);
    CHECK(a.best_target == b.best_target);
    CHECK(a.best_z == b.best_z);
    CHECK(a.best_profit == b.best_profit);
}
