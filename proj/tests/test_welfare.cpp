#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "netsale/welfare.hpp"
#include "support/catalog.hpp"
#include "support/fixtures.hpp"

using namespace netsale;
using namespace testsupport;

namespace {

const ModelParams kDesk{0.1, 1.0};

// independent FOC bisection, no shared code with the library
double bisect_efficient(const Network& g, const ModelParams& p) {
    auto foc = [&](double z) {
        double s = 0.0;
        for (int v = 0; v < g.node_count(); ++v) {
            double w = g.degree(v) + 1;
            s += w / ((p.z0 + w * z) * (p.z0 + w * z));
        }
        return s;
    };
    double lo = 0.0, hi = 1.0;
    while (foc(hi) > p.gamma) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (foc(mid) > p.gamma ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double free_rider_burden(const KVector& k, double z0, double z) {
    double s = 0.0;
    for (int ki : k) s += 1.0 / (z0 + ki * z);
    return s;
}

} // namespace

TEST_CASE("k-vectors count links into the target, sorted descending") {
    CHECK(k_vector(path(4), NodeSet::of({0, 2})) == KVector{2, 1});
    CHECK(k_vector(path(4), NodeSet::of({0, 3})) == KVector{1, 1});
    CHECK(k_vector(star(4), NodeSet::of({1, 2, 3})) == KVector{3});
    CHECK(k_vector(star(4), NodeSet::of({0})) == KVector{1, 1, 1});
    CHECK(k_vector(edgeless(3), NodeSet::of({1})) == KVector{0, 0});

    for (const Network& g : all_graphs(5))
        for (std::uint64_t t = 0; t <= g.all_nodes(); t += 5) {
            KVector k = k_vector(g, NodeSet{t});
            CHECK(int(k.size()) == g.node_count() - NodeSet{t}.size());
            CHECK(std::is_sorted(k.begin(), k.end(), std::greater<int>()));
            int total = 0, boundary = 0;
            for (int ki : k) total += ki;
            for (int v = 0; v < g.node_count(); ++v)
                if (!NodeSet{t}.contains(v))
                    boundary += std::popcount(g.neighbors(v) & t);
            CHECK(total == boundary);
        }
}

TEST_CASE("consumer surplus on the stock examples") {
    double z2 = std::sqrt(2.0) - 0.1;

    // a lone edge plus an isolated node versus a path: same profit, the
    // better-connected free rider makes consumers better off
    Network loose(3);
    loose.add_edge(0, 1);
    double cs_loose = consumer_surplus(loose, NodeSet::of({1, 2}), kDesk);
    double cs_path = consumer_surplus(path(3), NodeSet::of({0, 2}), kDesk);
    CHECK(cs_loose == doctest::Approx(-20.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(cs_path == doctest::Approx(-20.0 - 1.0 / (2.0 * std::sqrt(2.0) - 0.1)).epsilon(1e-12));
    CHECK(cs_loose < cs_path);

    CHECK(consumer_surplus(star(4), NodeSet::of({1, 2, 3}), kDesk) ==
          doctest::Approx(-30.0 - 1.0 / (3.0 * std::sqrt(3.0) - 0.2)).epsilon(1e-12));

    CHECK(consumer_surplus(path(4), NodeSet::of({0, 2}), kDesk) ==
          doctest::Approx(-20.0 - 1.0 / (2.0 * z2 + 0.1) - 1.0 / (z2 + 0.1)).epsilon(1e-12));
    CHECK(consumer_surplus(path(4), NodeSet::of({0, 2}), kDesk) -
              consumer_surplus(path(4), NodeSet::of({0, 3}), kDesk) ==
          doctest::Approx(1.0 / std::sqrt(2.0) - 1.0 / (2.0 * std::sqrt(2.0) - 0.1))
              .epsilon(1e-9));

    // non-maximum independent target is still priced consistently
    CHECK(consumer_surplus(path(4), NodeSet::of({0}), kDesk) ==
          doctest::Approx(-31.0).epsilon(1e-12));

    CHECK_THROWS_AS(consumer_surplus(path(4), NodeSet{}, kDesk), domain_error);
    CHECK_THROWS_AS(consumer_surplus(complete(2), NodeSet::of({0, 1}), kDesk), domain_error);
    CHECK_THROWS_AS(consumer_surplus(complete(2), NodeSet::of({0}), ModelParams{2.0, 1.0}),
                    domain_error);
}

TEST_CASE("target comparison follows dominance then spread") {
    using TO = TargetOrder;
    CHECK(compare_targets({2, 1}, {1, 1}) == TO::FirstWeaklyBetter);
    CHECK(compare_targets({1, 1}, {2, 1}) == TO::SecondWeaklyBetter);
    CHECK(compare_targets({2, 1}, {2, 1}) == TO::FirstWeaklyBetter);
    CHECK(compare_targets({2, 2}, {3, 1}) == TO::FirstWeaklyBetter);
    CHECK(compare_targets({3, 1}, {2, 2}) == TO::SecondWeaklyBetter);
    CHECK(compare_targets({2, 1, 0}, {1, 1, 1}) == TO::SecondWeaklyBetter);
    CHECK(compare_targets({3, 0}, {2, 2}) == TO::Incomparable);
    CHECK(compare_targets({1, 0, 2}, {2, 0, 1}) == TO::FirstWeaklyBetter); // sorted first
    CHECK_THROWS_AS(compare_targets({1, 2}, {1, 2, 3}), domain_error);
}

TEST_CASE("a weakly better verdict means higher free-rider utility everywhere") {
    for (int n = 2; n <= 6; ++n)
        for (const Network& g : all_graphs(n)) {
            std::vector<NodeSet> mis = scan_all_mis(g);
            for (size_t i = 0; i < mis.size(); ++i)
                for (size_t j = i + 1; j < mis.size(); ++j) {
                    KVector ki = k_vector(g, mis[i]);
                    KVector kj = k_vector(g, mis[j]);
                    TargetOrder o = compare_targets(ki, kj);
                    for (double z0 : {0.05, 0.1, 0.7})
                        for (double z : {0.2, 1.0, 4.0}) {
                            double bi = free_rider_burden(ki, z0, z);
                            double bj = free_rider_burden(kj, z0, z);
                            if (o == TargetOrder::FirstWeaklyBetter)
                                CHECK(bi <= bj + 1e-12);
                            if (o == TargetOrder::SecondWeaklyBetter)
                                CHECK(bj <= bi + 1e-12);
                        }
                    if (o == TargetOrder::FirstWeaklyBetter)
                        CHECK(consumer_surplus(g, mis[i], kDesk) >=
                              consumer_surplus(g, mis[j], kDesk) - 1e-12);
                }
        }
}

TEST_CASE("welfare report ties the pieces together") {
    WelfareReport r = welfare_report(path(4), NodeSet::of({0, 2}), kDesk);
    double z = std::sqrt(2.0) - 0.1;
    CHECK(r.target == NodeSet::of({0, 2}));
    CHECK(r.k == KVector{2, 1});
    CHECK(r.seller_profit == doctest::Approx(profit_closed_form(2, kDesk)).epsilon(1e-15));
    CHECK(r.social_welfare == doctest::Approx(r.consumer_surplus + r.seller_profit).epsilon(1e-15));
    REQUIRE(r.per_node_utilities.size() == 4);
    CHECK(r.per_node_utilities[0] == doctest::Approx(-10.0).epsilon(1e-15));
    CHECK(r.per_node_utilities[1] == doctest::Approx(-1.0 / (0.1 + 2 * z)).epsilon(1e-12));
    CHECK(r.per_node_utilities[2] == doctest::Approx(-10.0).epsilon(1e-15));
    CHECK(r.per_node_utilities[3] == doctest::Approx(-1.0 / (0.1 + z)).epsilon(1e-12));

    double total = 0.0;
    for (double u : r.per_node_utilities) total += u;
    // buyer utilities sum to consumer surplus: targeted buyers sit at the
    // outside option, everything else is free riding
    CHECK(total == doctest::Approx(r.consumer_surplus).epsilon(1e-12));
}

TEST_CASE("the consumer-preferred target is found and ties break low") {
    BestTargetResult best = best_target_for_consumers(path(4), kDesk);
    CHECK(best.report.target == NodeSet::of({0, 2}));
    CHECK_FALSE(best.truncated);
    double z2 = std::sqrt(2.0) - 0.1;
    CHECK(best.report.consumer_surplus ==
          doctest::Approx(-20.0 - 1.0 / (2.0 * z2 + 0.1) - 1.0 / (z2 + 0.1)).epsilon(1e-12));

    BestTargetResult capped = best_target_for_consumers(path(4), kDesk, 2);
    CHECK(capped.truncated);
    CHECK(capped.report.target == NodeSet::of({0, 2}));

    BestTargetResult lone = best_target_for_consumers(edgeless(3), kDesk);
    CHECK(lone.report.target == NodeSet{0b111});
    CHECK(lone.report.consumer_surplus == doctest::Approx(-30.0).epsilon(1e-12));

    CHECK_THROWS_AS(best_target_for_consumers(Network(1), ModelParams{2.0, 1.0}), domain_error);

    for (int n = 2; n <= 6; ++n)
        for (const Network& g : all_graphs(n)) {
            NodeSet want;
            double want_cs = 0.0;
            bool have = false;
            for (NodeSet t : scan_all_mis(g)) {
                double cs = consumer_surplus(g, t, kDesk);
                if (!have || cs > want_cs) {
                    have = true;
                    want = t;
                    want_cs = cs;
                }
            }
            BestTargetResult got = best_target_for_consumers(g, kDesk);
            CHECK(got.report.target == want);
            CHECK(got.report.consumer_surplus == doctest::Approx(want_cs).epsilon(1e-14));
            CHECK_FALSE(got.truncated);
        }
}

TEST_CASE("planner welfare arithmetic") {
    CHECK(social_welfare(path(4), 0.0, kDesk) == doctest::Approx(-40.0).epsilon(1e-14));
    double z = 1.2478;
    CHECK(social_welfare(path(4), z, kDesk) ==
          doctest::Approx(-2.0 / (0.1 + 2 * z) - 2.0 / (0.1 + 3 * z) - z).epsilon(1e-13));
    CHECK_THROWS_AS(social_welfare(path(4), -0.5, kDesk), domain_error);
}

TEST_CASE("efficient precision matches the closed forms") {
    for (double gamma : {1.0, 4.0}) {
        ModelParams p{0.1, gamma};
        for (int n = 3; n <= 12; ++n) {
            EfficiencyResult c = socially_efficient_precision(cycle(n), p);
            CHECK_FALSE(c.corner);
            CHECK(c.z_star ==
                  doctest::Approx(std::sqrt(n / (3.0 * gamma)) - 0.1 / 3.0).epsilon(1e-9));

            EfficiencyResult k = socially_efficient_precision(complete(n), p);
            CHECK_FALSE(k.corner);
            CHECK(k.z_star ==
                  doctest::Approx(1.0 / std::sqrt(gamma) - 0.1 / n).epsilon(1e-9));
        }
    }
}

TEST_CASE("efficient precision agrees with a reference bisection") {
    for (int n : {3, 5, 8, 12}) {
        Network g = random_graph(n, 0.4, 100 + n);
        for (double z0 : {0.05, 0.1, 0.4}) {
            ModelParams p{z0, 1.0};
            EfficiencyResult r = socially_efficient_precision(g, p);
            REQUIRE_FALSE(r.corner);
            CHECK(r.z_star == doctest::Approx(bisect_efficient(g, p)).epsilon(1e-9));

            // first-order condition holds at the reported point
            double foc = 0.0;
            for (int v = 0; v < g.node_count(); ++v) {
                double w = g.degree(v) + 1;
                foc += w / ((p.z0 + w * r.z_star) * (p.z0 + w * r.z_star));
            }
            CHECK(std::abs(foc - p.gamma) <= 1e-8 * p.gamma);

            // and it is a local maximum of the planner objective
            double at = social_welfare(g, r.z_star, p);
            CHECK(at >= social_welfare(g, r.z_star + 1e-4, p));
            CHECK(at >= social_welfare(g, std::max(0.0, r.z_star - 1e-4), p));
        }
    }
}

TEST_CASE("a sharp prior pushes the planner to the corner") {
    EfficiencyResult corner = socially_efficient_precision(Network(1), ModelParams{2.0, 1.0});
    CHECK(corner.corner);
    CHECK(corner.z_star == 0.0);

    EfficiencyResult boundary = socially_efficient_precision(Network(1), ModelParams{1.0, 1.0});
    CHECK(boundary.corner);

    EfficiencyResult interior = socially_efficient_precision(Network(1), ModelParams{0.5, 1.0});
    CHECK_FALSE(interior.corner);
    CHECK(interior.z_star == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("seller versus planner precision") {
    PrecisionGap p4 = precision_gap(path(4), kDesk);
    CHECK_FALSE(p4.clique_union);
    CHECK(p4.z_seller == doctest::Approx(std::sqrt(2.0) - 0.1).epsilon(1e-12));
    CHECK(p4.z_star ==
          doctest::Approx(socially_efficient_precision(path(4), kDesk).z_star).epsilon(1e-15));
    CHECK(p4.gap == doctest::Approx(p4.z_seller - p4.z_star).epsilon(1e-15));
    CHECK(p4.limit_z_star == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-12));
    CHECK(p4.limit_z_seller == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(p4.limit_z_star < p4.limit_z_seller);

    // once the prior is weak enough the seller overshoots the planner
    PrecisionGap sharp = precision_gap(path(4), ModelParams{1e-4, 1.0});
    CHECK(sharp.gap > 0.0);

    // on a clique the seller always undershoots, by exactly z0 (n-1)/n
    for (double z0 : {0.01, 0.1}) {
        PrecisionGap k3 = precision_gap(complete(3), ModelParams{z0, 1.0});
        CHECK(k3.clique_union);
        CHECK(k3.gap == doctest::Approx(-z0 * 2.0 / 3.0).epsilon(1e-9));
        CHECK(k3.limit_z_star == doctest::Approx(k3.limit_z_seller).epsilon(1e-12));
    }
}
