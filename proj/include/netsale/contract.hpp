#ifndef NETSALE_CONTRACT_HPP
#define NETSALE_CONTRACT_HPP

#include <utility>
#include <vector>

#include "netsale/graph.hpp"

namespace netsale {

// Environment parameters: z0 is the precision of the common prior, gamma the
// unit cost of signal precision. Both strictly positive.
struct ModelParams {
    double z0 = 0.1;
    double gamma = 1.0;
};

void check_params(const ModelParams& p);

// A uniform-quality offer: every targeted buyer gets a signal of precision z
// at a personal price. z = 0 together with an empty target is the null
// contract (the seller stays out of the market).
struct Contract {
    NodeSet target;
    double z = 0.0;
    std::vector<std::pair<int, double>> prices; // (node, price), ascending by node
};

// Throws when the contract is malformed: negative z or prices, prices not
// matching the target exactly, or z = 0 with a nonempty target (and vice
// versa).
void check_contract(const Network& g, const Contract& c);

// counts[i] = number of i's neighbours inside the target, for every node.
// For a targeted buyer this is how many bought signals it sees besides its
// own; for an outsider, how many it free-rides on.
struct PurchaseCounts {
    std::vector<int> counts;
};

PurchaseCounts purchase_counts(const Network& g, NodeSet target);

// What a buyer already seeing m neighbouring signals of precision z will pay
// for its own: 1/(z0 + m z) - 1/(z0 + (m+1) z). Decreasing in m, zero at
// z = 0.
double marginal_price(int m, double z, const ModelParams& p);

// Drop in posterior variance when buyer i adds its own signal to whatever
// its neighbours hold. precisions[j] is the signal precision node j owns
// (zero meaning no signal); entries must be nonnegative.
double willingness_to_pay(const Network& g, int i, const std::vector<double>& precisions,
                          const ModelParams& p);

// Prior-precision threshold below which targeting a maximum independent set
// is optimal. The default bound depends on the number of buyers; the uniform
// variant is the n-free bound z0 < 1/(4 sqrt(gamma)).
bool theorem1_precondition(const ModelParams& p, int n, bool uniform = false);

struct OptimalContract {
    Contract contract;
    int m = 0;                    // size of the targeted independent set
    double profit = 0.0;
    bool precondition_ok = false; // theorem1_precondition at this n
    bool trivial = false;         // market too small: null contract returned
};

// The profit-maximizing uniform contract: target the maximum independent set
// (smallest mask on ties), precision sqrt(m/gamma) - z0, and a price that
// extracts each targeted buyer's surplus. Falls back to the null contract
// when the precision would not be positive.
OptimalContract optimal_contract(const Network& g, const ModelParams& p,
                                 bool uniform_bound = false);

// Revenue minus the one-off cost gamma * z of building the database.
double seller_profit(const Network& g, const Contract& c, const ModelParams& p);

// Optimal profit when an independent set of size m >= 1 is targeted:
// m/z0 + gamma z0 - 2 sqrt(gamma m). Strictly increasing in m.
double profit_closed_form(int m, const ModelParams& p);

// For a non-independent target: true when the precision is high enough that
// dropping some buyer with many informed neighbours raises profit, i.e. the
// target cannot be optimal. Always false for independent targets.
bool prop1_removal_test(const Network& g, NodeSet target, double z, const ModelParams& p);

} // namespace netsale

#endif
