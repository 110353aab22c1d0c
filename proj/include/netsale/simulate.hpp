#ifndef NETSALE_SIMULATE_HPP
#define NETSALE_SIMULATE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "netsale/contract.hpp"
#include "netsale/graph.hpp"

namespace netsale {

// Counter-based sampling: every variate is a pure function of
// (seed, sample index, node, role), so runs are reproducible regardless of
// how samples are split across threads, and paired experiments reuse the
// same draws.
namespace rng {

std::uint64_t substream(std::uint64_t seed, std::uint64_t sample, std::uint32_t node,
                        std::uint32_t role);

// in (0, 1), both ends excluded
double uniform01(std::uint64_t h);

// Standard normal quantile: Acklam's rational approximation polished with
// one Halley step through erfc, good to full double precision.
double normal_quantile(double p);

inline constexpr std::uint32_t kRoleState = 1; // the unknown being estimated
inline constexpr std::uint32_t kRoleNoise = 2; // per-node observation noise

double standard_normal(std::uint64_t seed, std::uint64_t sample, std::uint32_t node,
                       std::uint32_t role);

} // namespace rng

inline constexpr const char* kSamplingMethod = "inverse-cdf";
inline constexpr long long kSampleChunk = 65536;

// How buyer i weighs the signals it sees (its own plus neighbours', skipping
// nodes without a signal): weight_j = z_j / (z0 + sum of seen precisions).
// Pairs are (node, weight), ascending by node.
std::vector<std::pair<int, double>> posterior_weights(const Network& g, int i,
                                                      const std::vector<double>& precisions,
                                                      double z0);

struct SimulationConfig {
    long long samples = 100000;
    std::uint64_t seed = 1;
    Contract contract;
    ModelParams params;
};

struct MseEstimate {
    int node = 0;
    double mse = 0.0;
    double se = 0.0;
    double theory = 0.0; // posterior variance 1/(z0 + seen precision)
    double z_score = 0.0;
};

// Draws the state and all signals per sample, forms each buyer's estimate,
// and reports empirical squared errors against the closed form. Identical
// seeds give bit-identical output for any thread count.
std::vector<MseEstimate> monte_carlo_mse(const Network& g, const SimulationConfig& cfg,
                                         int threads = 0);

struct WtpEstimate {
    int node = 0;
    double estimate = 0.0;
    double se = 0.0;
    double theory = 0.0;
    double z_score = 0.0;
};

// Paired-sample estimate of what a targeted buyer's own signal is worth: the
// squared-error gap between dropping and keeping it, on common draws.
WtpEstimate monte_carlo_wtp(const Network& g, int node, const SimulationConfig& cfg,
                            int threads = 0);

} // namespace netsale

#endif
