#include "netsale/simulate.hpp"

#include <bit>
#include <cmath>

#include "netsale/numeric.hpp"
#include "netsale/parallel.hpp"

namespace netsale {

namespace rng {

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t substream(std::uint64_t seed, std::uint64_t sample, std::uint32_t node,
                        std::uint32_t role) {
    std::uint64_t h = mix(seed ^ 0x243F6A8885A308D3ull);
    h = mix(h ^ sample);
    h = mix(h ^ ((std::uint64_t(node) << 32) | role));
    return h;
}

double uniform01(std::uint64_t h) { return (double(h >> 11) + 0.5) * 0x1.0p-53; }

double normal_quantile(double p) {
    // rational pieces from Acklam's quantile approximation
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;

    double x;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // one Halley step against the exact CDF
    static const double sqrt2pi = 2.5066282746310005;
    double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    double u = e * sqrt2pi * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double standard_normal(std::uint64_t seed, std::uint64_t sample, std::uint32_t node,
                       std::uint32_t role) {
    return normal_quantile(uniform01(substream(seed, sample, node, role)));
}

} // namespace rng

std::vector<std::pair<int, double>> posterior_weights(const Network& g, int i,
                                                      const std::vector<double>& precisions,
                                                      double z0) {
    if (!(z0 > 0.0)) throw domain_error("z0 must be positive");
    if (i < 0 || i >= g.node_count()) throw domain_error("buyer out of range");
    if (static_cast<int>(precisions.size()) != g.node_count())
        throw domain_error("need one precision per node");
    for (double z : precisions)
        if (z < 0.0) throw domain_error("precision cannot be negative");

    std::vector<int> seen;
    NeumaierSum total;
    std::uint64_t mask = g.closed_neighbors(i);
    while (mask) {
        int j = std::countr_zero(mask);
        mask &= mask - 1;
        if (precisions[static_cast<size_t>(j)] > 0.0) {
            seen.push_back(j);
            total.add(precisions[static_cast<size_t>(j)]);
        }
    }
    std::vector<std::pair<int, double>> w;
    w.reserve(seen.size());
    double den = z0 + total.total();
    for (int j : seen) w.emplace_back(j, precisions[static_cast<size_t>(j)] / den);
    return w;
}

namespace {

std::vector<double> contract_precisions(const Network& g, const Contract& c) {
    std::vector<double> z(static_cast<size_t>(g.node_count()), 0.0);
    for (int v : c.target.to_vector()) z[static_cast<size_t>(v)] = c.z;
    return z;
}

double theory_variance(const std::vector<std::pair<int, double>>& weights,
                       const std::vector<double>& precisions, double z0) {
    NeumaierSum seen;
    for (auto [j, w] : weights) seen.add(precisions[static_cast<size_t>(j)]);
    return 1.0 / (z0 + seen.total());
}

struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

// per-sample estimation errors for a predecided set of estimators, combined
// chunk by chunk in index order so scheduling cannot change the result;
// `scratch` is per-chunk workspace so samplers stay thread-safe
template <typename PerSample>
std::vector<Moments> accumulate_chunked(long long samples, int threads, int n_stats,
                                        size_t scratch_size, const PerSample& per_sample) {
    const long long n_chunks = (samples + kSampleChunk - 1) / kSampleChunk;
    std::vector<std::vector<Moments>> partial(static_cast<size_t>(n_chunks));

    run_chunks(samples, kSampleChunk, threads, [&](long long ci, long long begin, long long end) {
        std::vector<NeumaierSum> sums(static_cast<size_t>(n_stats));
        std::vector<NeumaierSum> squares(static_cast<size_t>(n_stats));
        std::vector<double> errs(static_cast<size_t>(n_stats));
        std::vector<double> scratch(scratch_size);
        for (long long s = begin; s < end; ++s) {
            per_sample(static_cast<std::uint64_t>(s), errs.data(), scratch.data());
            for (int k = 0; k < n_stats; ++k) {
                sums[static_cast<size_t>(k)].add(errs[static_cast<size_t>(k)]);
                squares[static_cast<size_t>(k)].add(errs[static_cast<size_t>(k)] *
                                                    errs[static_cast<size_t>(k)]);
            }
        }
        std::vector<Moments> m(static_cast<size_t>(n_stats));
        for (int k = 0; k < n_stats; ++k)
            m[static_cast<size_t>(k)] = {sums[static_cast<size_t>(k)].total(),
                                         squares[static_cast<size_t>(k)].total()};
        partial[static_cast<size_t>(ci)] = std::move(m);
    });

    std::vector<Moments> totals(static_cast<size_t>(n_stats));
    for (const auto& m : partial)
        for (int k = 0; k < n_stats; ++k) {
            totals[static_cast<size_t>(k)].sum += m[static_cast<size_t>(k)].sum;
            totals[static_cast<size_t>(k)].sum_sq += m[static_cast<size_t>(k)].sum_sq;
        }
    return totals;
}

void finish_estimate(const Moments& m, long long samples, double theory, double& mean, double& se,
                     double& z_score) {
    mean = m.sum / samples;
    if (samples > 1) {
        double var = (m.sum_sq - m.sum * m.sum / samples) / (samples - 1);
        se = std::sqrt(std::max(0.0, var) / samples);
    } else {
        se = 0.0;
    }
    z_score = se > 0.0 ? (mean - theory) / se : 0.0;
}

void check_config(const Network& g, const SimulationConfig& cfg) {
    check_params(cfg.params);
    check_contract(g, cfg.contract);
    if (cfg.samples < 1) throw domain_error("need at least one sample");
}

} // namespace

std::vector<MseEstimate> monte_carlo_mse(const Network& g, const SimulationConfig& cfg,
                                         int threads) {
    check_config(g, cfg);
    const int n = g.node_count();
    const double z0 = cfg.params.z0;
    const std::vector<double> precisions = contract_precisions(g, cfg.contract);
    const std::vector<int> signal_nodes = cfg.contract.target.to_vector();
    const double noise_sd = cfg.contract.z > 0.0 ? 1.0 / std::sqrt(cfg.contract.z) : 0.0;
    const double state_sd = 1.0 / std::sqrt(z0);

    std::vector<std::vector<std::pair<int, double>>> weights(static_cast<size_t>(n));
    std::vector<double> theory(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        weights[static_cast<size_t>(v)] = posterior_weights(g, v, precisions, z0);
        theory[static_cast<size_t>(v)] = theory_variance(weights[static_cast<size_t>(v)],
                                                         precisions, z0);
    }

    auto per_sample = [&](std::uint64_t s, double* errs, double* signal) {
        double theta = state_sd * rng::standard_normal(cfg.seed, s, 0, rng::kRoleState);
        for (int j : signal_nodes)
            signal[j] = theta + noise_sd * rng::standard_normal(
                                    cfg.seed, s, static_cast<std::uint32_t>(j), rng::kRoleNoise);
        for (int v = 0; v < n; ++v) {
            double a = 0.0;
            for (auto [j, w] : weights[static_cast<size_t>(v)]) a += w * signal[j];
            double err = a - theta;
            errs[v] = err * err;
        }
    };

    std::vector<Moments> m =
        accumulate_chunked(cfg.samples, threads, n, static_cast<size_t>(n), per_sample);
    std::vector<MseEstimate> out(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        MseEstimate& e = out[static_cast<size_t>(v)];
        e.node = v;
        e.theory = theory[static_cast<size_t>(v)];
        finish_estimate(m[static_cast<size_t>(v)], cfg.samples, e.theory, e.mse, e.se, e.z_score);
    }
    return out;
}

WtpEstimate monte_carlo_wtp(const Network& g, int node, const SimulationConfig& cfg, int threads) {
    check_config(g, cfg);
    if (node < 0 || node >= g.node_count()) throw domain_error("buyer out of range");
    if (!cfg.contract.target.contains(node))
        throw domain_error("willingness to pay is estimated for targeted buyers");

    const double z0 = cfg.params.z0;
    const std::vector<double> precisions = contract_precisions(g, cfg.contract);
    std::vector<double> without_own = precisions;
    without_own[static_cast<size_t>(node)] = 0.0;

    const auto w_with = posterior_weights(g, node, precisions, z0);
    const auto w_without = posterior_weights(g, node, without_own, z0);

    std::vector<int> signal_nodes = cfg.contract.target.to_vector();
    const double noise_sd = cfg.contract.z > 0.0 ? 1.0 / std::sqrt(cfg.contract.z) : 0.0;
    const double state_sd = 1.0 / std::sqrt(z0);

    auto per_sample = [&](std::uint64_t s, double* errs, double* signal) {
        double theta = state_sd * rng::standard_normal(cfg.seed, s, 0, rng::kRoleState);
        for (int j : signal_nodes)
            signal[j] = theta + noise_sd * rng::standard_normal(
                                    cfg.seed, s, static_cast<std::uint32_t>(j), rng::kRoleNoise);
        double a_with = 0.0, a_without = 0.0;
        for (auto [j, w] : w_with) a_with += w * signal[j];
        for (auto [j, w] : w_without) a_without += w * signal[j];
        double e_with = a_with - theta, e_without = a_without - theta;
        errs[0] = e_without * e_without - e_with * e_with;
    };

    std::vector<Moments> m = accumulate_chunked(cfg.samples, threads, 1,
                                                static_cast<size_t>(g.node_count()), per_sample);
    WtpEstimate e;
    e.node = node;
    e.theory = willingness_to_pay(g, node, precisions, cfg.params);
    finish_estimate(m[0], cfg.samples, e.theory, e.estimate, e.se, e.z_score);
    return e;
}

} // namespace netsale
