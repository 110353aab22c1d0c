#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "netsale/emit.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw netsale::parse_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

int main(int argc, char** argv) {
    using namespace netsale;

    CLI::App app{"Optimal sale of information to buyers who share signals over a network"};
    app.require_subcommand(1);

    std::string graph_path;
    double z0 = 0.1;
    double gamma = 1.0;
    std::string format = "json";
    std::uint64_t seed = 1;
    long long samples = 100000;
    long long cap = 100000;
    bool uniform_bound = false;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"solve", "profit-maximizing contract"},
        {"oracle", "exhaustive scan certifying the solver"},
        {"mis", "maximum independent sets and the Caro-Wei bound"},
        {"welfare", "consumer-best target and welfare report"},
        {"efficient", "socially efficient precision and the seller's gap"},
        {"simulate", "Monte Carlo check of posterior accuracy and willingness to pay"},
        {"intervene", "rank single link removals and node isolations"},
        {"pareto", "core-periphery efficiency certificate"},
    };
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--graph", graph_path, "graph file, edge list or JSON")->required();
        sub->add_option("--z0", z0, "prior precision (default 0.1)");
        sub->add_option("--gamma", gamma, "unit cost of precision (default 1)");
        sub->add_option("--format", format, "json or text")
            ->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--seed", seed, "simulation seed (default 1)");
        sub->add_option("--samples", samples, "simulation sample count (default 100000)");
        sub->add_option("--cap", cap, "enumeration / ranking cap (default 100000)");
        sub->add_flag("--uniform-bound", uniform_bound, "use the n-free precondition bound");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        ModelParams params{z0, gamma};
        check_params(params);
        if (samples < 1) throw domain_error("samples must be at least 1");
        if (cap < 1) throw domain_error("cap must be at least 1");
        EmitFormat fmt = format == "text" ? EmitFormat::Text : EmitFormat::Json;
        Network g = parse_network_auto(read_file(graph_path));

        if (app.got_subcommand("solve")) {
            std::cout << emit_solve(optimal_contract(g, params, uniform_bound), params, fmt);
        } else if (app.got_subcommand("oracle")) {
            std::cout << emit_oracle(brute_force_optimal(g, params), params, fmt);
        } else if (app.got_subcommand("mis")) {
            std::cout << emit_mis(g, enumerate_maximum_independent_sets(g, cap), params, fmt);
        } else if (app.got_subcommand("welfare")) {
            std::cout << emit_welfare(best_target_for_consumers(g, params, cap), params, fmt);
        } else if (app.got_subcommand("efficient")) {
            std::cout << emit_efficient(precision_gap(g, params), params, fmt);
        } else if (app.got_subcommand("simulate")) {
            OptimalContract oc = optimal_contract(g, params, uniform_bound);
            SimulationConfig cfg;
            cfg.samples = samples;
            cfg.seed = seed;
            cfg.contract = oc.contract;
            cfg.params = params;
            std::vector<MseEstimate> mse = monte_carlo_mse(g, cfg);
            std::vector<WtpEstimate> wtp;
            for (int v : oc.contract.target.to_vector())
                wtp.push_back(monte_carlo_wtp(g, v, cfg));
            std::cout << emit_simulate(cfg, mse, wtp, fmt);
        } else if (app.got_subcommand("intervene")) {
            int budget = static_cast<int>(
                std::min<long long>(cap, std::numeric_limits<int>::max()));
            std::cout << emit_intervene(scan_interventions(g, params, budget), params, fmt);
        } else if (app.got_subcommand("pareto")) {
            std::cout << emit_pareto(g, pareto_efficient_check(g, params), params, fmt);
        }
        return 0;
    } catch (const capacity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
