#ifndef NETSALE_EMIT_HPP
#define NETSALE_EMIT_HPP

#include <string>
#include <vector>

#include "netsale/contract.hpp"
#include "netsale/graph.hpp"
#include "netsale/interventions.hpp"
#include "netsale/oracle.hpp"
#include "netsale/simulate.hpp"
#include "netsale/welfare.hpp"

namespace netsale {

enum class EmitFormat { Json, Text };

// All floats are serialized with 9 significant digits, so identical inputs
// produce byte-identical documents on any platform.
std::string format_double(double x);

// One document per command, trailing newline included. Node ids are 1-based.
// Every document echoes z0 and gamma.
std::string emit_solve(const OptimalContract& oc, const ModelParams& p, EmitFormat f);
std::string emit_oracle(const OracleResult& r, const ModelParams& p, EmitFormat f);
std::string emit_mis(const Network& g, const MisEnumeration& e, const ModelParams& p,
                     EmitFormat f);
std::string emit_welfare(const BestTargetResult& r, const ModelParams& p, EmitFormat f);
std::string emit_efficient(const PrecisionGap& gap, const ModelParams& p, EmitFormat f);
std::string emit_simulate(const SimulationConfig& cfg, const std::vector<MseEstimate>& mse,
                          const std::vector<WtpEstimate>& wtp, EmitFormat f);
std::string emit_intervene(const std::vector<InterventionOutcome>& list, const ModelParams& p,
                           EmitFormat f);
std::string emit_pareto(const Network& g, const ParetoCertificate& c, const ModelParams& p,
                        EmitFormat f);

} // namespace netsale

#endif
