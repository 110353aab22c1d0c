#include "netsale/emit.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>

namespace netsale {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

namespace {

std::string num(double x) { return format_double(x); }
std::string boolean(bool b) { return b ? "true" : "false"; }

std::string node_array(NodeSet s) {
    std::string out = "[";
    bool first = true;
    for (int v : s.to_vector()) {
        if (!first) out += ',';
        first = false;
        out += std::to_string(v + 1);
    }
    return out + "]";
}

std::string node_list(NodeSet s) {
    if (s.empty()) return "-";
    std::string out;
    for (int v : s.to_vector()) {
        if (!out.empty()) out += ' ';
        out += std::to_string(v + 1);
    }
    return out;
}

using Rows = std::vector<std::vector<std::string>>;

// Columns padded to their widest cell, two spaces between columns.
std::string table(const Rows& rows) {
    std::vector<size_t> width;
    for (const auto& r : rows)
        for (size_t c = 0; c < r.size(); ++c) {
            if (width.size() <= c) width.resize(c + 1, 0);
            width[c] = std::max(width[c], r[c].size());
        }
    std::string out;
    for (const auto& r : rows) {
        for (size_t c = 0; c < r.size(); ++c) {
            if (c) out += "  ";
            out += r[c];
            if (c + 1 < r.size()) out.append(width[c] - r[c].size(), ' ');
        }
        out += '\n';
    }
    return out;
}

std::string params_json(const ModelParams& p) {
    return "\"z0\":" + num(p.z0) + ",\"gamma\":" + num(p.gamma);
}

void params_rows(Rows& rows, const ModelParams& p) {
    rows.push_back({"z0", num(p.z0)});
    rows.push_back({"gamma", num(p.gamma)});
}

} // namespace

std::string emit_solve(const OptimalContract& oc, const ModelParams& p, EmitFormat f) {
    const Contract& c = oc.contract;
    if (f == EmitFormat::Json) {
        std::string out = "{\"target\":" + node_array(c.target);
        out += ",\"m\":" + std::to_string(oc.m);
        out += ",\"z\":" + num(c.z);
        out += ",\"prices\":[";
        for (size_t i = 0; i < c.prices.size(); ++i) {
            if (i) out += ',';
            out += "{\"node\":" + std::to_string(c.prices[i].first + 1) +
                   ",\"price\":" + num(c.prices[i].second) + "}";
        }
        out += "],\"profit\":" + num(oc.profit);
        out += ",\"precondition_ok\":" + boolean(oc.precondition_ok);
        out += ",\"trivial\":" + boolean(oc.trivial);
        out += "," + params_json(p) + "}\n";
        return out;
    }
    Rows rows{{"target", node_list(c.target)},
              {"m", std::to_string(oc.m)},
              {"z", num(c.z)},
              {"profit", num(oc.profit)},
              {"precondition_ok", boolean(oc.precondition_ok)},
              {"trivial", boolean(oc.trivial)}};
    params_rows(rows, p);
    std::string out = table(rows);
    if (!c.prices.empty()) {
        Rows price_rows{{"node", "price"}};
        for (auto [node, price] : c.prices)
            price_rows.push_back({std::to_string(node + 1), num(price)});
        out += "\n" + table(price_rows);
    }
    return out;
}

std::string emit_oracle(const OracleResult& r, const ModelParams& p, EmitFormat f) {
    if (f == EmitFormat::Json) {
        std::string out = "{\"best_target\":" + node_array(r.best_target);
        out += ",\"best_z\":" + num(r.best_z);
        out += ",\"best_profit\":" + num(r.best_profit);
        out += ",\"is_independent\":" + boolean(r.is_independent);
        out += ",\"matches_theorem1\":" + boolean(r.matches_theorem1);
        out += ",\"scanned\":" + std::to_string(r.scanned);
        out += "," + params_json(p) + "}\n";
        return out;
    }
    Rows rows{{"best_target", node_list(r.best_target)},
              {"best_z", num(r.best_z)},
              {"best_profit", num(r.best_profit)},
              {"is_independent", boolean(r.is_independent)},
              {"matches_theorem1", boolean(r.matches_theorem1)},
              {"scanned", std::to_string(r.scanned)}};
    params_rows(rows, p);
    return table(rows);
}

std::string emit_mis(const Network& g, const MisEnumeration& e, const ModelParams& p,
                     EmitFormat f) {
    int alpha = e.sets.empty() ? independence_number(g) : e.sets.front().size();
    double cw = caro_wei_bound(g);
    if (f == EmitFormat::Json) {
        std::string out = "{\"alpha\":" + std::to_string(alpha);
        out += ",\"caro_wei\":" + num(cw);
        out += ",\"count\":" + std::to_string(e.sets.size());
        out += ",\"truncated\":" + boolean(e.truncated);
        out += ",\"sets\":[";
        for (size_t i = 0; i < e.sets.size(); ++i) {
            if (i) out += ',';
            out += node_array(e.sets[i]);
        }
        out += "]," + params_json(p) + "}\n";
        return out;
    }
    Rows rows{{"alpha", std::to_string(alpha)},
              {"caro_wei", num(cw)},
              {"count", std::to_string(e.sets.size())},
              {"truncated", boolean(e.truncated)}};
    params_rows(rows, p);
    std::string out = table(rows);
    out += "\nsets\n";
    for (NodeSet s : e.sets) out += node_list(s) + "\n";
    return out;
}

std::string emit_welfare(const BestTargetResult& r, const ModelParams& p, EmitFormat f) {
    const WelfareReport& w = r.report;
    if (f == EmitFormat::Json) {
        std::string out = "{\"target\":" + node_array(w.target);
        out += ",\"consumer_surplus\":" + num(w.consumer_surplus);
        out += ",\"seller_profit\":" + num(w.seller_profit);
        out += ",\"social_welfare\":" + num(w.social_welfare);
        out += ",\"k_vector\":[";
        for (size_t i = 0; i < w.k.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(w.k[i]);
        }
        out += "],\"per_node\":[";
        for (size_t i = 0; i < w.per_node_utilities.size(); ++i) {
            if (i) out += ',';
            out += "{\"node\":" + std::to_string(i + 1) +
                   ",\"utility\":" + num(w.per_node_utilities[i]) + "}";
        }
        out += "],\"truncated\":" + boolean(r.truncated);
        out += "," + params_json(p) + "}\n";
        return out;
    }
    std::string kv;
    for (size_t i = 0; i < w.k.size(); ++i) {
        if (i) kv += ' ';
        kv += std::to_string(w.k[i]);
    }
    Rows rows{{"target", node_list(w.target)},
              {"consumer_surplus", num(w.consumer_surplus)},
              {"seller_profit", num(w.seller_profit)},
              {"social_welfare", num(w.social_welfare)},
              {"k_vector", kv.empty() ? "-" : kv},
              {"truncated", boolean(r.truncated)}};
    params_rows(rows, p);
    std::string out = table(rows);
    Rows util_rows{{"node", "utility"}};
    for (size_t i = 0; i < w.per_node_utilities.size(); ++i)
        util_rows.push_back({std::to_string(i + 1), num(w.per_node_utilities[i])});
    return out + "\n" + table(util_rows);
}

std::string emit_efficient(const PrecisionGap& gap, const ModelParams& p, EmitFormat f) {
    if (f == EmitFormat::Json) {
        std::string out = "{\"z_star\":" + num(gap.z_star);
        out += ",\"z_seller\":" + num(gap.z_seller);
        out += ",\"gap\":" + num(gap.gap);
        out += ",\"clique_union\":" + boolean(gap.clique_union);
        out += ",\"limits\":{\"z_star\":" + num(gap.limit_z_star) +
               ",\"z_seller\":" + num(gap.limit_z_seller) + "}";
        out += ",\"corner\":" + boolean(gap.corner);
        out += "," + params_json(p) + "}\n";
        return out;
    }
    Rows rows{{"z_star", num(gap.z_star)},
              {"z_seller", num(gap.z_seller)},
              {"gap", num(gap.gap)},
              {"clique_union", boolean(gap.clique_union)},
              {"limit_z_star", num(gap.limit_z_star)},
              {"limit_z_seller", num(gap.limit_z_seller)},
              {"corner", boolean(gap.corner)}};
    params_rows(rows, p);
    return table(rows);
}

std::string emit_simulate(const SimulationConfig& cfg, const std::vector<MseEstimate>& mse,
                          const std::vector<WtpEstimate>& wtp, EmitFormat f) {
    if (f == EmitFormat::Json) {
        std::string out = "{\"seed\":" + std::to_string(cfg.seed);
        out += ",\"samples\":" + std::to_string(cfg.samples);
        out += ",\"method\":\"" + std::string(kSamplingMethod) + "\"";
        out += ",\"target\":" + node_array(cfg.contract.target);
        out += ",\"z\":" + num(cfg.contract.z);
        out += ",\"nodes\":[";
        for (size_t i = 0; i < mse.size(); ++i) {
            if (i) out += ',';
            out += "{\"node\":" + std::to_string(mse[i].node + 1);
            out += ",\"mse\":" + num(mse[i].mse);
            out += ",\"se\":" + num(mse[i].se);
            out += ",\"theory\":" + num(mse[i].theory);
            out += ",\"z_score\":" + num(mse[i].z_score) + "}";
        }
        out += "],\"wtp\":[";
        for (size_t i = 0; i < wtp.size(); ++i) {
            if (i) out += ',';
            out += "{\"node\":" + std::to_string(wtp[i].node + 1);
            out += ",\"estimate\":" + num(wtp[i].estimate);
            out += ",\"se\":" + num(wtp[i].se);
            out += ",\"theory\":" + num(wtp[i].theory);
            out += ",\"z_score\":" + num(wtp[i].z_score) + "}";
        }
        out += "]," + params_json(cfg.params) + "}\n";
        return out;
    }
    Rows rows{{"seed", std::to_string(cfg.seed)},
              {"samples", std::to_string(cfg.samples)},
              {"method", kSamplingMethod},
              {"target", node_list(cfg.contract.target)},
              {"z", num(cfg.contract.z)}};
    params_rows(rows, cfg.params);
    std::string out = table(rows);
    Rows mse_rows{{"node", "mse", "se", "theory", "z_score"}};
    for (const auto& m : mse)
        mse_rows.push_back(
            {std::to_string(m.node + 1), num(m.mse), num(m.se), num(m.theory), num(m.z_score)});
    out += "\n" + table(mse_rows);
    if (!wtp.empty()) {
        Rows wtp_rows{{"node", "wtp", "se", "theory", "z_score"}};
        for (const auto& w : wtp)
            wtp_rows.push_back({std::to_string(w.node + 1), num(w.estimate), num(w.se),
                                num(w.theory), num(w.z_score)});
        out += "\n" + table(wtp_rows);
    }
    return out;
}

std::string emit_intervene(const std::vector<InterventionOutcome>& list, const ModelParams& p,
                           EmitFormat f) {
    if (f == EmitFormat::Json) {
        std::string out = "{" + params_json(p) + ",\"interventions\":[";
        for (size_t i = 0; i < list.size(); ++i) {
            const auto& o = list[i];
            if (i) out += ',';
            if (o.kind == InterventionKind::RemoveLink) {
                out += "{\"kind\":\"remove-link\",\"edge\":[" + std::to_string(o.u + 1) + "," +
                       std::to_string(o.v + 1) + "]";
            } else {
                out += "{\"kind\":\"isolate-node\",\"node\":" + std::to_string(o.node + 1);
            }
            out += ",\"alpha_before\":" + std::to_string(o.alpha_before);
            out += ",\"alpha_after\":" + std::to_string(o.alpha_after);
            out += ",\"profit_delta\":" + num(o.profit_delta);
            out += ",\"cs_delta\":" + num(o.cs_delta) + "}";
        }
        out += "]}\n";
        return out;
    }
    Rows rows;
    params_rows(rows, p);
    std::string out = table(rows);
    Rows body{{"kind", "where", "alpha_before", "alpha_after", "profit_delta", "cs_delta"}};
    for (const auto& o : list) {
        bool link = o.kind == InterventionKind::RemoveLink;
        std::string where = link ? std::to_string(o.u + 1) + " " + std::to_string(o.v + 1)
                                 : std::to_string(o.node + 1);
        body.push_back({link ? "remove-link" : "isolate-node", where,
                        std::to_string(o.alpha_before), std::to_string(o.alpha_after),
                        num(o.profit_delta), num(o.cs_delta)});
    }
    return out + "\n" + table(body);
}

std::string emit_pareto(const Network& g, const ParetoCertificate& c, const ModelParams& p,
                        EmitFormat f) {
    if (f == EmitFormat::Json) {
        std::string out = "{\"core_periphery\":" + boolean(c.core_periphery);
        out += ",\"core\":" + node_array(c.core);
        out += ",\"periphery\":" + node_array(c.periphery);
        out += ",\"m\":" + std::to_string(c.m);
        out += ",\"free_riders\":[";
        for (size_t i = 0; i < c.free_rider_utilities.size(); ++i) {
            if (i) out += ',';
            auto [node, utility] = c.free_rider_utilities[i];
            int mi = std::popcount(g.neighbors(node) & c.periphery.bits);
            out += "{\"node\":" + std::to_string(node + 1) + ",\"m_i\":" + std::to_string(mi) +
                   ",\"utility\":" + num(utility) + "}";
        }
        out += "]," + params_json(p) + "}\n";
        return out;
    }
    Rows rows{{"core_periphery", boolean(c.core_periphery)},
              {"core", node_list(c.core)},
              {"periphery", node_list(c.periphery)},
              {"m", std::to_string(c.m)}};
    params_rows(rows, p);
    std::string out = table(rows);
    if (!c.free_rider_utilities.empty()) {
        Rows body{{"node", "m_i", "utility"}};
        for (auto [node, utility] : c.free_rider_utilities) {
            int mi = std::popcount(g.neighbors(node) & c.periphery.bits);
            body.push_back({std::to_string(node + 1), std::to_string(mi), num(utility)});
        }
        out += "\n" + table(body);
    }
    return out;
}

} // namespace netsale
