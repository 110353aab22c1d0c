#include "netsale/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <json.hpp>

namespace netsale {

std::vector<std::pair<int, int>> Network::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u) {
        std::uint64_t above = adj_[static_cast<size_t>(u)] >> (u + 1);
        while (above) {
            int v = u + 1 + std::countr_zero(above);
            out.emplace_back(u, v);
            above &= above - 1;
        }
    }
    return out;
}

Network Network::without_edge(int u, int v) const {
    if (!adjacent(u, v))
        throw domain_error("no edge between " + std::to_string(u + 1) + " and " +
                           std::to_string(v + 1));
    Network g = *this;
    g.adj_[static_cast<size_t>(u)] &= ~bit(v);
    g.adj_[static_cast<size_t>(v)] &= ~bit(u);
    return g;
}

Network Network::without_node_edges(int v) const {
    check_node(v);
    Network g = *this;
    for (int u = 0; u < n_; ++u) g.adj_[static_cast<size_t>(u)] &= ~bit(v);
    g.adj_[static_cast<size_t>(v)] = 0;
    return g;
}

DegreeProfile degree_profile(const Network& g) {
    DegreeProfile p;
    p.degrees.reserve(static_cast<size_t>(g.node_count()));
    for (int v = 0; v < g.node_count(); ++v) p.degrees.push_back(g.degree(v));
    return p;
}

// ---------------------------------------------------------------------------
// Parsing and emission

namespace {

int parse_int_token(std::string_view tok, int line_no, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw parse_error("line " + std::to_string(line_no) + ": bad " + what + " '" +
                          std::string(tok) + "'");
    return value;
}

Network build_network(int n, const std::vector<std::pair<int, int>>& edges_1based,
                      const char* context) {
    if (n < 1) throw parse_error(std::string(context) + ": node count must be at least 1");
    Network g(n);
    int idx = 0;
    for (auto [u, v] : edges_1based) {
        ++idx;
        if (u < 1 || u > n || v < 1 || v > n)
            throw parse_error(std::string(context) + ": edge " + std::to_string(idx) + " (" +
                              std::to_string(u) + ", " + std::to_string(v) +
                              ") out of range 1.." + std::to_string(n));
        if (u == v)
            throw parse_error(std::string(context) + ": edge " + std::to_string(idx) +
                              " is a self-loop at node " + std::to_string(u));
        g.add_edge(u - 1, v - 1); // dedup is free: adjacency is a bitmask
    }
    return g;
}

Network parse_edge_list(std::string_view source) {
    std::vector<std::pair<int, int>> edges;
    int header_n = -1;
    int max_id = 0;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= source.size()) {
        size_t eol = source.find('\n', pos);
        std::string_view line =
            source.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? source.size() + 1 : eol + 1;
        ++line_no;

        if (size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);

        std::vector<std::string_view> toks;
        size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
            if (i > start) toks.push_back(line.substr(start, i - start));
        }
        if (toks.empty()) continue;

        if (toks[0] == "n") {
            if (header_n != -1 || !edges.empty())
                throw parse_error("line " + std::to_string(line_no) +
                                  ": header must come first");
            if (toks.size() != 2)
                throw parse_error("line " + std::to_string(line_no) + ": header wants 'n <count>'");
            header_n = parse_int_token(toks[1], line_no, "node count");
            if (header_n < 1)
                throw parse_error("line " + std::to_string(line_no) +
                                  ": node count must be at least 1");
            continue;
        }

        if (toks.size() != 2)
            throw parse_error("line " + std::to_string(line_no) +
                              ": expected 'u v', got " + std::to_string(toks.size()) + " tokens");
        int u = parse_int_token(toks[0], line_no, "node id");
        int v = parse_int_token(toks[1], line_no, "node id");
        if (u < 1 || v < 1)
            throw parse_error("line " + std::to_string(line_no) + ": node ids start at 1");
        if (u == v)
            throw parse_error("line " + std::to_string(line_no) + ": self-loop at node " +
                              std::to_string(u));
        max_id = std::max({max_id, u, v});
        edges.emplace_back(u, v);
    }

    int n = header_n != -1 ? header_n : max_id;
    if (n == 0) throw parse_error("empty edge list and no 'n <count>' header");
    return build_network(n, edges, "edge list");
}

Network parse_json_graph(std::string_view source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(source);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error("json: " + std::string(e.what()));
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges"))
        throw parse_error("json: expected object with 'nodes' and 'edges'");
    if (!doc["nodes"].is_number_integer())
        throw parse_error("json: 'nodes' must be an integer");
    int n = doc["nodes"].get<int>();
    if (!doc["edges"].is_array()) throw parse_error("json: 'edges' must be an array");

    std::vector<std::pair<int, int>> edges;
    int idx = 0;
    for (const auto& e : doc["edges"]) {
        ++idx;
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw parse_error("json: edge " + std::to_string(idx) +
                              " must be a pair of integers");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return build_network(n, edges, "json");
}

} // namespace

Network parse_network(std::string_view source, GraphFormat format) {
    return format == GraphFormat::Json ? parse_json_graph(source) : parse_edge_list(source);
}

Network parse_network_auto(std::string_view source) {
    for (char c : source) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        return parse_network(source, c == '{' ? GraphFormat::Json : GraphFormat::EdgeList);
    }
    throw parse_error("empty graph input");
}

std::string emit_network(const Network& g, GraphFormat format) {
    std::ostringstream out;
    auto es = g.edges();
    if (format == GraphFormat::EdgeList) {
        out << "n " << g.node_count() << "\n";
        for (auto [u, v] : es) out << (u + 1) << " " << (v + 1) << "\n";
    } else {
        out << "{\"nodes\":" << g.node_count() << ",\"edges\":[";
        for (size_t i = 0; i < es.size(); ++i) {
            if (i) out << ",";
            out << "[" << (es[i].first + 1) << "," << (es[i].second + 1) << "]";
        }
        out << "]}";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Independence

bool is_independent_set(const Network& g, NodeSet s) {
    if (s.bits & ~g.all_nodes())
        throw domain_error("set member out of range 1.." + std::to_string(g.node_count()));
    for (std::uint64_t m = s.bits; m;) {
        int v = std::countr_zero(m);
        m &= m - 1;
        if (g.neighbors(v) & s.bits) return false;
    }
    return true;
}

namespace {

// Branch-and-bound search state. Bound: any matching of k edges inside the
// candidate set certifies that at most |P| - k of its nodes are independent.
struct MisSearch {
    std::vector<std::uint64_t> adj;
    std::vector<std::uint64_t> closed;
    int best = 0;
    int goal = -1; // when >= 0, stop as soon as best reaches it
    bool done = false;

    explicit MisSearch(const Network& g) {
        int n = g.node_count();
        adj.resize(static_cast<size_t>(n));
        closed.resize(static_cast<size_t>(n));
        for (int v = 0; v < n; ++v) {
            adj[static_cast<size_t>(v)] = g.neighbors(v);
            closed[static_cast<size_t>(v)] = g.closed_neighbors(v);
        }
    }

    int greedy(std::uint64_t P) const {
        int cnt = 0;
        while (P) {
            int pick = -1, pick_deg = kMaxNodes + 1;
            for (std::uint64_t m = P; m;) {
                int v = std::countr_zero(m);
                m &= m - 1;
                int d = std::popcount(adj[static_cast<size_t>(v)] & P);
                if (d < pick_deg) {
                    pick_deg = d;
                    pick = v;
                }
            }
            ++cnt;
            P &= ~closed[static_cast<size_t>(pick)];
        }
        return cnt;
    }

    int upper_bound(std::uint64_t P) const {
        int size = std::popcount(P);
        std::uint64_t rest = P;
        int matched = 0;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            std::uint64_t nb = adj[static_cast<size_t>(v)] & rest;
            if (nb) {
                rest &= ~(nb & (~nb + 1)); // drop v's lowest unmatched neighbour
                ++matched;
            }
        }
        return size - matched;
    }

    void search(std::uint64_t P, int cnt) {
        if (done) return;
        // cheap reductions: isolated nodes always join, a degree-1 node can
        // always be taken ahead of its neighbour
        for (;;) {
            bool restart = false;
            for (std::uint64_t m = P; m;) {
                int v = std::countr_zero(m);
                m &= m - 1;
                std::uint64_t nb = adj[static_cast<size_t>(v)] & P;
                if (nb == 0) {
                    ++cnt;
                    P &= ~Network::bit(v);
                } else if ((nb & (nb - 1)) == 0) {
                    ++cnt;
                    P &= ~closed[static_cast<size_t>(v)];
                    restart = true;
                    break;
                }
            }
            if (!restart) break;
        }
        if (P == 0) {
            if (cnt > best) {
                best = cnt;
                if (goal >= 0 && best >= goal) done = true;
            }
            return;
        }
        if (cnt + upper_bound(P) <= best) return;

        int pick = -1, pick_deg = -1;
        for (std::uint64_t m = P; m;) {
            int v = std::countr_zero(m);
            m &= m - 1;
            int d = std::popcount(adj[static_cast<size_t>(v)] & P);
            if (d > pick_deg) {
                pick_deg = d;
                pick = v;
            }
        }
        search(P & ~closed[static_cast<size_t>(pick)], cnt + 1);
        if (done) return;
        search(P & ~Network::bit(pick), cnt);
    }

    int alpha(std::uint64_t P) {
        best = std::max(0, greedy(P));
        goal = -1;
        done = false;
        search(P, 0);
        return best;
    }

    bool alpha_at_least(std::uint64_t P, int need) {
        if (need <= 0) return true;
        if (std::popcount(P) < need) return false;
        if (greedy(P) >= need) return true;
        best = need - 1;
        goal = need;
        done = false;
        search(P, 0);
        return done;
    }
};

} // namespace

int independence_number(const Network& g) {
    MisSearch s(g);
    return s.alpha(g.all_nodes());
}

NodeSet maximum_independent_set(const Network& g) {
    MisSearch s(g);
    const int target = s.alpha(g.all_nodes());

    // Fix bits from the top down, leaving each node out whenever a maximum
    // set without it still exists. That lands on the smallest mask.
    std::uint64_t chosen = 0;
    std::uint64_t avail = g.all_nodes();
    int have = 0;
    for (int v = g.node_count() - 1; v >= 0; --v) {
        if (!((avail >> v) & 1u)) continue;
        std::uint64_t without = avail & ~Network::bit(v);
        if (s.alpha_at_least(without, target - have)) {
            avail = without;
        } else {
            chosen |= Network::bit(v);
            ++have;
            avail &= ~g.closed_neighbors(v);
        }
    }
    return NodeSet(chosen);
}

namespace {

struct MisEnumerator {
    const Network& g;
    int target;
    long long cap;
    MisEnumeration out;
    bool stop = false;

    void walk(int v, std::uint64_t chosen, int have, std::uint64_t avail) {
        if (stop) return;
        if (have + std::popcount(avail) < target) return;
        if (v < 0) {
            if (have != target) return;
            if (static_cast<long long>(out.sets.size()) >= cap) {
                out.truncated = true;
                stop = true;
                return;
            }
            out.sets.push_back(NodeSet(chosen));
            return;
        }
        if (!((avail >> v) & 1u)) {
            walk(v - 1, chosen, have, avail);
            return;
        }
        // excluding v first keeps masks ascending
        walk(v - 1, chosen, have, avail & ~Network::bit(v));
        walk(v - 1, chosen | Network::bit(v), have + 1, avail & ~g.closed_neighbors(v));
    }
};

} // namespace

MisEnumeration enumerate_maximum_independent_sets(const Network& g, long long cap) {
    if (cap < 1) throw domain_error("enumeration cap must be positive");
    MisEnumerator e{g, independence_number(g), cap, {}, false};
    e.walk(g.node_count() - 1, 0, 0, g.all_nodes());
    return std::move(e.out);
}

double caro_wei_bound(const Network& g) {
    double sum = 0.0;
    for (int v = 0; v < g.node_count(); ++v) sum += 1.0 / (g.degree(v) + 1);
    return sum;
}

NodeSet permutation_independent_set(const Network& g, const std::vector<int>& order) {
    const int n = g.node_count();
    if (static_cast<int>(order.size()) != n)
        throw domain_error("order must rank all " + std::to_string(n) + " nodes");
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (int r : order) {
        if (r < 0 || r >= n || seen[static_cast<size_t>(r)])
            throw domain_error("order is not a permutation of 0.." + std::to_string(n - 1));
        seen[static_cast<size_t>(r)] = true;
    }
    NodeSet s;
    for (int v = 0; v < n; ++v) {
        bool first = true;
        for (std::uint64_t m = g.neighbors(v); m;) {
            int u = std::countr_zero(m);
            m &= m - 1;
            if (order[static_cast<size_t>(u)] < order[static_cast<size_t>(v)]) {
                first = false;
                break;
            }
        }
        if (first) s.add(v);
    }
    return s;
}

namespace {

std::vector<std::uint64_t> component_masks(const Network& g) {
    std::vector<std::uint64_t> comps;
    std::uint64_t left = g.all_nodes();
    while (left) {
        int seed = std::countr_zero(left);
        std::uint64_t comp = Network::bit(seed);
        std::uint64_t frontier = comp;
        while (frontier) {
            std::uint64_t next = 0;
            for (std::uint64_t m = frontier; m;) {
                int v = std::countr_zero(m);
                m &= m - 1;
                next |= g.neighbors(v);
            }
            frontier = next & ~comp;
            comp |= frontier;
        }
        comps.push_back(comp);
        left &= ~comp;
    }
    return comps;
}

} // namespace

bool is_union_of_cliques(const Network& g) {
    for (std::uint64_t comp : component_masks(g)) {
        for (std::uint64_t m = comp; m;) {
            int v = std::countr_zero(m);
            m &= m - 1;
            if ((g.neighbors(v) & comp) != (comp & ~Network::bit(v))) return false;
        }
    }
    return true;
}

std::optional<CorePeriphery> is_core_periphery(const Network& g) {
    const std::uint64_t all = g.all_nodes();
    std::uint64_t full_degree = 0;
    for (int v = 0; v < g.node_count(); ++v)
        if (g.neighbors(v) == (all & ~Network::bit(v))) full_degree |= Network::bit(v);

    std::uint64_t rest = all & ~full_degree;
    if (rest) {
        // only fully connected nodes can sit in the core, so the periphery is
        // forced; it just has to be independent
        if (!is_independent_set(g, NodeSet(rest))) return std::nullopt;
        return CorePeriphery{NodeSet(full_degree), NodeSet(rest)};
    }
    // complete graph: every split with a single periphery node works; keep
    // the smallest core mask
    std::uint64_t last = Network::bit(g.node_count() - 1);
    return CorePeriphery{NodeSet(all & ~last), NodeSet(last)};
}

} // namespace netsale
