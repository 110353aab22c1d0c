#ifndef NETSALE_GRAPH_HPP
#define NETSALE_GRAPH_HPP

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netsale/errors.hpp"

namespace netsale {

// Node sets are 64-bit masks, so graphs are capped at 64 nodes. Everything
// internal is 0-based; node ids in files and emitted JSON are 1-based.
inline constexpr int kMaxNodes = 64;

// Subset of nodes as a bitmask (bit v = node v). Comparison is by mask value,
// which is also the tie-break order used throughout: of two distinct sets the
// smaller mask wins, i.e. the one avoiding the highest-numbered node they
// differ on.
struct NodeSet {
    std::uint64_t bits = 0;

    constexpr NodeSet() = default;
    constexpr explicit NodeSet(std::uint64_t m) : bits(m) {}

    static NodeSet of(std::initializer_list<int> nodes) {
        NodeSet s;
        for (int v : nodes) s.add(v);
        return s;
    }

    bool contains(int v) const { return (bits >> v) & 1u; }
    void add(int v) { bits |= std::uint64_t(1) << v; }
    void remove(int v) { bits &= ~(std::uint64_t(1) << v); }
    int size() const { return std::popcount(bits); }
    bool empty() const { return bits == 0; }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(size());
        for (std::uint64_t m = bits; m;) {
            int v = std::countr_zero(m);
            out.push_back(v);
            m &= m - 1;
        }
        return out;
    }

    friend bool operator==(NodeSet a, NodeSet b) { return a.bits == b.bits; }
    friend bool operator!=(NodeSet a, NodeSet b) { return a.bits != b.bits; }
    friend bool operator<(NodeSet a, NodeSet b) { return a.bits < b.bits; }
};

// Simple undirected graph on nodes 0..n-1, adjacency stored as one mask per
// node. No self-loops, no multi-edges. A node never appears in its own
// adjacency mask; operations that need the closed neighbourhood add it back.
class Network {
public:
    explicit Network(int n) : n_(checked_count(n)), adj_(static_cast<size_t>(n_), 0) {}

    int node_count() const { return n_; }

    void add_edge(int u, int v) {
        check_node(u);
        check_node(v);
        if (u == v) throw domain_error("self-loop at node " + std::to_string(u + 1));
        adj_[static_cast<size_t>(u)] |= bit(v);
        adj_[static_cast<size_t>(v)] |= bit(u);
    }

    bool adjacent(int u, int v) const {
        check_node(u);
        check_node(v);
        return (adj_[static_cast<size_t>(u)] >> v) & 1u;
    }

    std::uint64_t neighbors(int v) const {
        check_node(v);
        return adj_[static_cast<size_t>(v)];
    }

    std::uint64_t closed_neighbors(int v) const { return neighbors(v) | bit(v); }

    int degree(int v) const { return std::popcount(neighbors(v)); }

    std::uint64_t all_nodes() const {
        return n_ == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n_) - 1;
    }

    int edge_count() const {
        int twice = 0;
        for (auto m : adj_) twice += std::popcount(m);
        return twice / 2;
    }

    // Edges as (u, v) with u < v, ascending.
    std::vector<std::pair<int, int>> edges() const;

    // Copy with one edge deleted. (u, v) must currently be an edge.
    Network without_edge(int u, int v) const;

    // Copy with every edge at v deleted; the node itself stays.
    Network without_node_edges(int v) const;

    static std::uint64_t bit(int v) { return std::uint64_t(1) << v; }

private:
    static int checked_count(int n) {
        if (n < 1) throw domain_error("network needs at least one node");
        if (n > kMaxNodes)
            throw capacity_error("network limited to " + std::to_string(kMaxNodes) + " nodes");
        return n;
    }

    void check_node(int v) const {
        if (v < 0 || v >= n_)
            throw domain_error("node " + std::to_string(v + 1) + " out of range 1.." +
                               std::to_string(n_));
    }

    int n_;
    std::vector<std::uint64_t> adj_;
};

// Per-node degrees; the handshake sum is even by construction.
struct DegreeProfile {
    std::vector<int> degrees;
};

DegreeProfile degree_profile(const Network& g);

enum class GraphFormat { EdgeList, Json };

// Edge-list format: optional "n <count>" header, then one "u v" pair per
// line, 1-based ids, '#' starts a comment, blank lines skipped. Without a
// header the node count is the largest id seen. JSON format:
// {"nodes": n, "edges": [[u, v], ...]}. Duplicate edges are deduplicated;
// self-loops are rejected.
Network parse_network(std::string_view source, GraphFormat format);

// Picks JSON when the first non-space byte is '{', edge list otherwise.
Network parse_network_auto(std::string_view source);

std::string emit_network(const Network& g, GraphFormat format);

bool is_independent_set(const Network& g, NodeSet s);

// Size of a maximum independent set.
int independence_number(const Network& g);

// The maximum independent set with the smallest mask. Exact branch-and-bound;
// fine in practice to about 60 nodes on sparse instances.
NodeSet maximum_independent_set(const Network& g);

struct MisEnumeration {
    std::vector<NodeSet> sets; // ascending mask order
    bool truncated = false;    // more sets existed beyond the cap
};

inline constexpr long long kDefaultEnumerationCap = 100000;

MisEnumeration enumerate_maximum_independent_sets(const Network& g,
                                                  long long cap = kDefaultEnumerationCap);

// Sum over nodes of 1/(degree+1). Always a lower bound for the independence
// number, tight exactly on disjoint unions of cliques.
double caro_wei_bound(const Network& g);

// Nodes whose rank is below every neighbour's rank. order[v] is the rank of
// node v under a permutation; the result is independent for any permutation.
NodeSet permutation_independent_set(const Network& g, const std::vector<int>& order);

bool is_union_of_cliques(const Network& g);

struct CorePeriphery {
    NodeSet core;      // each core node is adjacent to all other nodes
    NodeSet periphery; // independent, and a maximum independent set
};

// Recognizes core-periphery structure. The core is as small as possible; on
// complete graphs, where several splits qualify, the lexicographically
// smallest core is returned (all nodes but the last).
std::optional<CorePeriphery> is_core_periphery(const Network& g);

} // namespace netsale

#endif
