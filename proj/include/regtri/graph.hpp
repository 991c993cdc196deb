#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "regtri/errors.hpp"

namespace regtri {

// Undirected edge, stored with u < v.
struct Edge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;

    friend bool operator==(const Edge& a, const Edge& b) {
        return a.u == b.u && a.v == b.v;
    }
    friend bool operator<(const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    }
};

Edge make_edge(std::uint32_t a, std::uint32_t b);

using Permutation = std::vector<std::uint32_t>;

// Simple d-regular graph on nodes {0..n-1}. Immutable once built; edges are
// kept sorted lexicographically and adjacency lists sorted ascending.
class RegularGraph {
public:
    static RegularGraph from_edges(std::uint32_t n, std::uint32_t d,
                                   std::vector<Edge> edges);

    std::uint32_t node_count() const { return n_; }
    std::uint32_t degree() const { return d_; }
    std::uint32_t edge_count() const {
        return static_cast<std::uint32_t>(edges_.size());
    }

    const std::vector<std::uint32_t>& neighbors(std::uint32_t v) const {
        return adj_[v];
    }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_edge(std::uint32_t a, std::uint32_t b) const;
    // Index into edges() of the given edge; throws Error if absent.
    std::size_t edge_index(std::uint32_t a, std::uint32_t b) const;

    friend bool operator==(const RegularGraph& a, const RegularGraph& b) {
        return a.n_ == b.n_ && a.d_ == b.d_ && a.edges_ == b.edges_;
    }

private:
    RegularGraph() = default;

    std::uint32_t n_ = 0;
    std::uint32_t d_ = 0;
    std::vector<std::vector<std::uint32_t>> adj_;
    std::vector<Edge> edges_;
};

// RegularGraph plus a port labeling: at every node the d incident edges carry
// distinct labels 1..d. ports_of(v)[l-1] is the neighbor reached from v via
// label l.
class PortLabeledGraph {
public:
    static PortLabeledGraph attach(RegularGraph g,
                                   std::vector<std::vector<std::uint32_t>> ports);
    // Canonical labeling: label l at v points to v's l-th smallest neighbor.
    static PortLabeledGraph with_sorted_ports(RegularGraph g);

    const RegularGraph& graph() const { return g_; }
    const std::vector<std::uint32_t>& ports_of(std::uint32_t v) const {
        return ports_[v];
    }
    // Label in 1..d under which nbr appears at v.
    std::uint32_t label_at(std::uint32_t v, std::uint32_t nbr) const;

    friend bool operator==(const PortLabeledGraph& a, const PortLabeledGraph& b) {
        return a.g_ == b.g_ && a.ports_ == b.ports_;
    }

private:
    PortLabeledGraph(RegularGraph g, std::vector<std::vector<std::uint32_t>> ports)
        : g_(std::move(g)), ports_(std::move(ports)) {}

    RegularGraph g_;
    std::vector<std::vector<std::uint32_t>> ports_;
};

Permutation identity_permutation(std::uint32_t n);
Permutation inverse_permutation(const Permutation& sigma);
// Throws NotAPermutation unless sigma is a bijection on {0..n-1}.
void validate_permutation(const Permutation& sigma, std::uint32_t n);

// Node i of the input becomes node sigma[i] of the output.
RegularGraph relabel_nodes(const RegularGraph& g, const Permutation& sigma);
// Ports travel with their node: the edge labeled l at i is labeled l at
// sigma[i] afterwards.
PortLabeledGraph relabel_nodes(const PortLabeledGraph& g, const Permutation& sigma);

// Text format: first line "n d", then one "u v" line per edge with u < v,
// 0-indexed, edges in any order. '#' starts a comment line.
RegularGraph read_edge_list(std::istream& in);
RegularGraph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const RegularGraph& g);
std::string edge_list_string(const RegularGraph& g);

} // namespace regtri
