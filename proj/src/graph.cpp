#include "regtri/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace regtri {

Edge make_edge(std::uint32_t a, std::uint32_t b) {
    if (a == b) throw NonSimple("self-loop at node " + std::to_string(a));
    return a < b ? Edge{a, b} : Edge{b, a};
}

RegularGraph RegularGraph::from_edges(std::uint32_t n, std::uint32_t d,
                                      std::vector<Edge> edges) {
    if (static_cast<std::uint64_t>(n) * d % 2 != 0)
        throw ParityViolation("d*n must be even: n=" + std::to_string(n) +
                              " d=" + std::to_string(d));
    if (d >= n && !(n == 0 && d == 0))
        throw DegreeViolation("need d < n: n=" + std::to_string(n) +
                              " d=" + std::to_string(d));
    for (auto& e : edges) {
        if (e.u == e.v) throw NonSimple("self-loop at node " + std::to_string(e.u));
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.v >= n) throw Error("node id out of range: " + std::to_string(e.v));
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw NonSimple("duplicate edge");
    if (edges.size() != static_cast<std::uint64_t>(n) * d / 2)
        throw DegreeViolation("edge count " + std::to_string(edges.size()) +
                              " != n*d/2");

    RegularGraph g;
    g.n_ = n;
    g.d_ = d;
    g.adj_.assign(n, {});
    for (const auto& e : edges) {
        g.adj_[e.u].push_back(e.v);
        g.adj_[e.v].push_back(e.u);
    }
    for (std::uint32_t v = 0; v < n; ++v) {
        if (g.adj_[v].size() != d)
            throw DegreeViolation("node " + std::to_string(v) + " has degree " +
                                  std::to_string(g.adj_[v].size()));
        std::sort(g.adj_[v].begin(), g.adj_[v].end());
    }
    g.edges_ = std::move(edges);
    return g;
}

bool RegularGraph::has_edge(std::uint32_t a, std::uint32_t b) const {
    if (a == b) return false;
    const auto& nb = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
    std::uint32_t want = (&nb == &adj_[a]) ? b : a;
    return std::binary_search(nb.begin(), nb.end(), want);
}

std::size_t RegularGraph::edge_index(std::uint32_t a, std::uint32_t b) const {
    Edge e = make_edge(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || !(*it == e))
        throw Error("edge not present: " + std::to_string(a) + "-" + std::to_string(b));
    return static_cast<std::size_t>(it - edges_.begin());
}

PortLabeledGraph PortLabeledGraph::attach(RegularGraph g,
                                          std::vector<std::vector<std::uint32_t>> ports) {
    const std::uint32_t n = g.node_count(), d = g.degree();
    if (ports.size() != n) throw LabelViolation("ports must cover every node");
    for (std::uint32_t v = 0; v < n; ++v) {
        if (ports[v].size() != d)
            throw LabelViolation("node " + std::to_string(v) + " needs exactly d ports");
        auto sorted = ports[v];
        std::sort(sorted.begin(), sorted.end());
        if (sorted != g.neighbors(v))
            throw LabelViolation("ports at node " + std::to_string(v) +
                                 " are not a bijection onto its neighbors");
    }
    return PortLabeledGraph(std::move(g), std::move(ports));
}

PortLabeledGraph PortLabeledGraph::with_sorted_ports(RegularGraph g) {
    std::vector<std::vector<std::uint32_t>> ports;
    ports.reserve(g.node_count());
    for (std::uint32_t v = 0; v < g.node_count(); ++v) ports.push_back(g.neighbors(v));
    return PortLabeledGraph(std::move(g), std::move(ports));
}

std::uint32_t PortLabeledGraph::label_at(std::uint32_t v, std::uint32_t nbr) const {
    const auto& p = ports_[v];
    for (std::uint32_t l = 0; l < p.size(); ++l)
        if (p[l] == nbr) return l + 1;
    throw Error("no edge " + std::to_string(v) + "-" + std::to_string(nbr));
}

Permutation identity_permutation(std::uint32_t n) {
    Permutation p(n);
    for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
    return p;
}

void validate_permutation(const Permutation& sigma, std::uint32_t n) {
    if (sigma.size() != n) throw NotAPermutation("length != n");
    std::vector<bool> seen(n, false);
    for (auto v : sigma) {
        if (v >= n || seen[v]) throw NotAPermutation("not a bijection on 0..n-1");
        seen[v] = true;
    }
}

Permutation inverse_permutation(const Permutation& sigma) {
    validate_permutation(sigma, static_cast<std::uint32_t>(sigma.size()));
    Permutation inv(sigma.size());
    for (std::uint32_t i = 0; i < sigma.size(); ++i) inv[sigma[i]] = i;
    return inv;
}

RegularGraph relabel_nodes(const RegularGraph& g, const Permutation& sigma) {
    validate_permutation(sigma, g.node_count());
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) edges.push_back(make_edge(sigma[e.u], sigma[e.v]));
    return RegularGraph::from_edges(g.node_count(), g.degree(), std::move(edges));
}

PortLabeledGraph relabel_nodes(const PortLabeledGraph& g, const Permutation& sigma) {
    const std::uint32_t n = g.graph().node_count();
    validate_permutation(sigma, n);
    std::vector<std::vector<std::uint32_t>> ports(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        auto& dst = ports[sigma[v]];
        dst.reserve(g.ports_of(v).size());
        for (auto nbr : g.ports_of(v)) dst.push_back(sigma[nbr]);
    }
    return PortLabeledGraph::attach(relabel_nodes(g.graph(), sigma), std::move(ports));
}

RegularGraph read_edge_list(std::istream& in) {
    std::string line;
    std::uint32_t n = 0, d = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (!have_header) {
            if (!(ls >> n >> d)) {
                std::string tok;
                std::istringstream probe(line);
                if (probe >> tok)
                    throw ParseError("line " + std::to_string(lineno) + ": expected 'n d'");
                continue;  // blank/comment before header
            }
            std::string extra;
            if (ls >> extra)
                throw ParseError("line " + std::to_string(lineno) + ": expected 'n d'");
            have_header = true;
            continue;
        }
        long long a = -1, b = -1;
        if (!(ls >> a >> b)) {
            std::string tok;
            std::istringstream probe(line);
            if (probe >> tok)
                throw ParseError("line " + std::to_string(lineno) + ": expected 'u v'");
            continue;
        }
        std::string extra;
        if (ls >> extra)
            throw ParseError("line " + std::to_string(lineno) + ": expected 'u v'");
        if (a < 0 || b < 0 || a >= b)
            throw ParseError("line " + std::to_string(lineno) + ": edges need 0 <= u < v");
        edges.push_back(Edge{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)});
    }
    if (!have_header) throw ParseError("missing 'n d' header");
    return RegularGraph::from_edges(n, d, std::move(edges));
}

RegularGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const RegularGraph& g) {
    out << g.node_count() << " " << g.degree() << "\n";
    for (const auto& e : g.edges()) out << e.u << " " << e.v << "\n";
}

std::string edge_list_string(const RegularGraph& g) {
    std::ostringstream os;
    write_edge_list(os, g);
    return os.str();
}

} // namespace regtri
