#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "boolfilter/rng.hpp"

namespace boolfilter {

/// Node index, 0-based. Node 0 is the external threat: always compromised,
/// never cleaned, never attacked. Graph files use 1-based indices.
using NodeId = std::size_t;

/// Raised for structurally invalid models (bad index, edge into node 0,
/// rho outside [0,1], duplicate edge).
class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a graph file cannot be parsed; the message names the
/// offending line/column or JSON field.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Edge {
    NodeId from;
    NodeId to;
    double rho; // attack success probability per step

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct InEdge {
    NodeId source;
    double rho;
};

/// Directed attack graph. Immutable after construction; edges are kept
/// sorted by (from, to) and in-edges are indexed per target node.
class NetworkModel {
public:
    static NetworkModel build(std::size_t n, std::vector<Edge> edges);

    std::size_t size() const { return n_; }
    std::span<const Edge> edges() const { return edges_; }

    /// In-edges of node l, sorted by source.
    std::span<const InEdge> in_edges(NodeId l) const;
    std::vector<NodeId> in_neighbors(NodeId l) const;

    /// Sum of in-degrees over all nodes, i.e. the edge count.
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t max_in_degree() const;

    friend bool operator==(const NetworkModel& a, const NetworkModel& b)
    {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    NetworkModel() = default;

    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> in_offset_; // CSR offsets, size n+1
    std::vector<InEdge> in_edges_;
};

/// Directed cycle over nodes 1..n-1 (0-based) plus a single edge 0 -> 1.
NetworkModel gen_ring(std::size_t n, double rho);

/// Every ordered pair (k, l) with k != l and l != 0 is included
/// independently with probability edge_prob. Pairs are visited in
/// lexicographic order so the edge set depends only on the stream state.
NetworkModel gen_erdos_renyi(std::size_t n, double edge_prob, double rho, Rng& rng);

/// JSON graph format: {"n": int, "edges": [[from, to, rho], ...]}, 1-based.
NetworkModel parse_graph(const std::string& text);
std::string format_graph(const NetworkModel& model);

NetworkModel load_graph(const std::filesystem::path& path);
void write_graph(const NetworkModel& model, const std::filesystem::path& path);

} // namespace boolfilter
