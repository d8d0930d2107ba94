#include "boolfilter/graph.hpp"

#include <algorithm>
#include <string>

#include <json.hpp>

#include "boolfilter/io.hpp"

namespace boolfilter {

using json = nlohmann::json;

NetworkModel NetworkModel::build(std::size_t n, std::vector<Edge> edges)
{
    if (n < 1)
        throw ModelError("network needs at least one node");
    for (const Edge& e : edges) {
        const std::string tag =
            "edge (" + std::to_string(e.from + 1) + "," + std::to_string(e.to + 1) + ")";
        if (e.from >= n || e.to >= n)
            throw ModelError(tag + ": node index out of range 1.." + std::to_string(n));
        if (e.from == e.to)
            throw ModelError(tag + ": self loop");
        if (e.to == 0)
            throw ModelError(tag + ": node 1 (external threat) cannot be attacked");
        if (!(e.rho >= 0.0 && e.rho <= 1.0))
            throw ModelError(tag + ": rho must lie in [0,1]");
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    auto dup = std::adjacent_find(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.from == b.from && a.to == b.to;
    });
    if (dup != edges.end())
        throw ModelError("duplicate edge (" + std::to_string(dup->from + 1) + "," +
                         std::to_string(dup->to + 1) + ")");

    NetworkModel m;
    m.n_ = n;
    m.edges_ = std::move(edges);
    m.in_offset_.assign(n + 1, 0);
    for (const Edge& e : m.edges_)
        ++m.in_offset_[e.to + 1];
    for (std::size_t l = 0; l < n; ++l)
        m.in_offset_[l + 1] += m.in_offset_[l];
    m.in_edges_.resize(m.edges_.size());
    std::vector<std::size_t> fill(m.in_offset_.begin(), m.in_offset_.end() - 1);
    // edges_ is sorted by source, so each in-edge list comes out sorted too
    for (const Edge& e : m.edges_)
        m.in_edges_[fill[e.to]++] = InEdge{e.from, e.rho};
    return m;
}

std::span<const InEdge> NetworkModel::in_edges(NodeId l) const
{
    if (l >= n_)
        throw std::out_of_range("node " + std::to_string(l + 1) + " out of range");
    return std::span<const InEdge>(in_edges_).subspan(in_offset_[l], in_offset_[l + 1] - in_offset_[l]);
}

std::vector<NodeId> NetworkModel::in_neighbors(NodeId l) const
{
    std::vector<NodeId> out;
    for (const InEdge& e : in_edges(l))
        out.push_back(e.source);
    return out;
}

std::size_t NetworkModel::max_in_degree() const
{
    std::size_t best = 0;
    for (std::size_t l = 0; l < n_; ++l)
        best = std::max(best, in_offset_[l + 1] - in_offset_[l]);
    return best;
}

NetworkModel gen_ring(std::size_t n, double rho)
{
    if (n < 3)
        throw ModelError("ring needs n >= 3");
    std::vector<Edge> edges;
    edges.push_back({0, 1, rho});
    for (NodeId l = 1; l < n; ++l)
        edges.push_back({l, l + 1 < n ? l + 1 : 1, rho});
    return NetworkModel::build(n, std::move(edges));
}

NetworkModel gen_erdos_renyi(std::size_t n, double edge_prob, double rho, Rng& rng)
{
    if (n < 2)
        throw ModelError("Erdos-Renyi graph needs n >= 2");
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0))
        throw ModelError("edge_prob must lie in [0,1]");
    std::vector<Edge> edges;
    for (NodeId k = 0; k < n; ++k)
        for (NodeId l = 1; l < n; ++l)
            if (k != l && rng.bernoulli(edge_prob))
                edges.push_back({k, l, rho});
    return NetworkModel::build(n, std::move(edges));
}

namespace {

std::size_t node_field(const json& v, const std::string& where, std::size_t n)
{
    if (!v.is_number_integer())
        throw ParseError(where + ": expected integer node index");
    const auto idx = v.get<long long>();
    if (idx < 1 || static_cast<std::size_t>(idx) > n)
        throw ModelError(where + ": node index " + std::to_string(idx) + " outside 1.." +
                         std::to_string(n));
    return static_cast<std::size_t>(idx - 1);
}

} // namespace

NetworkModel parse_graph(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object())
        throw ParseError("graph: expected a JSON object");
    if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1)
        throw ParseError("n: expected positive integer");
    const auto n = doc["n"].get<std::size_t>();
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw ParseError("edges: expected array");

    std::vector<Edge> edges;
    const json& arr = doc["edges"];
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        const json& e = arr[i];
        if (!e.is_array() || e.size() != 3)
            throw ParseError(where + ": expected [from, to, rho]");
        if (!e[2].is_number())
            throw ParseError(where + "[2]: expected number");
        edges.push_back({node_field(e[0], where + "[0]", n), node_field(e[1], where + "[1]", n),
                         e[2].get<double>()});
    }
    return NetworkModel::build(n, std::move(edges));
}

std::string format_graph(const NetworkModel& model)
{
    json edges = json::array();
    for (const Edge& e : model.edges())
        edges.push_back(json::array({e.from + 1, e.to + 1, e.rho}));
    json doc;
    doc["n"] = model.size();
    doc["edges"] = std::move(edges);
    return doc.dump() + "\n";
}

NetworkModel load_graph(const std::filesystem::path& path)
{
    return parse_graph(read_file(path));
}

void write_graph(const NetworkModel& model, const std::filesystem::path& path)
{
    write_file_atomic(path, format_graph(model));
}

} // namespace boolfilter
