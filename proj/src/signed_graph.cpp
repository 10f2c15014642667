#include "votenet/signed_graph.hpp"

#include <algorithm>
#include <cmath>

#include "csv.hpp"
#include "votenet/error.hpp"

namespace votenet {

namespace {

template <class Link>
void canonicalize(std::vector<Link>& links, std::size_t n) {
    for (auto& l : links) {
        if (l.u >= n || l.v >= n) throw InputError("link endpoint out of range");
        if (l.u == l.v) throw InputError("self-link on node index " + std::to_string(l.u));
        if (!(l.weight > 0.0 && l.weight <= 1.0))
            throw InputError("link weight " + csv::format_exact(l.weight) + " outside (0, 1]");
        if (l.u > l.v) std::swap(l.u, l.v);
    }
    std::sort(links.begin(), links.end(),
              [](const Link& a, const Link& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    for (std::size_t i = 1; i < links.size(); ++i)
        if (links[i].u == links[i - 1].u && links[i].v == links[i - 1].v)
            throw InputError("duplicate link between node indices " + std::to_string(links[i].u) +
                             " and " + std::to_string(links[i].v));
}

std::vector<std::string> read_node_list(const std::filesystem::path& path) {
    const auto t = csv::read_file(path);
    csv::require_header(t, {"node_id"});
    std::vector<std::string> ids;
    for (const auto& row : t.rows) {
        csv::require_arity(t, row, 1);
        ids.push_back(row.fields[0]);
    }
    return ids;
}

void write_node_list(const NodeIndex& nodes, const std::filesystem::path& path) {
    auto out = csv::open_out(path);
    out << "node_id\n";
    for (const auto& id : nodes.ids()) out << csv::quote(id) << '\n';
}

// Resolves endpoint ids, growing `ids` when no node list was supplied.
struct EndpointResolver {
    std::vector<std::string> ids;
    bool fixed;
    std::unordered_map<std::string, std::size_t> lookup;

    EndpointResolver(std::vector<std::string> initial, bool fixed_) : ids(std::move(initial)), fixed(fixed_) {
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (!lookup.emplace(ids[i], i).second)
                throw InputError("duplicate node id '" + ids[i] + "' in node list");
    }

    std::size_t resolve(const csv::Table& t, const csv::Row& row, std::size_t column) {
        const auto& id = row.fields[column];
        if (auto it = lookup.find(id); it != lookup.end()) return it->second;
        if (fixed) csv::fail_at(t, row.line, column + 1, "node '" + id + "' missing from node list");
        lookup.emplace(id, ids.size());
        ids.push_back(id);
        return ids.size() - 1;
    }
};

EndpointResolver make_resolver(const std::filesystem::path& edge_path) {
    const auto nodes_path = node_list_path(edge_path);
    if (std::filesystem::exists(nodes_path)) return EndpointResolver(read_node_list(nodes_path), true);
    return EndpointResolver({}, false);
}

}  // namespace

NodeIndex::NodeIndex(std::vector<std::string> ids) : ids_(std::move(ids)) {
    lookup_.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i)
        if (!lookup_.emplace(ids_[i], i).second) throw InputError("duplicate node id '" + ids_[i] + "'");
}

std::optional<std::size_t> NodeIndex::find(std::string_view id) const {
    auto it = lookup_.find(std::string(id));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

SignedGraph::SignedGraph(std::vector<std::string> node_ids, std::vector<SignedLink> links)
    : nodes_(std::move(node_ids)), links_(std::move(links)) {
    canonicalize(links_, nodes_.size());
    adjacency_.resize(nodes_.size());
    for (const auto& l : links_) {
        adjacency_[l.u].push_back({l.v, l.weight, l.sign});
        adjacency_[l.v].push_back({l.u, l.weight, l.sign});
        total_weight_ += l.weight;
    }
}

UnsignedGraph::UnsignedGraph(std::vector<std::string> node_ids, std::vector<UnsignedLink> links)
    : nodes_(std::move(node_ids)), links_(std::move(links)) {
    canonicalize(links_, nodes_.size());
    adjacency_.resize(nodes_.size());
    for (const auto& l : links_) {
        adjacency_[l.u].push_back({l.v, l.weight});
        adjacency_[l.v].push_back({l.u, l.weight});
        total_weight_ += l.weight;
    }
}

SignedGraph graph_from_agreement(const AgreementMatrix& m) {
    std::vector<SignedLink> links;
    for (std::size_t u = 0; u < m.size(); ++u)
        for (std::size_t v = u + 1; v < m.size(); ++v) {
            const double x = m.at(u, v);
            if (x > 0.0) links.push_back({u, v, x, Sign::Positive});
            else if (x < 0.0) links.push_back({u, v, -x, Sign::Negative});
        }
    return SignedGraph(m.members(), std::move(links));
}

static UnsignedGraph project(const SignedGraph& g, Sign keep) {
    std::vector<UnsignedLink> links;
    for (const auto& l : g.links())
        if (l.sign == keep) links.push_back({l.u, l.v, l.weight});
    return UnsignedGraph(g.nodes().ids(), std::move(links));
}

UnsignedGraph positive_subgraph(const SignedGraph& g) { return project(g, Sign::Positive); }
UnsignedGraph negative_subgraph(const SignedGraph& g) { return project(g, Sign::Negative); }

UnsignedGraph complementary_negative_graph(const SignedGraph& g, double filler_weight) {
    if (!(filler_weight > 0.0 && filler_weight <= 1.0))
        throw InputError("filler weight must lie in (0, 1]");
    const std::size_t n = g.node_count();
    std::vector<UnsignedLink> links;
    links.reserve(n * (n - (n > 0 ? 1 : 0)) / 2);
    auto it = g.links().begin();
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            // links() is sorted by (u, v), so a merge walk finds the original link
            while (it != g.links().end() && (it->u < u || (it->u == u && it->v < v))) ++it;
            if (it != g.links().end() && it->u == u && it->v == v) {
                if (it->sign == Sign::Positive) links.push_back({u, v, it->weight});
            } else {
                links.push_back({u, v, filler_weight});
            }
        }
    return UnsignedGraph(g.nodes().ids(), std::move(links));
}

std::filesystem::path node_list_path(const std::filesystem::path& edge_list) {
    auto p = edge_list;
    p.replace_extension(".nodes.csv");
    return p;
}

void write_signed_graph(const SignedGraph& g, const std::filesystem::path& path) {
    write_node_list(g.nodes(), node_list_path(path));
    auto out = csv::open_out(path);
    out << "source,target,weight,sign\n";
    const auto& ids = g.nodes().ids();
    for (const auto& l : g.links())
        out << csv::quote(ids[l.u]) << ',' << csv::quote(ids[l.v]) << ','
            << csv::format_exact(l.weight) << ',' << (l.sign == Sign::Positive ? '+' : '-') << '\n';
}

SignedGraph read_signed_graph(const std::filesystem::path& path) {
    auto resolver = make_resolver(path);
    const auto t = csv::read_file(path);
    csv::require_header(t, {"source", "target", "weight", "sign"});
    std::vector<SignedLink> links;
    for (const auto& row : t.rows) {
        csv::require_arity(t, row, 4);
        const auto u = resolver.resolve(t, row, 0);
        const auto v = resolver.resolve(t, row, 1);
        const double w = csv::parse_double(t, row, 2);
        if (!(w > 0.0 && w <= 1.0)) csv::fail_at(t, row.line, 3, "weight outside (0, 1]");
        Sign s;
        if (row.fields[3] == "+") s = Sign::Positive;
        else if (row.fields[3] == "-") s = Sign::Negative;
        else csv::fail_at(t, row.line, 4, "sign must be '+' or '-'");
        if (u == v) csv::fail_at(t, row.line, 2, "self-link");
        links.push_back({u, v, w, s});
    }
    return SignedGraph(std::move(resolver.ids), std::move(links));
}

void write_unsigned_graph(const UnsignedGraph& g, const std::filesystem::path& path) {
    write_node_list(g.nodes(), node_list_path(path));
    auto out = csv::open_out(path);
    out << "source,target,weight\n";
    const auto& ids = g.nodes().ids();
    for (const auto& l : g.links())
        out << csv::quote(ids[l.u]) << ',' << csv::quote(ids[l.v]) << ','
            << csv::format_exact(l.weight) << '\n';
}

UnsignedGraph read_unsigned_graph(const std::filesystem::path& path) {
    auto resolver = make_resolver(path);
    const auto t = csv::read_file(path);
    csv::require_header(t, {"source", "target", "weight"});
    std::vector<UnsignedLink> links;
    for (const auto& row : t.rows) {
        csv::require_arity(t, row, 3);
        const auto u = resolver.resolve(t, row, 0);
        const auto v = resolver.resolve(t, row, 1);
        const double w = csv::parse_double(t, row, 2);
        if (!(w > 0.0 && w <= 1.0)) csv::fail_at(t, row.line, 3, "weight outside (0, 1]");
        if (u == v) csv::fail_at(t, row.line, 2, "self-link");
        links.push_back({u, v, w});
    }
    return UnsignedGraph(std::move(resolver.ids), std::move(links));
}

}  // namespace votenet
