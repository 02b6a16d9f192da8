#include "ricci/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace ricci {

struct WeightedGraph::Structure {
    std::unordered_map<VertexId, std::size_t> vertex_index;
    std::unordered_map<EdgeId, std::size_t> edge_index;
    std::vector<int> degree;                 // by vertex index, loops count twice
    std::vector<char> bridge;                // by edge index
    std::size_t non_loop_edges = 0;
    // adjacency: per vertex, (edge index, other vertex index); loops appear once
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency;
};

namespace {

// Union-find with lexicographically smallest id as representative, so merged
// vertices get a deterministic name.
class VertexMerger {
  public:
    explicit VertexMerger(const std::vector<VertexId>& vertices) : vertices_(vertices) {
        parent_.resize(vertices.size());
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    std::size_t find(std::size_t i) const {
        while (parent_[i] != i) i = parent_[i];
        return i;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (vertices_[b] < vertices_[a]) std::swap(a, b);
        parent_[b] = a;
    }

  private:
    const std::vector<VertexId>& vertices_;
    mutable std::vector<std::size_t> parent_;
};

bool connected(const std::vector<VertexId>& vertices, const std::vector<EdgeRecord>& edges,
               const std::unordered_map<VertexId, std::size_t>& vindex) {
    if (vertices.size() <= 1) return true;
    std::vector<std::vector<std::size_t>> adj(vertices.size());
    for (const auto& e : edges) {
        if (e.is_loop()) continue;
        auto a = vindex.at(e.u);
        auto b = vindex.at(e.v);
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> seen(vertices.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto w : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == vertices.size();
}

// Iterative lowpoint bridge search on the multigraph; the tree edge is
// skipped by edge index, so one of a parallel pair is never a bridge.
std::vector<char> find_bridges(std::size_t n, const std::vector<EdgeRecord>& edges,
                               const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& adjacency) {
    std::vector<char> bridge(edges.size(), 0);
    std::vector<int> tin(n, -1), low(n, 0);
    int timer = 0;

    struct Frame {
        std::size_t v;
        std::size_t via_edge;  // edge used to enter v, or SIZE_MAX at the root
        std::size_t next = 0;  // adjacency cursor
    };

    for (std::size_t root = 0; root < n; ++root) {
        if (tin[root] != -1) continue;
        std::vector<Frame> stack;
        stack.push_back({root, static_cast<std::size_t>(-1)});
        tin[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < adjacency[f.v].size()) {
                auto [eidx, w] = adjacency[f.v][f.next++];
                if (edges[eidx].is_loop() || eidx == f.via_edge) continue;
                if (tin[w] == -1) {
                    tin[w] = low[w] = timer++;
                    stack.push_back({w, eidx});
                } else {
                    low[f.v] = std::min(low[f.v], tin[w]);
                }
            } else {
                std::size_t v = f.v;
                std::size_t via = f.via_edge;
                stack.pop_back();
                if (!stack.empty()) {
                    std::size_t parent = stack.back().v;
                    low[parent] = std::min(low[parent], low[v]);
                    if (low[v] > tin[parent]) bridge[via] = 1;
                }
            }
        }
    }
    return bridge;
}

std::string fresh_id(const std::string& base, const std::unordered_set<std::string>& taken) {
    if (!taken.count(base)) return base;
    for (int k = 2;; ++k) {
        std::string candidate = base + "_" + std::to_string(k);
        if (!taken.count(candidate)) return candidate;
    }
}

}  // namespace

void validate(const std::vector<VertexId>& vertices, const std::vector<EdgeRecord>& edges) {
    std::unordered_map<VertexId, std::size_t> vindex;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (!vindex.emplace(vertices[i], i).second)
            throw DuplicateId("duplicate vertex id '" + vertices[i] + "'");
    }
    std::unordered_set<EdgeId> eids;
    for (const auto& e : edges) {
        if (!eids.insert(e.id).second) throw DuplicateId("duplicate edge id '" + e.id + "'");
        if (!vindex.count(e.u))
            throw DanglingEndpoint("edge '" + e.id + "' references unknown vertex '" + e.u + "'");
        if (!vindex.count(e.v))
            throw DanglingEndpoint("edge '" + e.id + "' references unknown vertex '" + e.v + "'");
        if (!(e.length > 0.0) || !std::isfinite(e.length))
            throw NonpositiveLength("edge '" + e.id + "' has nonpositive length " +
                                    std::to_string(e.length));
    }
    if (vertices.empty()) throw DisconnectedGraph("graph has no vertices");
    if (!connected(vertices, edges, vindex))
        throw DisconnectedGraph("graph is not connected as a multigraph");
}

std::shared_ptr<const WeightedGraph::Structure> WeightedGraph::build_structure(
    const std::vector<VertexId>& vertices, const std::vector<EdgeRecord>& edges) {
    auto s = std::make_shared<Structure>();
    for (std::size_t i = 0; i < vertices.size(); ++i) s->vertex_index.emplace(vertices[i], i);
    s->degree.assign(vertices.size(), 0);
    s->adjacency.resize(vertices.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        s->edge_index.emplace(e.id, i);
        auto a = s->vertex_index.at(e.u);
        auto b = s->vertex_index.at(e.v);
        if (e.is_loop()) {
            s->degree[a] += 2;
            s->adjacency[a].push_back({i, a});
        } else {
            s->degree[a] += 1;
            s->degree[b] += 1;
            s->adjacency[a].push_back({i, b});
            s->adjacency[b].push_back({i, a});
            ++s->non_loop_edges;
        }
    }
    s->bridge = find_bridges(vertices.size(), edges, s->adjacency);
    return s;
}

WeightedGraph::WeightedGraph(std::vector<VertexId> vertices, std::vector<EdgeRecord> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    validate(vertices_, edges_);
    structure_ = build_structure(vertices_, edges_);
}

WeightedGraph::WeightedGraph(std::vector<VertexId> vertices, std::vector<EdgeRecord> edges,
                             std::shared_ptr<const Structure> structure)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), structure_(std::move(structure)) {}

std::size_t WeightedGraph::non_loop_edge_count() const { return structure_->non_loop_edges; }

bool WeightedGraph::has_vertex(const VertexId& v) const {
    return structure_->vertex_index.count(v) > 0;
}

bool WeightedGraph::has_edge(const EdgeId& e) const { return structure_->edge_index.count(e) > 0; }

std::size_t WeightedGraph::vertex_index(const VertexId& v) const {
    auto it = structure_->vertex_index.find(v);
    if (it == structure_->vertex_index.end()) throw UnknownVertex("unknown vertex '" + v + "'");
    return it->second;
}

std::size_t WeightedGraph::edge_index(const EdgeId& e) const {
    auto it = structure_->edge_index.find(e);
    if (it == structure_->edge_index.end()) throw UnknownEdge("unknown edge '" + e + "'");
    return it->second;
}

int WeightedGraph::degree(const VertexId& v) const { return structure_->degree[vertex_index(v)]; }

bool WeightedGraph::is_bridge(const EdgeId& e) const { return is_bridge_index(edge_index(e)); }

bool WeightedGraph::is_bridge_index(std::size_t edge_idx) const {
    return structure_->bridge[edge_idx] != 0;
}

double WeightedGraph::total_length() const {
    double total = 0.0;
    for (const auto& e : edges_) total += e.length;
    return total;
}

WeightedGraph WeightedGraph::with_lengths(std::vector<double> lengths) const {
    if (lengths.size() != edges_.size())
        throw InvalidConfig("with_lengths: expected " + std::to_string(edges_.size()) +
                            " lengths, got " + std::to_string(lengths.size()));
    std::vector<EdgeRecord> edges = edges_;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!(lengths[i] > 0.0) || !std::isfinite(lengths[i]))
            throw NonpositiveLength("edge '" + edges[i].id + "' has nonpositive length " +
                                    std::to_string(lengths[i]));
        edges[i].length = lengths[i];
    }
    return WeightedGraph(vertices_, std::move(edges), structure_);
}

WeightedGraph WeightedGraph::rescaled(double lambda) const {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw NonpositiveLength("rescale factor must be positive, got " + std::to_string(lambda));
    std::vector<double> lengths(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) lengths[i] = edges_[i].length * lambda;
    return with_lengths(std::move(lengths));
}

WeightedGraph WeightedGraph::subdivide(const EdgeId& e, double split) const {
    const auto& rec = edge(e);
    if (rec.is_loop()) throw LoopSubdivision("edge '" + e + "' is a loop and cannot be subdivided");
    if (!(split > 0.0) || !(split < 1.0))
        throw SplitOutOfRange("split must lie in (0,1), got " + std::to_string(split));

    std::unordered_set<std::string> vtaken(vertices_.begin(), vertices_.end());
    std::unordered_set<std::string> etaken;
    for (const auto& rec2 : edges_) etaken.insert(rec2.id);
    etaken.erase(e);

    VertexId x = fresh_id(e + ".x", vtaken);
    EdgeId e1 = fresh_id(e + ".1", etaken);
    etaken.insert(e1);
    EdgeId e2 = fresh_id(e + ".2", etaken);

    std::vector<VertexId> vertices = vertices_;
    vertices.push_back(x);
    std::vector<EdgeRecord> edges;
    edges.reserve(edges_.size() + 1);
    for (const auto& rec2 : edges_) {
        if (rec2.id == e) {
            edges.push_back({e1, rec2.u, x, split * rec2.length});
            edges.push_back({e2, x, rec2.v, (1.0 - split) * rec2.length});
        } else {
            edges.push_back(rec2);
        }
    }
    return WeightedGraph(std::move(vertices), std::move(edges));
}

std::pair<WeightedGraph, ContractionMap> WeightedGraph::contract(
    const std::vector<EdgeId>& es) const {
    std::unordered_set<std::size_t> removed;
    for (const auto& id : es) removed.insert(edge_index(id));

    VertexMerger merger(vertices_);
    for (auto idx : removed) {
        const auto& rec = edges_[idx];
        if (!rec.is_loop()) merger.unite(vertex_index(rec.u), vertex_index(rec.v));
    }

    ContractionMap map;
    std::vector<VertexId> vertices;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const VertexId& target = vertices_[merger.find(i)];
        map.vertex_map[vertices_[i]] = target;
        if (merger.find(i) == i) vertices.push_back(vertices_[i]);
    }

    std::vector<EdgeRecord> edges;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (removed.count(i)) {
            map.removed_edges.push_back(edges_[i].id);
            continue;
        }
        EdgeRecord rec = edges_[i];
        bool was_loop = rec.is_loop();
        rec.u = map.vertex_map.at(rec.u);
        rec.v = map.vertex_map.at(rec.v);
        if (!was_loop && rec.is_loop()) map.became_loops.push_back(rec.id);
        edges.push_back(std::move(rec));
    }
    return {WeightedGraph(std::move(vertices), std::move(edges)), std::move(map)};
}

WeightedGraph WeightedGraph::suppress_degree_two() const {
    std::vector<VertexId> vertices = vertices_;
    std::vector<EdgeRecord> edges = edges_;

    auto degree_of = [&](const VertexId& v) {
        int d = 0;
        for (const auto& e : edges) {
            if (e.u == v) ++d;
            if (e.v == v) ++d;
        }
        return d;
    };

    for (;;) {
        // deterministic pick: smallest-id suppressible vertex
        std::vector<VertexId> order = vertices;
        std::sort(order.begin(), order.end());
        bool merged = false;
        for (const auto& v : order) {
            if (degree_of(v) != 2) continue;
            std::vector<std::size_t> incident;
            for (std::size_t i = 0; i < edges.size(); ++i)
                if (edges[i].u == v || edges[i].v == v) incident.push_back(i);
            if (incident.size() != 2) continue;  // lone loop vertex: minimal cycle form

            std::size_t i1 = incident[0], i2 = incident[1];
            if (edges[i2].id < edges[i1].id) std::swap(i1, i2);
            const EdgeRecord& a = edges[i1];
            const EdgeRecord& b = edges[i2];
            EdgeRecord joined;
            joined.u = a.other(v);
            joined.v = b.other(v);
            joined.length = a.length + b.length;
            std::unordered_set<std::string> etaken;
            for (std::size_t i = 0; i < edges.size(); ++i)
                if (i != i1 && i != i2) etaken.insert(edges[i].id);
            joined.id = fresh_id(a.id + "+" + b.id, etaken);

            edges[i1] = joined;
            edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(i2));
            vertices.erase(std::find(vertices.begin(), vertices.end(), v));
            merged = true;
            break;
        }
        if (!merged) break;
    }
    return WeightedGraph(std::move(vertices), std::move(edges));
}

WeightedGraph WeightedGraph::without_edge(const EdgeId& e) const {
    std::size_t idx = edge_index(e);
    std::vector<EdgeRecord> edges;
    edges.reserve(edges_.size() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (i != idx) edges.push_back(edges_[i]);
    return WeightedGraph(vertices_, std::move(edges));
}

}  // namespace ricci
