#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ricci/errors.hpp"

namespace ricci {

/// Vertex labels are opaque strings, unique within a graph.
using VertexId = std::string;
/// Edge labels are opaque strings, unique within a graph and stable across
/// flow steps, subdivision and contraction bookkeeping.
using EdgeId = std::string;

/// One edge of a weighted multigraph. u == v is a loop. The length is the
/// edge's resistance and must be strictly positive.
struct EdgeRecord {
    EdgeId id;
    VertexId u;
    VertexId v;
    double length = 0.0;

    bool is_loop() const { return u == v; }
    /// The endpoint opposite to `w` (either endpoint of a loop).
    const VertexId& other(const VertexId& w) const { return w == u ? v : u; }
};

/// Record of a contraction: where every old vertex went, which edges were
/// deleted, and which surviving edges turned into loops.
struct ContractionMap {
    std::map<VertexId, VertexId> vertex_map;  // old vertex -> surviving vertex
    std::vector<EdgeId> removed_edges;        // exactly the contracted edge set
    std::vector<EdgeId> became_loops;         // survivors whose endpoints merged
};

/// Throws the specific validation error if the parts do not form a valid
/// connected weighted multigraph (loops and parallel edges are allowed,
/// loops are ignored for connectivity).
void validate(const std::vector<VertexId>& vertices, const std::vector<EdgeRecord>& edges);

/// Immutable connected weighted multigraph. All mutators return new graphs;
/// instances are safe to share between threads.
class WeightedGraph {
  public:
    /// Validates on construction; throws DisconnectedGraph, NonpositiveLength,
    /// DanglingEndpoint or DuplicateId naming the offending element.
    WeightedGraph(std::vector<VertexId> vertices, std::vector<EdgeRecord> edges);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t non_loop_edge_count() const;

    const std::vector<VertexId>& vertices() const { return vertices_; }
    const std::vector<EdgeRecord>& edges() const { return edges_; }

    bool has_vertex(const VertexId& v) const;
    bool has_edge(const EdgeId& e) const;

    /// Index of a vertex in vertices(); throws UnknownVertex.
    std::size_t vertex_index(const VertexId& v) const;
    /// Index of an edge in edges(); throws UnknownEdge.
    std::size_t edge_index(const EdgeId& e) const;
    const EdgeRecord& edge(const EdgeId& e) const { return edges_[edge_index(e)]; }

    /// Number of edge endpoints at v; a loop at v contributes 2.
    int degree(const VertexId& v) const;

    /// True iff deleting e disconnects the graph. Loops are never bridges.
    /// Decided combinatorially once per structure, not numerically.
    bool is_bridge(const EdgeId& e) const;
    bool is_bridge_index(std::size_t edge_idx) const;

    double total_length() const;

    /// Same structure with new lengths (indexed like edges()). Shares the
    /// structural caches, so this is cheap inside integration loops.
    WeightedGraph with_lengths(std::vector<double> lengths_by_edge_index) const;

    /// All lengths multiplied by lambda > 0.
    WeightedGraph rescaled(double lambda) const;

    /// Replace non-loop edge e by u-x-v with lengths split*len and
    /// (1-split)*len, 0 < split < 1. New ids derive from e's id.
    WeightedGraph subdivide(const EdgeId& e, double split) const;

    /// Identify the endpoints of every non-loop edge in `es` and delete the
    /// edges in `es` (loops in `es` are simply deleted). Parallel edges
    /// between merged endpoints become loops and keep their lengths.
    std::pair<WeightedGraph, ContractionMap> contract(const std::vector<EdgeId>& es) const;

    /// Merge the two edges at every degree-2 vertex into one edge of summed
    /// length until none remain; the inverse of subdivision. A bare cycle
    /// stops at one vertex with one loop. Idempotent.
    WeightedGraph suppress_degree_two() const;

    /// Graph with edge e removed. The result must stay connected, so this is
    /// only meaningful for non-bridge edges (and loops).
    WeightedGraph without_edge(const EdgeId& e) const;

  private:
    struct Structure;

    WeightedGraph(std::vector<VertexId> vertices, std::vector<EdgeRecord> edges,
                  std::shared_ptr<const Structure> structure);

    static std::shared_ptr<const Structure> build_structure(
        const std::vector<VertexId>& vertices, const std::vector<EdgeRecord>& edges);

    std::vector<VertexId> vertices_;
    std::vector<EdgeRecord> edges_;
    std::shared_ptr<const Structure> structure_;
};

}  // namespace ricci
