#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "ricci/graph.hpp"

namespace ricci {

/// All-pairs effective resistances of a graph, from one factorization of the
/// grounded weighted Laplacian (conductances 1/length, loops ignored).
///
/// Per-edge ratios omega_e / length_e are pinned combinatorially: exactly 1
/// on bridges and exactly 0 on loops, so flow right-hand sides never see the
/// indeterminate bridge limit or float drift on those edges.
class ResistanceProfile {
  public:
    explicit ResistanceProfile(const WeightedGraph& g);

    const WeightedGraph& graph() const { return g_; }

    /// Effective resistance between two vertices; 0 on the diagonal,
    /// symmetric, positive for distinct vertices.
    double omega(const VertexId& x, const VertexId& y) const;
    double omega_by_index(std::size_t x, std::size_t y) const;

    /// omega_e / length_e in [0, 1]; 1 iff bridge, 0 iff loop.
    double ratio(const EdgeId& e) const;
    double ratio_by_index(std::size_t edge_idx) const;

    /// omega across an edge: exactly length_e for bridges, 0 for loops.
    double omega_of_edge(const EdgeId& e) const;

  private:
    WeightedGraph g_;
    Eigen::MatrixXd reduced_inverse_;  // inverse of the Laplacian grounded at vertex 0
};

ResistanceProfile resistance_profile(const WeightedGraph& g);

/// Weighted spanning-tree polynomial tau(G; l) = sum over spanning trees of
/// the product of lengths of edges outside the tree. Loops lie outside every
/// tree, so each loop multiplies every term. Enumerates edge subsets; refuses
/// graphs with more than `cap` non-loop edges.
double tree_polynomial(const WeightedGraph& g, std::size_t cap = 16);

/// Effective resistance as the tree-polynomial ratio tau(G/xy) / tau(G),
/// by explicit enumeration. The independent oracle for ResistanceProfile.
/// Loops of G multiply both polynomials, so they are cancelled up front.
double resistance_by_trees(const WeightedGraph& g, const VertexId& x, const VertexId& y,
                           std::size_t cap = 16);

/// Edge currents when one unit of current enters at `source` and leaves at
/// `sink`. Currents are signed with respect to each edge's stored u -> v
/// orientation; loops carry no current.
struct CurrentVector {
    VertexId source;
    VertexId sink;
    std::vector<double> current;  // indexed like graph.edges()

    double at(const WeightedGraph& g, const EdgeId& e) const { return current[g.edge_index(e)]; }
};

CurrentVector unit_current(const WeightedGraph& g, const VertexId& x, const VertexId& y);

/// d omega_xy / d length_e = (unit current through e)^2 for every edge.
/// Entries are squares, hence nonnegative (Rayleigh monotonicity).
std::map<EdgeId, double> resistance_gradient(const WeightedGraph& g, const VertexId& x,
                                             const VertexId& y);

}  // namespace ricci
