#pragma once

#include <map>
#include <vector>

#include "ricci/graph.hpp"
#include "ricci/resistance.hpp"

namespace ricci {

/// Per-edge Ricci-Foster curvature K_e = 1/deg_u + 1/deg_v - omega_uv/l_e,
/// Foster coefficients F(e) = 1 - omega_e/l_e, directed arc curvatures and
/// per-vertex scalar curvature. Vectors are indexed like graph.edges().
struct CurvatureReport {
    std::vector<EdgeId> edge_ids;
    std::vector<double> curvature;                     // K_e, in [-1, 1]
    std::vector<double> foster;                        // F(e), in [0, 1]
    std::vector<std::pair<double, double>> arc;        // K_{u->v}, K_{v->u} per edge
    std::map<VertexId, double> vertex_curvature;       // p_u, the sum of outgoing arcs
    double total_curvature = 0.0;                      // sums to 1 on finite graphs

    double curvature_of(const EdgeId& e) const;
    double foster_of(const EdgeId& e) const;
};

/// Full curvature report from one resistance factorization.
CurvatureReport curvature_report(const WeightedGraph& g);
CurvatureReport curvature_report(const ResistanceProfile& profile);

/// Curvature of a single edge: 2/deg on a loop, degree terms minus the
/// pinned resistance ratio otherwise.
double curvature_of_edge(const WeightedGraph& g, const EdgeId& e);

/// dK_e / dl_f for every edge f, by the closed forms
///   diagonal:      omega_e(G\e) / (l_e + omega_e(G\e))^2        (>= 0)
///   off-diagonal: -l_e / (l_e + omega_e(G\e))^2 * d omega_e(G\e)/dl_f  (<= 0)
/// Loops and bridges have constant curvature: the zero map.
std::map<EdgeId, double> curvature_partials(const WeightedGraph& g, const EdgeId& e);

/// Both sides of the subdivision additivity identities for curvature and
/// Foster coefficient: the value on the original edge vs. the sum over the
/// two pieces after subdividing at `split`.
struct SubdivisionAdditivity {
    double curvature_whole = 0.0;
    double curvature_parts = 0.0;
    double foster_whole = 0.0;
    double foster_parts = 0.0;
};

SubdivisionAdditivity verify_subdivision_additivity(const WeightedGraph& g, const EdgeId& e,
                                                    double split);

}  // namespace ricci
