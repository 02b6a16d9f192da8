#include "ricci/curvature.hpp"

#include <cmath>

namespace ricci {

double CurvatureReport::curvature_of(const EdgeId& e) const {
    for (std::size_t i = 0; i < edge_ids.size(); ++i)
        if (edge_ids[i] == e) return curvature[i];
    throw UnknownEdge("unknown edge '" + e + "'");
}

double CurvatureReport::foster_of(const EdgeId& e) const {
    for (std::size_t i = 0; i < edge_ids.size(); ++i)
        if (edge_ids[i] == e) return foster[i];
    throw UnknownEdge("unknown edge '" + e + "'");
}

CurvatureReport curvature_report(const ResistanceProfile& profile) {
    const WeightedGraph& g = profile.graph();
    CurvatureReport report;
    const std::size_t m = g.edge_count();
    report.edge_ids.reserve(m);
    report.curvature.reserve(m);
    report.foster.reserve(m);
    report.arc.reserve(m);
    for (const auto& v : g.vertices()) report.vertex_curvature[v] = 0.0;

    for (std::size_t i = 0; i < m; ++i) {
        const auto& e = g.edges()[i];
        double ratio = profile.ratio_by_index(i);
        double inv_du = 1.0 / g.degree(e.u);
        double inv_dv = 1.0 / g.degree(e.v);
        // a loop is two arcs at the same vertex, each 1/deg - ratio/2 with ratio 0
        double arc_uv = inv_du - 0.5 * ratio;
        double arc_vu = inv_dv - 0.5 * ratio;
        double k = arc_uv + arc_vu;

        report.edge_ids.push_back(e.id);
        report.curvature.push_back(k);
        report.foster.push_back(1.0 - ratio);
        report.arc.emplace_back(arc_uv, arc_vu);
        report.vertex_curvature[e.u] += arc_uv;
        report.vertex_curvature[e.v] += arc_vu;
        report.total_curvature += k;
    }
    return report;
}

CurvatureReport curvature_report(const WeightedGraph& g) {
    return curvature_report(ResistanceProfile(g));
}

double curvature_of_edge(const WeightedGraph& g, const EdgeId& e) {
    std::size_t idx = g.edge_index(e);
    const auto& rec = g.edges()[idx];
    ResistanceProfile profile(g);
    return 1.0 / g.degree(rec.u) + 1.0 / g.degree(rec.v) - profile.ratio_by_index(idx);
}

std::map<EdgeId, double> curvature_partials(const WeightedGraph& g, const EdgeId& e) {
    std::size_t idx = g.edge_index(e);
    const auto& rec = g.edges()[idx];

    std::map<EdgeId, double> partials;
    for (const auto& f : g.edges()) partials[f.id] = 0.0;
    if (rec.is_loop() || g.is_bridge_index(idx)) return partials;  // constant curvature

    // omega across e in the edge-deleted graph, and how it moves with each
    // other length (squared unit current in the deleted graph).
    WeightedGraph deleted = g.without_edge(e);
    ResistanceProfile deleted_profile(deleted);
    double omega_del = deleted_profile.omega(rec.u, rec.v);
    double denom = (rec.length + omega_del) * (rec.length + omega_del);

    std::map<EdgeId, double> grad_del = resistance_gradient(deleted, rec.u, rec.v);
    for (auto& [fid, value] : partials) {
        if (fid == e)
            value = omega_del / denom;
        else
            value = -rec.length / denom * grad_del.at(fid);
    }
    return partials;
}

SubdivisionAdditivity verify_subdivision_additivity(const WeightedGraph& g, const EdgeId& e,
                                                    double split) {
    std::size_t idx = g.edge_index(e);
    ResistanceProfile profile(g);
    CurvatureReport whole = curvature_report(profile);

    WeightedGraph h = g.subdivide(e, split);
    CurvatureReport parts = curvature_report(h);

    SubdivisionAdditivity out;
    out.curvature_whole = whole.curvature[idx];
    out.foster_whole = whole.foster[idx];
    for (const auto& rec : h.edges()) {
        if (g.has_edge(rec.id)) continue;  // the two pieces are the fresh ids
        out.curvature_parts += parts.curvature_of(rec.id);
        out.foster_parts += parts.foster_of(rec.id);
    }
    return out;
}

}  // namespace ricci
