#pragma once

#include <string>

#include "ricci/analysis.hpp"
#include "ricci/flow.hpp"
#include "ricci/graph.hpp"

namespace ricci::io {

/// Canonical graph JSON:
///   {"vertices": [<id>...],
///    "edges": [{"id": <str>, "u": <id>, "v": <id>, "length": <float>}...]}
/// Numeric labels are accepted and normalized to their decimal strings.
/// NaN, infinite and nonpositive lengths are rejected.
WeightedGraph parse_graph_json(const std::string& text);
std::string graph_to_json(const WeightedGraph& g);

/// Edge-list text: one edge per line "u v length [id]", '#' starts a
/// comment, the vertex set is inferred. Edges without an id get "e<k>" with
/// k the 0-based position of the edge in file order.
WeightedGraph parse_edge_list(const std::string& text);

/// Sniffs JSON (first non-space byte '{') vs. edge-list text.
WeightedGraph parse_graph(const std::string& text);

/// Trace CSV: header "t,edge_id,length,curvature", one row per edge per
/// sample, ordered by sample then edge id, floats at 17 significant digits.
std::string trace_to_csv(const FlowTrace& trace);

/// Events JSON: [{"t": ..., "contracted_edges": [...], "vertex_map": {...}}].
std::string events_to_json(const FlowTrace& trace);

/// {"terminal_time": ..., "terminal_state": "point" | graph object}.
std::string terminal_summary_json(const FlowTrace& trace);

std::string report_to_json(const VerificationReport& report);
std::string certificate_to_json(const EinsteinCertificate& cert);
std::string solve_result_to_json(const EinsteinSolveResult& result);

/// Write via a temp file in the target directory plus rename, so an
/// interrupted run never leaves a truncated file.
void write_file_atomic(const std::string& path, const std::string& content);

std::string format_double(double x);  // %.17g

}  // namespace ricci::io
