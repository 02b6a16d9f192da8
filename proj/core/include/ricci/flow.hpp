#pragma once

#include <optional>
#include <vector>

#include "ricci/curvature.hpp"
#include "ricci/graph.hpp"

namespace ricci {

/// Controls for the curvature flow integrator dl_e/dt = -K_e.
struct FlowConfig {
    /// Integrate up to this time; empty means run until collapse.
    std::optional<double> t_end;
    double dt = 1e-3;             // base RK4 step
    int sample_stride = 10;       // record a sample every this many accepted steps
    double collapse_epsilon = 1e-9;
    bool surgery_enabled = false;
    double time_tolerance = 1e-12;  // event-localization bisection width

    void check() const;  // throws InvalidConfig
};

enum class SampleKind { initial, regular, pre_event, post_event, terminal };

/// One recorded state of the flow. Lengths and curvatures are indexed like
/// the edges of the epoch graph (initial graph for epoch 0, the post-surgery
/// snapshot of events[k-1] for epoch k).
struct FlowSample {
    double t = 0.0;
    int epoch = 0;
    SampleKind kind = SampleKind::regular;
    std::vector<double> lengths;
    std::vector<double> curvatures;
    double total_length = 0.0;
    double min_curvature_length_ratio = 0.0;  // min over edges of K_e / l_e
};

/// An edge-collapse surgery: the contracted edges had length <=
/// collapse_epsilon (within localization tolerance) at time t.
struct SurgeryEvent {
    double t = 0.0;
    std::vector<EdgeId> contracted_edges;
    ContractionMap map;
    WeightedGraph graph_after;
};

struct FlowTrace {
    WeightedGraph initial_graph;
    FlowConfig config;
    std::vector<FlowSample> samples;
    std::vector<SurgeryEvent> events;
    /// Graph at the final time; empty when the flow collapsed to a point.
    std::optional<WeightedGraph> terminal_graph;
    double terminal_time = 0.0;

    bool collapsed_to_point() const { return !terminal_graph.has_value(); }
    const WeightedGraph& epoch_graph(int epoch) const;
    /// Graph carrying a sample's lengths, ready for curvature or resistance
    /// evaluation at that instant.
    WeightedGraph sample_graph(const FlowSample& s) const;
};

/// Integrate the curvature flow with classical RK4 at base step dt. A step
/// that would drive any length to collapse_epsilon or below is rejected and
/// the collapse time is localized by bisection on the step size. At a
/// collapse: with surgery enabled the collapsed edges are contracted and the
/// flow continues on the quotient graph; otherwise the trace ends there.
FlowTrace flow(const WeightedGraph& g, const FlowConfig& cfg);

/// Run with surgery until the graph is a single point. The terminal time
/// equals the initial total length up to the length discarded at surgeries.
FlowTrace flow_with_surgery_to_point(const WeightedGraph& g, FlowConfig cfg = {});

/// d omega_e / dt under the flow, via the chain rule with the squared
/// unit-current gradient: sum_f (i_f)^2 * (-K_f). Zero on loops; equals
/// -K_e on bridges.
double resistance_time_derivative(const WeightedGraph& g, const EdgeId& e);

/// dK_e/dt = -(omega_e / l_e^2) K_e - (1/l_e) d omega_e/dt. Loops and
/// bridges have constant curvature, so the derivative is 0 there.
double curvature_time_derivative(const WeightedGraph& g, const EdgeId& e);

}  // namespace ricci
