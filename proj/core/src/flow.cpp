#include "ricci/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ricci {

void FlowConfig::check() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidConfig("dt must be positive");
    if (sample_stride < 1) throw InvalidConfig("sample_stride must be at least 1");
    if (!(collapse_epsilon > 0.0)) throw InvalidConfig("collapse_epsilon must be positive");
    if (!(time_tolerance > 0.0)) throw InvalidConfig("time_tolerance must be positive");
    if (t_end && (!(*t_end >= 0.0) || !std::isfinite(*t_end)))
        throw InvalidConfig("t_end must be a nonnegative finite time");
}

const WeightedGraph& FlowTrace::epoch_graph(int epoch) const {
    if (epoch == 0) return initial_graph;
    return events[static_cast<std::size_t>(epoch) - 1].graph_after;
}

WeightedGraph FlowTrace::sample_graph(const FlowSample& s) const {
    return epoch_graph(s.epoch).with_lengths(s.lengths);
}

namespace {

constexpr double kStepFloor = 1e-15;

using Lengths = std::vector<double>;

// -K per edge at the given lengths; the graph supplies the fixed structure.
Lengths rhs(const WeightedGraph& base, const Lengths& lengths) {
    WeightedGraph g = base.with_lengths(lengths);
    CurvatureReport report = curvature_report(g);
    Lengths out(lengths.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        double k = report.curvature[i];
        if (!std::isfinite(k)) throw NumericalFailure("non-finite curvature on edge '" +
                                                      base.edges()[i].id + "'");
        out[i] = -k;
    }
    return out;
}

bool all_positive(const Lengths& v) {
    for (double x : v)
        if (!(x > 0.0)) return false;
    return true;
}

// Classical RK4. Returns nothing when a stage would need curvature at a
// nonpositive length, which counts as a collapse for step control.
std::optional<Lengths> rk4_step(const WeightedGraph& base, const Lengths& y, double h) {
    auto at = [&](const Lengths& k, double c) {
        Lengths z(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) z[i] = y[i] + c * h * k[i];
        return z;
    };
    Lengths k1 = rhs(base, y);
    Lengths z2 = at(k1, 0.5);
    if (!all_positive(z2)) return std::nullopt;
    Lengths k2 = rhs(base, z2);
    Lengths z3 = at(k2, 0.5);
    if (!all_positive(z3)) return std::nullopt;
    Lengths k3 = rhs(base, z3);
    Lengths z4 = at(k3, 1.0);
    if (!all_positive(z4)) return std::nullopt;
    Lengths k4 = rhs(base, z4);

    Lengths out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

class Integrator {
  public:
    Integrator(const WeightedGraph& g, const FlowConfig& cfg)
        : trace_{g, cfg, {}, {}, g, 0.0}, cfg_(cfg) {
        cfg_.check();
    }

    FlowTrace run() {
        WeightedGraph current = trace_.initial_graph;
        Lengths len(current.edge_count());
        for (std::size_t i = 0; i < len.size(); ++i) len[i] = current.edges()[i].length;
        double t = 0.0;
        record(current, len, t, SampleKind::initial);

        for (;;) {
            EpochEnd end = integrate_epoch(current, len, t);
            t = end.t;
            len = std::move(end.lengths);
            if (end.reason == EpochEnd::reached_t_end) {
                record(current, len, t, SampleKind::terminal);
                trace_.terminal_graph = current.with_lengths(len);
                trace_.terminal_time = t;
                return std::move(trace_);
            }

            // collapse localized at time t
            record(current, len, t, SampleKind::pre_event);
            if (!cfg_.surgery_enabled) {
                trace_.terminal_graph = current.with_lengths(len);
                trace_.terminal_time = t;
                return std::move(trace_);
            }

            double join = cfg_.collapse_epsilon + 1e3 * cfg_.time_tolerance;
            std::vector<EdgeId> collapsed;
            for (std::size_t i = 0; i < len.size(); ++i)
                if (len[i] <= join) collapsed.push_back(current.edges()[i].id);
            if (collapsed.empty())
                throw NumericalFailure("collapse localized at t=" + std::to_string(t) +
                                       " but no edge is at the collapse threshold");

            auto [next_graph, cmap] = current.with_lengths(len).contract(collapsed);
            trace_.events.push_back({t, collapsed, std::move(cmap), next_graph});

            if (next_graph.edge_count() == 0) {  // single point: the flow is over
                trace_.terminal_graph.reset();
                trace_.terminal_time = t;
                return std::move(trace_);
            }
            current = std::move(next_graph);
            len.resize(current.edge_count());
            for (std::size_t i = 0; i < len.size(); ++i) len[i] = current.edges()[i].length;
            record(current, len, t, SampleKind::post_event);
            if (cfg_.t_end && t >= *cfg_.t_end - kStepFloor) {
                trace_.terminal_graph = current;
                trace_.terminal_time = t;
                return std::move(trace_);
            }
        }
    }

  private:
    struct EpochEnd {
        enum Reason { reached_t_end, collapse } reason;
        double t;
        Lengths lengths;
    };

    bool admissible(const std::optional<Lengths>& step) const {
        if (!step) return false;
        for (double x : *step)
            if (!(x > cfg_.collapse_epsilon)) return false;
        return true;
    }

    EpochEnd integrate_epoch(const WeightedGraph& base, Lengths len, double t0) {
        double t = t0;
        long steps_since_sample = 0;
        for (;;) {
            double h = cfg_.dt;
            if (cfg_.t_end) {
                double remaining = *cfg_.t_end - t;
                if (remaining <= kStepFloor) return {EpochEnd::reached_t_end, t, std::move(len)};
                h = std::min(h, remaining);
            }

            auto attempt = rk4_step(base, len, h);
            if (admissible(attempt)) {
                len = std::move(*attempt);
                t += h;
                if (++steps_since_sample >= cfg_.sample_stride) {
                    record(base, len, t, SampleKind::regular);
                    steps_since_sample = 0;
                }
                continue;
            }

            // Collapse inside (t, t+h]: bisect the step size down to the
            // time tolerance. lo stays admissible, hi violates.
            double lo = 0.0, hi = h;
            while (hi - lo > cfg_.time_tolerance) {
                double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;  // step floor: no representable midpoint
                if (admissible(rk4_step(base, len, mid)))
                    lo = mid;
                else
                    hi = mid;
            }
            auto at_event = rk4_step(base, len, hi);
            double h_event = hi;
            if (!at_event) {
                if (lo <= kStepFloor) {
                    // already at the event from the previous epoch's state
                    at_event = len;
                    h_event = 0.0;
                } else {
                    at_event = rk4_step(base, len, lo);
                    h_event = lo;
                    if (!at_event)
                        throw NumericalFailure("event localization failed: step rejected at t=" +
                                               std::to_string(t));
                }
            }
            return {EpochEnd::collapse, t + h_event, std::move(*at_event)};
        }
    }

    void record(const WeightedGraph& base, const Lengths& len, double t, SampleKind kind) {
        WeightedGraph g = base.with_lengths(len);
        CurvatureReport report = curvature_report(g);
        FlowSample s;
        s.t = t;
        s.epoch = static_cast<int>(trace_.events.size());
        s.kind = kind;
        s.lengths = len;
        s.curvatures = report.curvature;
        s.total_length = g.total_length();
        double min_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < len.size(); ++i)
            min_ratio = std::min(min_ratio, report.curvature[i] / len[i]);
        s.min_curvature_length_ratio = min_ratio;
        trace_.samples.push_back(std::move(s));
    }

    FlowTrace trace_;
    FlowConfig cfg_;
};

}  // namespace

FlowTrace flow(const WeightedGraph& g, const FlowConfig& cfg) { return Integrator(g, cfg).run(); }

FlowTrace flow_with_surgery_to_point(const WeightedGraph& g, FlowConfig cfg) {
    cfg.surgery_enabled = true;
    cfg.t_end.reset();
    return flow(g, cfg);
}

double resistance_time_derivative(const WeightedGraph& g, const EdgeId& e) {
    const auto& rec = g.edge(e);
    if (rec.is_loop()) return 0.0;
    CurvatureReport report = curvature_report(g);
    std::map<EdgeId, double> grad = resistance_gradient(g, rec.u, rec.v);
    double d = 0.0;
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        d += grad.at(g.edges()[i].id) * (-report.curvature[i]);
    return d;
}

double curvature_time_derivative(const WeightedGraph& g, const EdgeId& e) {
    std::size_t idx = g.edge_index(e);
    const auto& rec = g.edges()[idx];
    if (rec.is_loop() || g.is_bridge_index(idx)) return 0.0;  // constant curvature

    ResistanceProfile profile(g);
    double omega = profile.omega(rec.u, rec.v);
    double k = curvature_of_edge(g, e);
    double domega = resistance_time_derivative(g, e);
    return -(omega / (rec.length * rec.length)) * k - domega / rec.length;
}

}  // namespace ricci
