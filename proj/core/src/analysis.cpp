#include "ricci/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ricci/resistance.hpp"

namespace ricci {

namespace {

constexpr double kFdStep = 1e-6;
constexpr double kFdTol = 1e-6;

// deterministic across platforms, unlike uniform_real_distribution
double unit_uniform(std::mt19937& rng) { return (rng() + 0.5) / 4294967296.0; }

CheckResult make_check(std::string name, std::string statement, double violation, double tol) {
    CheckResult c;
    c.name = std::move(name);
    c.statement = std::move(statement);
    c.max_violation = violation;
    c.tolerance = tol;
    c.passed = violation <= tol;
    return c;
}

}  // namespace

bool VerificationReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

namespace checks {

CheckResult foster_sum(const WeightedGraph& g, const std::vector<double>& ratio_by_edge,
                       double tol) {
    double sum = 0.0;
    for (double r : ratio_by_edge) sum += r;
    double expected = static_cast<double>(g.vertex_count()) - 1.0;
    return make_check("foster_sum", "resistance ratios over all edges sum to |V| - 1",
                      std::abs(sum - expected), tol);
}

}  // namespace checks

VerificationReport verify_all(const WeightedGraph& g, double tol, unsigned seed,
                              std::size_t tree_cap) {
    VerificationReport report;
    std::mt19937 rng(seed);
    ResistanceProfile profile(g);
    CurvatureReport curv = curvature_report(profile);
    const std::size_t n = g.vertex_count();
    const std::size_t m = g.edge_count();

    std::vector<double> ratios(m);
    for (std::size_t i = 0; i < m; ++i) ratios[i] = profile.ratio_by_index(i);

    // curvature sum = 1 (finite graphs with at least one edge)
    if (m > 0)
        report.checks.push_back(make_check("curvature_sum", "edge curvatures sum to 1",
                                           std::abs(curv.total_curvature - 1.0), tol));

    {
        double worst = 0.0;
        for (double k : curv.curvature) worst = std::max(worst, std::abs(k) - 1.0);
        report.checks.push_back(
            make_check("curvature_bounds", "every edge curvature lies in [-1, 1]",
                       std::max(0.0, worst), tol));
    }

    report.checks.push_back(checks::foster_sum(g, ratios, tol));

    {
        double sum = 0.0;
        for (double f : curv.foster) sum += f;
        double expected = static_cast<double>(m) - static_cast<double>(n) + 1.0;
        report.checks.push_back(make_check("foster_coefficient_sum",
                                           "Foster coefficients sum to the cycle rank",
                                           std::abs(sum - expected), tol));
    }

    {
        // p_u from arcs vs. the closed form 1 - (1/2) sum of incident ratios
        double worst = 0.0;
        std::map<VertexId, double> half_ratio_sum;
        for (const auto& v : g.vertices()) half_ratio_sum[v] = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& e = g.edges()[i];
            if (e.is_loop()) continue;
            half_ratio_sum[e.u] += 0.5 * ratios[i];
            half_ratio_sum[e.v] += 0.5 * ratios[i];
        }
        double p_total = 0.0;
        for (const auto& [v, p] : curv.vertex_curvature) {
            worst = std::max(worst, std::abs(p - (1.0 - half_ratio_sum.at(v))));
            p_total += p;
        }
        if (m > 0) worst = std::max(worst, std::abs(p_total - curv.total_curvature));
        report.checks.push_back(make_check(
            "vertex_decomposition",
            "scalar curvature equals 1 - half the incident ratio sum and totals the edge sum",
            worst, tol));
    }

    {
        double worst = 0.0;
        for (double lambda : {0.1, 3.0, 100.0}) {
            CurvatureReport scaled = curvature_report(g.rescaled(lambda));
            for (std::size_t i = 0; i < m; ++i)
                worst = std::max(worst, std::abs(scaled.curvature[i] - curv.curvature[i]));
        }
        report.checks.push_back(make_check(
            "rescaling_invariance", "curvature is unchanged by uniform rescaling of lengths",
            worst, tol));
    }

    {
        double worst = 0.0;
        for (double lambda : {0.5, 2.0, 10.0}) {
            ResistanceProfile scaled(g.rescaled(lambda));
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = x + 1; y < n; ++y) {
                    double expect = lambda * profile.omega_by_index(x, y);
                    double rel = std::abs(scaled.omega_by_index(x, y) - expect) /
                                 std::max(expect, std::numeric_limits<double>::min());
                    worst = std::max(worst, rel);
                }
        }
        report.checks.push_back(make_check(
            "resistance_homogeneity", "effective resistance is homogeneous of degree one",
            worst, tol));
    }

    {
        // resistance positivity and ratio pinning
        double worst = 0.0;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = x + 1; y < n; ++y)
                worst = std::max(worst, -profile.omega_by_index(x, y));
        for (std::size_t i = 0; i < m; ++i) {
            const auto& e = g.edges()[i];
            if (e.is_loop())
                worst = std::max(worst, std::abs(ratios[i]));
            else if (g.is_bridge_index(i))
                worst = std::max(worst, std::abs(ratios[i] - 1.0));
            else
                worst = std::max(worst, std::max(ratios[i] - 1.0, -ratios[i]));
        }
        report.checks.push_back(make_check(
            "ratio_range", "ratios lie in [0,1], exactly 1 on bridges and 0 on loops",
            std::max(0.0, worst), tol));
    }

    {
        // Euler identity and Rayleigh sign, per non-loop edge
        double euler_worst = 0.0;
        double rayleigh_worst = 0.0;
        for (const auto& e : g.edges()) {
            if (e.is_loop()) continue;
            auto grad = resistance_gradient(g, e.u, e.v);
            double sum = 0.0;
            for (const auto& f : g.edges()) {
                double gf = grad.at(f.id);
                rayleigh_worst = std::max(rayleigh_worst, -gf);
                sum += f.length * gf;
            }
            euler_worst = std::max(euler_worst, std::abs(sum - profile.omega(e.u, e.v)));
        }
        report.checks.push_back(make_check(
            "euler_identity", "lengths dotted with the resistance gradient give the resistance",
            euler_worst, std::max(tol, 1e-8)));
        report.checks.push_back(make_check(
            "rayleigh", "resistance gradients are nonnegative", std::max(0.0, rayleigh_worst),
            0.0));
    }

    {
        // parallel combination rule on non-bridge, non-loop edges
        double worst = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& e = g.edges()[i];
            if (e.is_loop() || g.is_bridge_index(i)) continue;
            ResistanceProfile del(g.without_edge(e.id));
            double omega_del = del.omega(e.u, e.v);
            double expected = e.length * omega_del / (e.length + omega_del);
            worst = std::max(worst, std::abs(profile.omega(e.u, e.v) - expected));
        }
        report.checks.push_back(make_check(
            "parallel_rule", "an edge in parallel with the rest of the graph combines as resistors",
            worst, tol));
    }

    if (g.non_loop_edge_count() <= tree_cap) {
        double worst = 0.0;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = x + 1; y < n; ++y) {
                double by_trees = resistance_by_trees(g, g.vertices()[x], g.vertices()[y], tree_cap);
                worst = std::max(worst, std::abs(profile.omega_by_index(x, y) - by_trees));
            }
        report.checks.push_back(make_check(
            "tree_oracle", "Laplacian resistances match the spanning-tree ratio", worst,
            std::max(tol, 1e-10)));
    }

    {
        // gradient of omega vs. central differences, one source-sink pair per edge
        double worst = 0.0;
        for (const auto& e : g.edges()) {
            if (e.is_loop()) continue;
            auto grad = resistance_gradient(g, e.u, e.v);
            for (const auto& f : g.edges()) {
                if (f.length <= 2.0 * kFdStep) continue;
                double fd = finite_difference(
                    [&](const WeightedGraph& gg) {
                        return ResistanceProfile(gg).omega(e.u, e.v);
                    },
                    g, f.id, kFdStep);
                worst = std::max(worst, std::abs(grad.at(f.id) - fd));
            }
        }
        report.checks.push_back(make_check(
            "gradient_fd", "squared unit currents match finite differences of the resistance",
            worst, kFdTol));
    }

    {
        double fd_worst = 0.0;
        double sign_worst = 0.0;
        for (const auto& e : g.edges()) {
            auto partials = curvature_partials(g, e.id);
            for (const auto& f : g.edges()) {
                double p = partials.at(f.id);
                if (f.id == e.id)
                    sign_worst = std::max(sign_worst, -p);
                else
                    sign_worst = std::max(sign_worst, p);
                if (f.length <= 2.0 * kFdStep) continue;
                double fd = finite_difference(
                    [&](const WeightedGraph& gg) { return curvature_of_edge(gg, e.id); }, g,
                    f.id, kFdStep);
                fd_worst = std::max(fd_worst, std::abs(p - fd));
            }
        }
        report.checks.push_back(make_check(
            "curvature_partials_fd", "closed-form curvature partials match finite differences",
            fd_worst, kFdTol));
        report.checks.push_back(make_check(
            "curvature_partials_signs",
            "curvature increases in its own length and decreases in the others",
            std::max(0.0, sign_worst), tol));
    }

    {
        double worst = 0.0;
        const double fixed_splits[] = {0.25, 0.5, 0.9};
        for (const auto& e : g.edges()) {
            if (e.is_loop()) continue;
            double splits[] = {fixed_splits[rng() % 3], 0.1 + 0.8 * unit_uniform(rng)};
            for (double s : splits) {
                SubdivisionAdditivity sub = verify_subdivision_additivity(g, e.id, s);
                worst = std::max(worst, std::abs(sub.curvature_whole - sub.curvature_parts));
                worst = std::max(worst, std::abs(sub.foster_whole - sub.foster_parts));
            }
        }
        report.checks.push_back(make_check(
            "subdivision_additivity",
            "curvature and Foster coefficient are additive under edge subdivision", worst, tol));
    }

    {
        // Kirchhoff current law at every vertex, one pair per edge
        double worst = 0.0;
        for (const auto& e : g.edges()) {
            if (e.is_loop()) continue;
            CurrentVector cv = unit_current(g, e.u, e.v);
            std::map<VertexId, double> net;
            for (const auto& v : g.vertices()) net[v] = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const auto& f = g.edges()[i];
                if (f.is_loop()) continue;
                net[f.u] -= cv.current[i];
                net[f.v] += cv.current[i];
            }
            net[e.u] += 1.0;
            net[e.v] -= 1.0;
            for (const auto& [v, r] : net) worst = std::max(worst, std::abs(r));
        }
        report.checks.push_back(make_check(
            "kirchhoff", "unit currents satisfy the current law at every vertex", worst,
            std::max(tol, 1e-9)));
    }

    return report;
}

double finite_difference(const std::function<double(const WeightedGraph&)>& fn,
                         const WeightedGraph& g, const EdgeId& e, double h) {
    std::size_t idx = g.edge_index(e);
    double length = g.edges()[idx].length;
    if (!(h > 0.0) || h >= length)
        throw StepTooLarge("finite-difference step " + std::to_string(h) +
                           " is not below the length of edge '" + e + "'");
    std::vector<double> lengths(g.edge_count());
    for (std::size_t i = 0; i < lengths.size(); ++i) lengths[i] = g.edges()[i].length;

    lengths[idx] = length + h;
    double up = fn(g.with_lengths(lengths));
    lengths[idx] = length - h;
    double down = fn(g.with_lengths(lengths));
    return (up - down) / (2.0 * h);
}

EinsteinCertificate einstein_check(const WeightedGraph& g, double tol) {
    CurvatureReport curv = curvature_report(g);
    EinsteinCertificate cert;
    cert.lambda = 1.0 / g.total_length();
    cert.tolerance = tol;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        double r = curv.curvature[i] - cert.lambda * g.edges()[i].length;
        cert.residuals[g.edges()[i].id] = r;
        cert.max_abs_residual = std::max(cert.max_abs_residual, std::abs(r));
    }
    cert.is_einstein = cert.max_abs_residual <= tol;
    return cert;
}

EinsteinSolveResult einstein_solve(const WeightedGraph& g, int max_iter, double tol,
                                   double theta) {
    if (!(theta > 0.0) || !(theta <= 1.0)) throw InvalidConfig("theta must lie in (0, 1]");
    constexpr double kFloor = 1e-6;
    const std::size_t m = g.edge_count();

    auto normalized = [&](std::vector<double> lengths) {
        double sum = 0.0;
        for (double l : lengths) sum += l;
        for (double& l : lengths) l /= sum;
        return lengths;
    };

    std::vector<double> lengths(m);
    for (std::size_t i = 0; i < m; ++i) lengths[i] = g.edges()[i].length;
    lengths = normalized(std::move(lengths));

    EinsteinSolveResult result;
    result.certificate = einstein_check(g.with_lengths(lengths), tol);
    result.certificate.tolerance = tol;
    auto remember = [&](const std::vector<double>& cand, const EinsteinCertificate& cert) {
        if (result.lengths.empty() ||
            cert.max_abs_residual < result.certificate.max_abs_residual) {
            result.certificate = cert;
            result.lengths.clear();
            for (std::size_t i = 0; i < m; ++i) result.lengths[g.edges()[i].id] = cand[i];
        }
    };
    remember(lengths, result.certificate);

    for (int iter = 1; iter <= max_iter; ++iter) {
        CurvatureReport curv = curvature_report(g.with_lengths(lengths));
        for (std::size_t i = 0; i < m; ++i) {
            double target = std::max(curv.curvature[i], kFloor);
            lengths[i] = (1.0 - theta) * lengths[i] + theta * target;
        }
        lengths = normalized(std::move(lengths));

        EinsteinCertificate cert = einstein_check(g.with_lengths(lengths), tol);
        remember(lengths, cert);
        result.iterations = iter;
        if (cert.max_abs_residual <= tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

VerificationReport monitor_trace(const FlowTrace& trace, double tol) {
    VerificationReport report;
    const auto& samples = trace.samples;

    {
        // total length decreases at rate one; surgeries discard the length of
        // the contracted edges, measured from the samples around each event
        double worst = 0.0;
        double discarded = 0.0;
        double total0 = samples.front().total_length;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (i > 0 && samples[i].epoch != samples[i - 1].epoch)
                discarded += samples[i - 1].total_length - samples[i].total_length;
            double expected = total0 - samples[i].t - discarded;
            worst = std::max(worst, std::abs(samples[i].total_length - expected));
        }
        report.checks.push_back(make_check(
            "total_length_rate", "total length decreases at rate one between surgeries", worst,
            tol));
    }

    {
        // |K| <= 1 bounds each length's speed within an epoch
        double worst = 0.0;
        std::size_t epoch_start = 0;
        for (std::size_t i = 1; i <= samples.size(); ++i) {
            if (i == samples.size() || samples[i].epoch != samples[epoch_start].epoch) {
                for (std::size_t j = epoch_start + 1; j < i; ++j) {
                    double dt = samples[j].t - samples[epoch_start].t;
                    for (std::size_t e = 0; e < samples[j].lengths.size(); ++e) {
                        double l0 = samples[epoch_start].lengths[e];
                        double l = samples[j].lengths[e];
                        worst = std::max(worst, l - (l0 + dt));
                        worst = std::max(worst, (l0 - dt) - l);
                    }
                }
                epoch_start = i;
            }
        }
        report.checks.push_back(make_check(
            "length_bounds", "lengths move at most at unit speed", std::max(0.0, worst), tol));
    }

    double initial_min_curv = std::numeric_limits<double>::infinity();
    for (double k : samples.front().curvatures) initial_min_curv = std::min(initial_min_curv, k);
    bool nonneg_start = initial_min_curv >= -1e-12;

    {
        // nonnegative curvature is preserved up to the first surgery
        double worst = 0.0;
        if (nonneg_start) {
            for (const auto& s : samples) {
                if (s.epoch != 0) break;
                for (double k : s.curvatures) worst = std::max(worst, -k);
            }
        }
        report.checks.push_back(make_check(
            "nonnegative_preserved",
            "initially nonnegative curvature stays nonnegative before the first surgery",
            std::max(0.0, worst), tol));
    }

    {
        double worst = 0.0;
        const FlowSample* prev = nullptr;
        for (const auto& s : samples) {
            if (s.epoch != 0) break;
            if (prev)
                worst = std::max(worst, prev->min_curvature_length_ratio -
                                            s.min_curvature_length_ratio);
            prev = &s;
        }
        report.checks.push_back(make_check(
            "min_ratio_monotone",
            "the minimum curvature-to-length ratio is nondecreasing before the first surgery",
            std::max(0.0, worst), tol));
    }

    {
        // d omega/dt <= 0 wherever the sample is nonnegatively curved; and at
        // the edge minimizing K/l, d omega/dt + omega K/l <= 0 at every sample
        double sign_worst = 0.0;
        double min_edge_worst = 0.0;
        for (const auto& s : samples) {
            WeightedGraph g = trace.sample_graph(s);
            std::size_t argmin = 0;
            double best = std::numeric_limits<double>::infinity();
            double min_curv = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < s.lengths.size(); ++i) {
                double r = s.curvatures[i] / s.lengths[i];
                if (r < best) {
                    best = r;
                    argmin = i;
                }
                min_curv = std::min(min_curv, s.curvatures[i]);
            }
            if (min_curv >= -1e-12) {
                for (const auto& e : g.edges()) {
                    if (e.is_loop()) continue;
                    sign_worst = std::max(sign_worst, resistance_time_derivative(g, e.id));
                }
            }
            const auto& em = g.edges()[argmin];
            if (!em.is_loop()) {
                ResistanceProfile profile(g);
                double lhs = resistance_time_derivative(g, em.id) +
                             profile.omega_of_edge(em.id) * s.curvatures[argmin] /
                                 s.lengths[argmin];
                min_edge_worst = std::max(min_edge_worst, lhs);
            }
        }
        report.checks.push_back(make_check(
            "resistance_derivative_sign",
            "resistances are nonincreasing along nonnegatively curved flow",
            std::max(0.0, sign_worst), 1e-10));
        report.checks.push_back(make_check(
            "min_ratio_edge_inequality",
            "at the minimizing edge the resistance derivative is dominated",
            std::max(0.0, min_edge_worst), tol));
    }

    return report;
}

}  // namespace ricci
