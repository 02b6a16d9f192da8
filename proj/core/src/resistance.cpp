#include "ricci/resistance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Cholesky>

namespace ricci {

namespace {

// Reduced weighted Laplacian with vertex 0 grounded; conductances 1/length,
// loops ignored.
Eigen::MatrixXd reduced_laplacian(const WeightedGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) {
        if (e.is_loop()) continue;
        auto a = static_cast<Eigen::Index>(g.vertex_index(e.u));
        auto b = static_cast<Eigen::Index>(g.vertex_index(e.v));
        double c = 1.0 / e.length;
        lap(a, a) += c;
        lap(b, b) += c;
        lap(a, b) -= c;
        lap(b, a) -= c;
    }
    return lap.bottomRightCorner(n - 1, n - 1);
}

Eigen::VectorXd solve_grounded(const WeightedGraph& g, const Eigen::LDLT<Eigen::MatrixXd>& ldlt,
                               std::size_t x, std::size_t y) {
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n - 1);
    if (x != 0) rhs(static_cast<Eigen::Index>(x) - 1) += 1.0;
    if (y != 0) rhs(static_cast<Eigen::Index>(y) - 1) -= 1.0;
    return ldlt.solve(rhs);
}

}  // namespace

ResistanceProfile::ResistanceProfile(const WeightedGraph& g) : g_(g) {
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    if (n <= 1) return;  // loops only: every ratio is pinned, nothing to solve
    Eigen::MatrixXd reduced = reduced_laplacian(g);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(reduced);
    if (ldlt.info() != Eigen::Success)
        throw NumericalFailure("reduced Laplacian factorization failed");
    reduced_inverse_ = ldlt.solve(Eigen::MatrixXd::Identity(n - 1, n - 1));
    if (!reduced_inverse_.allFinite())
        throw NumericalFailure("reduced Laplacian solve produced non-finite entries");
}

double ResistanceProfile::omega_by_index(std::size_t x, std::size_t y) const {
    if (x == y) return 0.0;
    auto entry = [&](std::size_t a, std::size_t b) -> double {
        if (a == 0 || b == 0) return 0.0;
        return reduced_inverse_(static_cast<Eigen::Index>(a) - 1,
                                static_cast<Eigen::Index>(b) - 1);
    };
    return entry(x, x) + entry(y, y) - 2.0 * entry(x, y);
}

double ResistanceProfile::omega(const VertexId& x, const VertexId& y) const {
    return omega_by_index(g_.vertex_index(x), g_.vertex_index(y));
}

double ResistanceProfile::ratio_by_index(std::size_t edge_idx) const {
    const auto& e = g_.edges()[edge_idx];
    if (e.is_loop()) return 0.0;
    if (g_.is_bridge_index(edge_idx)) return 1.0;
    double r = omega(e.u, e.v) / e.length;
    return std::clamp(r, 0.0, 1.0);
}

double ResistanceProfile::ratio(const EdgeId& e) const { return ratio_by_index(g_.edge_index(e)); }

double ResistanceProfile::omega_of_edge(const EdgeId& e) const {
    std::size_t idx = g_.edge_index(e);
    const auto& rec = g_.edges()[idx];
    if (rec.is_loop()) return 0.0;
    if (g_.is_bridge_index(idx)) return rec.length;
    return omega(rec.u, rec.v);
}

ResistanceProfile resistance_profile(const WeightedGraph& g) { return ResistanceProfile(g); }

namespace {

// Sum over spanning trees of the product of non-loop edge lengths outside
// the tree, by enumeration of (n-1)-subsets with a union-find acyclicity
// check. Vertex/edge indices refer to a plain endpoint list.
double tree_sum(std::size_t n_vertices, const std::vector<std::pair<std::size_t, std::size_t>>& ends,
                const std::vector<double>& lengths) {
    const std::size_t m = ends.size();
    const std::size_t k = n_vertices - 1;
    if (k > m) return 0.0;

    double total = 0.0;
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    std::vector<std::size_t> uf(n_vertices);
    for (;;) {
        // acyclicity of the picked subset; k edges + acyclic => spanning tree
        std::iota(uf.begin(), uf.end(), 0);
        auto find = [&](std::size_t a) {
            while (uf[a] != a) a = uf[a] = uf[uf[a]];
            return a;
        };
        bool acyclic = true;
        for (std::size_t idx : pick) {
            auto a = find(ends[idx].first);
            auto b = find(ends[idx].second);
            if (a == b) {
                acyclic = false;
                break;
            }
            uf[a] = b;
        }
        if (acyclic) {
            double outside = 1.0;
            std::size_t p = 0;
            for (std::size_t idx = 0; idx < m; ++idx) {
                if (p < k && pick[p] == idx) {
                    ++p;
                    continue;
                }
                outside *= lengths[idx];
            }
            total += outside;
        }
        // next k-combination of {0..m-1}
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == m - k + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return total;
}

}  // namespace

double tree_polynomial(const WeightedGraph& g, std::size_t cap) {
    if (g.non_loop_edge_count() > cap)
        throw InstanceTooLarge("spanning-tree enumeration capped at " + std::to_string(cap) +
                               " non-loop edges, graph has " +
                               std::to_string(g.non_loop_edge_count()));
    double loop_product = 1.0;
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    std::vector<double> lengths;
    for (const auto& e : g.edges()) {
        if (e.is_loop()) {
            loop_product *= e.length;
        } else {
            ends.emplace_back(g.vertex_index(e.u), g.vertex_index(e.v));
            lengths.push_back(e.length);
        }
    }
    return loop_product * tree_sum(g.vertex_count(), ends, lengths);
}

double resistance_by_trees(const WeightedGraph& g, const VertexId& x, const VertexId& y,
                           std::size_t cap) {
    std::size_t xi = g.vertex_index(x);
    std::size_t yi = g.vertex_index(y);
    if (xi == yi) return 0.0;
    if (g.non_loop_edge_count() > cap)
        throw InstanceTooLarge("spanning-tree enumeration capped at " + std::to_string(cap) +
                               " non-loop edges, graph has " +
                               std::to_string(g.non_loop_edge_count()));

    // Loops of G multiply both polynomials; cancel them up front. Former x-y
    // edges become loops of G/xy and stay in every complement product, which
    // the identified endpoint list below realizes on its own.
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    std::vector<double> lengths;
    for (const auto& e : g.edges()) {
        if (e.is_loop()) continue;
        ends.emplace_back(g.vertex_index(e.u), g.vertex_index(e.v));
        lengths.push_back(e.length);
    }

    double denom = tree_sum(g.vertex_count(), ends, lengths);

    // identify y with x: relabel y->x and shift indices above y down
    std::vector<std::pair<std::size_t, std::size_t>> merged = ends;
    auto relabel = [&](std::size_t v) -> std::size_t {
        if (v == yi) v = xi;
        return v > yi ? v - 1 : v;
    };
    for (auto& [a, b] : merged) {
        a = relabel(a);
        b = relabel(b);
    }
    double numer = tree_sum(g.vertex_count() - 1, merged, lengths);
    return numer / denom;
}

CurrentVector unit_current(const WeightedGraph& g, const VertexId& x, const VertexId& y) {
    std::size_t xi = g.vertex_index(x);
    std::size_t yi = g.vertex_index(y);
    if (xi == yi) throw SameVertex("unit current requires distinct vertices, got '" + x + "'");

    Eigen::LDLT<Eigen::MatrixXd> ldlt(reduced_laplacian(g));
    if (ldlt.info() != Eigen::Success)
        throw NumericalFailure("reduced Laplacian factorization failed");
    Eigen::VectorXd phi_reduced = solve_grounded(g, ldlt, xi, yi);
    if (!phi_reduced.allFinite())
        throw NumericalFailure("potential solve produced non-finite entries");

    auto potential = [&](std::size_t v) -> double {
        return v == 0 ? 0.0 : phi_reduced(static_cast<Eigen::Index>(v) - 1);
    };

    CurrentVector cv;
    cv.source = x;
    cv.sink = y;
    cv.current.resize(g.edge_count(), 0.0);
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edges()[i];
        if (e.is_loop()) continue;
        cv.current[i] =
            (potential(g.vertex_index(e.u)) - potential(g.vertex_index(e.v))) / e.length;
    }
    return cv;
}

std::map<EdgeId, double> resistance_gradient(const WeightedGraph& g, const VertexId& x,
                                             const VertexId& y) {
    CurrentVector cv = unit_current(g, x, y);
    std::map<EdgeId, double> grad;
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        grad[g.edges()[i].id] = cv.current[i] * cv.current[i];
    return grad;
}

}  // namespace ricci
