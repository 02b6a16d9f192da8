#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "ricci/analysis.hpp"
#include "ricci/curvature.hpp"
#include "support/graphs.hpp"

using namespace ricci;
namespace ts = testsupport;

namespace {

void check_curvatures(const WeightedGraph& g, const std::map<EdgeId, double>& expected,
                      double tol = 1e-9) {
    CurvatureReport report = curvature_report(g);
    for (const auto& [id, value] : expected)
        CHECK(report.curvature_of(id) == doctest::Approx(value).epsilon(tol));
}

}  // namespace

TEST_CASE("six-edge tree curvatures") {
    check_curvatures(ts::tree6(), {{"ab", 1.0 / 2.0},
                                   {"bc", -1.0 / 6.0},
                                   {"cd", -1.0 / 6.0},
                                   {"de", 0.0},
                                   {"ef", 1.0 / 2.0},
                                   {"cg", 1.0 / 3.0}});
}

TEST_CASE("barbell curvatures, full and minimal") {
    check_curvatures(ts::barbell6(), {{"e12", 1.0 / 3.0},
                                      {"e13", 1.0 / 6.0},
                                      {"e23", 1.0 / 6.0},
                                      {"e34", -1.0 / 3.0},
                                      {"e45", 1.0 / 6.0},
                                      {"e46", 1.0 / 6.0},
                                      {"e56", 1.0 / 3.0}});
    // loop degree convention: each loop contributes 2, so K_loop = 2/3 here
    check_curvatures(ts::barbell_minimal(),
                     {{"loopx", 2.0 / 3.0}, {"loopy", 2.0 / 3.0}, {"bridge", -1.0 / 3.0}});
}

TEST_CASE("house curvatures") {
    check_curvatures(ts::house(), {{"floor", 3.0 / 11.0},
                                   {"wall_r", 7.0 / 66.0},
                                   {"wall_l", 7.0 / 66.0},
                                   {"mid", 4.0 / 33.0},
                                   {"roof_l", 13.0 / 66.0},
                                   {"roof_r", 13.0 / 66.0}});
}

TEST_CASE("theta curvatures") {
    check_curvatures(ts::theta312(),
                     {{"t3", 16.0 / 33.0}, {"t1", 4.0 / 33.0}, {"t2", 13.0 / 33.0}});
    CHECK(curvature_of_edge(ts::theta312(), "t2") == doctest::Approx(13.0 / 33.0).epsilon(1e-12));
}

TEST_CASE("cycle curvatures are proportional to length") {
    for (std::size_t n : {3u, 4u, 5u, 6u, 7u}) {
        CurvatureReport report = curvature_report(ts::unit_cycle(n));
        for (double k : report.curvature)
            CHECK(k == doctest::Approx(1.0 / static_cast<double>(n)).epsilon(1e-12));
    }
    std::vector<double> lengths{0.4, 2.5, 1.1, 0.9};
    double total = 0.4 + 2.5 + 1.1 + 0.9;
    CurvatureReport report = curvature_report(ts::cycle(lengths));
    for (std::size_t i = 0; i < lengths.size(); ++i)
        CHECK(report.curvature[i] == doctest::Approx(lengths[i] / total).epsilon(1e-12));
}

TEST_CASE("curvature sum is 1 and bounds hold on the corpus") {
    for (const auto& g : ts::random_corpus(ts::kCorpusSeed + 20, 60)) {
        CurvatureReport report = curvature_report(g);
        CHECK(report.total_curvature == doctest::Approx(1.0).epsilon(1e-9));
        for (double k : report.curvature) {
            CHECK(k <= 1.0 + 1e-12);
            CHECK(k >= -1.0 - 1e-12);
        }
    }
}

TEST_CASE("rescaling leaves curvature unchanged") {
    for (const auto& g : ts::random_corpus(ts::kCorpusSeed + 21, 10)) {
        CurvatureReport base = curvature_report(g);
        for (double lambda : {0.1, 3.0, 100.0}) {
            CurvatureReport scaled = curvature_report(g.rescaled(lambda));
            for (std::size_t i = 0; i < base.curvature.size(); ++i)
                CHECK(std::abs(scaled.curvature[i] - base.curvature[i]) <= 1e-10);
        }
    }
}

TEST_CASE("Foster coefficients: pinned cases and cycle-rank sum") {
    WeightedGraph barbell = ts::barbell_minimal();
    CurvatureReport report = curvature_report(barbell);
    CHECK(report.foster_of("bridge") == 0.0);
    CHECK(report.foster_of("loopx") == 1.0);

    for (const auto& g : ts::random_corpus(ts::kCorpusSeed + 22, 40)) {
        CurvatureReport r = curvature_report(g);
        double sum = 0.0;
        for (double f : r.foster) {
            sum += f;
            CHECK(f >= 0.0);
            CHECK(f <= 1.0);
        }
        double rank = static_cast<double>(g.edge_count()) -
                      static_cast<double>(g.vertex_count()) + 1.0;
        CHECK(sum == doctest::Approx(rank).epsilon(1e-9));
    }
}

TEST_CASE("vertex curvature decomposes into outgoing arcs") {
    for (const auto& g : ts::random_corpus(ts::kCorpusSeed + 23, 25)) {
        CurvatureReport report = curvature_report(g);
        ResistanceProfile profile(g);

        // p_u recomputed from arcs must be bitwise what the report stores
        std::map<VertexId, double> from_arcs;
        for (const auto& v : g.vertices()) from_arcs[v] = 0.0;
        for (std::size_t i = 0; i < g.edge_count(); ++i) {
            from_arcs[g.edges()[i].u] += report.arc[i].first;
            from_arcs[g.edges()[i].v] += report.arc[i].second;
        }
        double p_total = 0.0;
        for (const auto& [v, p] : report.vertex_curvature) {
            CHECK(p == from_arcs.at(v));
            p_total += p;
            // closed form 1 - (1/2) sum of incident ratios
            double half = 0.0;
            for (std::size_t i = 0; i < g.edge_count(); ++i) {
                const auto& e = g.edges()[i];
                if (e.is_loop()) continue;
                if (e.u == v || e.v == v) half += 0.5 * profile.ratio_by_index(i);
            }
            CHECK(p == doctest::Approx(1.0 - half).epsilon(1e-10));
        }
        CHECK(p_total == doctest::Approx(report.total_curvature).epsilon(1e-9));

        // K_e is the sum of its two arcs
        for (std::size_t i = 0; i < g.edge_count(); ++i)
            CHECK(report.curvature[i] ==
                  doctest::Approx(report.arc[i].first + report.arc[i].second).epsilon(1e-12));
    }
}

TEST_CASE("degenerate loop-only graphs keep the sum identity") {
    WeightedGraph lonely({"v"}, {{"l1", "v", "v", 2.0}, {"l2", "v", "v", 0.7},
                                 {"l3", "v", "v", 1.3}});
    CurvatureReport report = curvature_report(lonely);
    for (double k : report.curvature) CHECK(k == doctest::Approx(2.0 / 6.0).epsilon(1e-13));
    CHECK(report.total_curvature == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("curvature partials: pinned cases and closed form") {
    // bridge: constant curvature, zero map
    auto partials = curvature_partials(ts::barbell6(), "e34");
    for (const auto& [id, value] : partials) CHECK(value == 0.0);
    // loop: same
    for (const auto& [id, value] : curvature_partials(ts::barbell_minimal(), "loopx"))
        CHECK(value == 0.0);

    // unit triangle: deleted-graph resistance is 2, diagonal 2/(1+2)^2 = 2/9
    auto tri_partials = curvature_partials(ts::unit_cycle(3), "e0");
    CHECK(tri_partials.at("e0") == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
    CHECK(tri_partials.at("e1") < 0.0);
    CHECK(tri_partials.at("e2") < 0.0);
}

TEST_CASE("curvature partials match finite differences") {
    for (const auto& g : ts::random_corpus(ts::kCorpusSeed + 24, 6)) {
        for (const auto& e : g.edges()) {
            auto partials = curvature_partials(g, e.id);
            for (const auto& f : g.edges()) {
                double p = partials.at(f.id);
                if (f.id == e.id)
                    CHECK(p >= 0.0);
                else
                    CHECK(p <= 0.0);
                if (f.length <= 2e-6) continue;
                double fd = finite_difference(
                    [&](const WeightedGraph& gg) { return curvature_of_edge(gg, e.id); }, g,
                    f.id, 1e-6);
                CHECK(std::abs(p - fd) <= 1e-6);
            }
        }
    }
}

TEST_CASE("subdivision additivity") {
    // theta with split 1/2 on the length-2 edge: 13/33 = 13/66 + 13/66
    SubdivisionAdditivity sub = verify_subdivision_additivity(ts::theta312(), "t2", 0.5);
    CHECK(sub.curvature_whole == doctest::Approx(13.0 / 33.0).epsilon(1e-12));
    CHECK(sub.curvature_parts == doctest::Approx(13.0 / 33.0).epsilon(1e-10));
    CHECK(std::abs(sub.foster_whole - sub.foster_parts) <= 1e-10);

    // tree edge: the new degree-2 vertex contributes 1/2 + 1/2 - 1 = 0
    SubdivisionAdditivity tree_sub = verify_subdivision_additivity(ts::tree6(), "cd", 0.25);
    CHECK(std::abs(tree_sub.curvature_whole - tree_sub.curvature_parts) <= 1e-12);

    for (const auto& g : ts::random_corpus(ts::kCorpusSeed + 25, 12)) {
        for (const auto& e : g.edges()) {
            if (e.is_loop()) continue;
            for (double s : {0.25, 0.5, 0.9}) {
                SubdivisionAdditivity r = verify_subdivision_additivity(g, e.id, s);
                CHECK(std::abs(r.curvature_whole - r.curvature_parts) <= 1e-10);
                CHECK(std::abs(r.foster_whole - r.foster_parts) <= 1e-10);
            }
        }
    }
}
