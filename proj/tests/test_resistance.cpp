#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ricci/analysis.hpp"
#include "ricci/resistance.hpp"
#include "support/graphs.hpp"

using namespace ricci;
namespace ts = testsupport;

TEST_CASE("tree polynomial on the unit triangle") {
    WeightedGraph tri = ts::unit_cycle(3);
    CHECK(tree_polynomial(tri) == doctest::Approx(3.0).epsilon(1e-15));
    // identifying the endpoints of an edge leaves two spanning trees
    CHECK(resistance_by_trees(tri, "c0", "c1") == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("resistance profile basics") {
    WeightedGraph tri = ts::unit_cycle(3);
    ResistanceProfile profile(tri);
    CHECK(profile.omega("c0", "c1") == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(profile.omega("c1", "c2") == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(profile.omega("c0", "c0") == 0.0);
    CHECK(profile.omega("c0", "c2") == profile.omega("c2", "c0"));

    // on any tree, omega equals the edge length on every edge
    WeightedGraph t = ts::tree6().with_lengths({0.5, 1.5, 2.0, 0.25, 3.0, 1.0});
    ResistanceProfile tp(t);
    for (const auto& e : t.edges()) {
        CHECK(tp.omega(e.u, e.v) == doctest::Approx(e.length).epsilon(1e-12));
        CHECK(tp.ratio(e.id) == 1.0);  // every tree edge is a bridge: pinned exactly
    }

    CHECK(ResistanceProfile(ts::parallel_pair()).omega("x", "y") ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("pinned ratios: loops zero, bridges one") {
    WeightedGraph barbell = ts::barbell_minimal();
    ResistanceProfile profile(barbell);
    CHECK(profile.ratio("loopx") == 0.0);
    CHECK(profile.ratio("loopy") == 0.0);
    CHECK(profile.ratio("bridge") == 1.0);
    CHECK(profile.omega_of_edge("bridge") == 1.0);
    CHECK(profile.omega_of_edge("loopx") == 0.0);
}

TEST_CASE("theta ratios match the parallel combination") {
    WeightedGraph theta = ts::theta312();
    ResistanceProfile profile(theta);
    // 1/omega = 1/3 + 1/1 + 1/2 = 11/6
    CHECK(profile.omega("p", "q") == doctest::Approx(6.0 / 11.0).epsilon(1e-13));
    CHECK(profile.ratio("t2") == doctest::Approx(3.0 / 11.0).epsilon(1e-13));
    CHECK(resistance_by_trees(theta, "p", "q") == doctest::Approx(6.0 / 11.0).epsilon(1e-13));
    CHECK(std::abs(profile.omega("p", "q") - resistance_by_trees(theta, "p", "q")) <= 1e-12);
}

TEST_CASE("house ratios frozen from the known curvatures") {
    WeightedGraph h = ts::house();
    ResistanceProfile profile(h);
    CHECK(profile.ratio("floor") == doctest::Approx(8.0 / 11.0).epsilon(1e-12));
    CHECK(profile.ratio("wall_l") == doctest::Approx(8.0 / 11.0).epsilon(1e-12));
    CHECK(profile.ratio("mid") == doctest::Approx(6.0 / 11.0).epsilon(1e-12));
    CHECK(profile.ratio("roof_l") == doctest::Approx(7.0 / 11.0).epsilon(1e-12));
    CHECK(profile.ratio("roof_r") == doctest::Approx(7.0 / 11.0).epsilon(1e-12));
}

TEST_CASE("oracle equivalence on the corpus") {
    for (const auto& g : ts::random_corpus(ts::kCorpusSeed + 10, 40)) {
        if (g.non_loop_edge_count() > 16) continue;
        ResistanceProfile profile(g);
        for (std::size_t x = 0; x < g.vertex_count(); ++x)
            for (std::size_t y = x + 1; y < g.vertex_count(); ++y) {
                double trees = resistance_by_trees(g, g.vertices()[x], g.vertices()[y]);
                CHECK(std::abs(profile.omega_by_index(x, y) - trees) <= 1e-10);
            }
    }
}

TEST_CASE("enumeration cap") {
    WeightedGraph big = ts::complete(7);  // 21 non-loop edges
    CHECK_THROWS_AS(resistance_by_trees(big, "k0", "k1"), InstanceTooLarge);
    CHECK_THROWS_AS(tree_polynomial(big), InstanceTooLarge);
    CHECK_NOTHROW(resistance_by_trees(big, "k0", "k1", 21));
}

TEST_CASE("Foster's theorem: ratios sum to |V| - 1") {
    for (const auto& g : ts::random_corpus(ts::kCorpusSeed + 11, 60)) {
        ResistanceProfile profile(g);
        double sum = 0.0;
        for (const auto& e : g.edges()) sum += profile.ratio(e.id);
        CHECK(sum == doctest::Approx(static_cast<double>(g.vertex_count()) - 1.0).epsilon(1e-9));
    }
}

TEST_CASE("homogeneity of degree one") {
    for (const auto& g : ts::random_corpus(ts::kCorpusSeed + 12, 15)) {
        ResistanceProfile profile(g);
        for (double lambda : {0.5, 2.0, 10.0}) {
            ResistanceProfile scaled(g.rescaled(lambda));
            for (std::size_t x = 0; x < g.vertex_count(); ++x)
                for (std::size_t y = x + 1; y < g.vertex_count(); ++y) {
                    double expect = lambda * profile.omega_by_index(x, y);
                    CHECK(scaled.omega_by_index(x, y) ==
                          doctest::Approx(expect).epsilon(1e-10));
                }
        }
    }
}

TEST_CASE("unit currents") {
    WeightedGraph e = ts::single_edge();
    CurrentVector cv = unit_current(e, "x", "y");
    CHECK(cv.at(e, "e") == doctest::Approx(1.0).epsilon(1e-13));

    WeightedGraph pp = ts::parallel_pair();
    CurrentVector cvp = unit_current(pp, "x", "y");
    CHECK(cvp.at(pp, "p1") == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(cvp.at(pp, "p2") == doctest::Approx(0.5).epsilon(1e-13));

    CHECK_THROWS_AS(unit_current(e, "x", "x"), SameVertex);
    CHECK_THROWS_AS(unit_current(e, "x", "zzz"), UnknownVertex);
}

TEST_CASE("unit current on the triangle against hand elimination") {
    // Unit current from c0 to c1. Ground c1 = 0. Node equations with unit
    // conductances: at c0: 2 phi0 - phi2 = 1; at c2: 2 phi2 - phi0 = 0.
    // Hence phi0 = 2/3, phi2 = 1/3: direct edge carries 2/3, path 1/3.
    WeightedGraph tri = ts::unit_cycle(3);
    CurrentVector cv = unit_current(tri, "c0", "c1");
    CHECK(std::abs(cv.at(tri, "e0")) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(cv.at(tri, "e1")) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(cv.at(tri, "e2")) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("Kirchhoff current law holds at solver tolerance") {
    for (const auto& g : ts::random_corpus(ts::kCorpusSeed + 13, 20)) {
        const auto& vs = g.vertices();
        CurrentVector cv = unit_current(g, vs.front(), vs.back());
        for (const auto& v : vs) {
            double net = 0.0;
            for (std::size_t i = 0; i < g.edge_count(); ++i) {
                const auto& e = g.edges()[i];
                if (e.is_loop()) continue;
                if (e.u == v) net += cv.current[i];
                if (e.v == v) net -= cv.current[i];
            }
            double expected = v == vs.front() ? 1.0 : (v == vs.back() ? -1.0 : 0.0);
            CHECK(net == doctest::Approx(expected).epsilon(1e-9));
        }
    }
}

TEST_CASE("resistance gradient is the squared current") {
    WeightedGraph e = ts::single_edge();
    CHECK(resistance_gradient(e, "x", "y").at("e") == doctest::Approx(1.0).epsilon(1e-13));

    WeightedGraph tri = ts::unit_cycle(3);
    auto grad = resistance_gradient(tri, "c0", "c1");
    CHECK(grad.at("e0") == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
    CHECK(grad.at("e1") == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
    CHECK(grad.at("e2") == doctest::Approx(1.0 / 9.0).epsilon(1e-12));

    for (const auto& [id, value] : grad) CHECK(value >= 0.0);
}

TEST_CASE("gradient matches central finite differences") {
    for (const auto& g : ts::random_corpus(ts::kCorpusSeed + 14, 8)) {
        const auto& vs = g.vertices();
        auto grad = resistance_gradient(g, vs.front(), vs.back());
        for (const auto& f : g.edges()) {
            if (f.length <= 2e-6) continue;
            double fd = finite_difference(
                [&](const WeightedGraph& gg) {
                    return ResistanceProfile(gg).omega(vs.front(), vs.back());
                },
                g, f.id, 1e-6);
            CHECK(std::abs(grad.at(f.id) - fd) <= 1e-6);
        }
    }
}

TEST_CASE("parallel rule for non-bridge edges") {
    for (const auto& g : ts::random_corpus(ts::kCorpusSeed + 15, 25)) {
        ResistanceProfile profile(g);
        for (const auto& e : g.edges()) {
            if (e.is_loop() || g.is_bridge(e.id)) continue;
            ResistanceProfile del(g.without_edge(e.id));
            double od = del.omega(e.u, e.v);
            double expected = e.length * od / (e.length + od);
            CHECK(std::abs(profile.omega(e.u, e.v) - expected) <= 1e-10);
        }
    }
}

TEST_CASE("profiles of loop-only graphs need no solve") {
    WeightedGraph lonely({"v"}, {{"l1", "v", "v", 2.0}, {"l2", "v", "v", 5.0}});
    ResistanceProfile profile(lonely);
    CHECK(profile.ratio("l1") == 0.0);
    CHECK(profile.omega("v", "v") == 0.0);
    CHECK(tree_polynomial(lonely) == doctest::Approx(10.0).epsilon(1e-15));
}
