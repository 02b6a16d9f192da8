#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ricci/flow.hpp"
#include "ricci/graph.hpp"

namespace ricci {

/// One verified identity: what was checked, the worst violation seen, and
/// the tolerance it was held to. Failures are data, not errors.
struct CheckResult {
    std::string name;        // stable machine-readable key
    std::string statement;   // the identity in words
    double max_violation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

inline constexpr unsigned kDefaultVerifySeed = 1729;

/// Run every static identity the library rests on against one graph:
/// curvature sum and bounds, Foster sums, rescaling invariance, resistance
/// homogeneity, the Euler identity, Rayleigh nonnegativity, the parallel
/// combination rule, the spanning-tree oracle (under the enumeration cap),
/// finite-difference agreement for both gradients, partial-derivative signs,
/// vertex/arc decomposition, and subdivision additivity at seeded splits.
///
/// `tol` bounds the solver-level identities; finite-difference checks use a
/// fixed 1e-6 budget set by their step size.
VerificationReport verify_all(const WeightedGraph& g, double tol = 1e-9,
                              unsigned seed = kDefaultVerifySeed, std::size_t tree_cap = 16);

/// Trajectory monitors for a finished trace: total length decreasing at rate
/// one (allowing the contracted length at each surgery), the per-edge length
/// bounds, preservation of nonnegative curvature and monotonicity of
/// min K_e/l_e before the first surgery, and the resistance-derivative
/// inequalities along the samples.
VerificationReport monitor_trace(const FlowTrace& trace, double tol = 1e-8);

namespace checks {
/// Foster sum check against externally supplied per-edge ratios (indexed
/// like g.edges()); exposed so a corrupted profile can be fed in as a
/// negative control.
CheckResult foster_sum(const WeightedGraph& g, const std::vector<double>& ratio_by_edge,
                       double tol);
}  // namespace checks

/// Central finite difference of fn with respect to one edge length, all
/// other lengths fixed. Throws StepTooLarge when h >= the edge's length.
double finite_difference(const std::function<double(const WeightedGraph&)>& fn,
                         const WeightedGraph& g, const EdgeId& e, double h);

/// How close (G, l) is to an Einstein network K_e = lambda * l_e. The
/// curvature sum forces lambda = 1 / total length, so the check is a pure
/// residual measurement with no fitted parameter.
struct EinsteinCertificate {
    double lambda = 0.0;
    std::map<EdgeId, double> residuals;  // K_e - lambda * l_e
    double max_abs_residual = 0.0;
    double tolerance = 0.0;
    bool is_einstein = false;
};

EinsteinCertificate einstein_check(const WeightedGraph& g, double tol = 1e-8);

/// Damped fixed-point search for positive lengths (normalized to total 1)
/// with K_e = lambda * l_e: l <- (1-theta) l + theta clamp+(K(l)), then
/// renormalize. A heuristic: non-convergence is evidence, not proof, of
/// non-existence, and the best iterate is always reported.
struct EinsteinSolveResult {
    std::map<EdgeId, double> lengths;  // best iterate, total length 1
    EinsteinCertificate certificate;
    bool converged = false;
    int iterations = 0;
};

EinsteinSolveResult einstein_solve(const WeightedGraph& g, int max_iter = 500, double tol = 1e-8,
                                   double theta = 0.5);

}  // namespace ricci
