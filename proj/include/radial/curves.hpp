#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radial/integrate.hpp"
#include "radial/model.hpp"

namespace radial {

struct InsufficientBranch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One Dirichlet solution on the unit ball, found by shoot-and-scale:
/// shoot the lambda = 1 problem from height a, find the first root rho,
/// rescale r -> r/rho; the multiplier becomes lambda = rho^(p+alpha).
struct CurvePoint {
    double a;
    double rho;
    double lambda;
    double reshoot_err;  // |u(1)| of the lambda-scaled re-shoot (NaN if skipped)
};

struct Fold {
    double a;
    double lambda;
};

struct AsymptoteFit {
    double beta;      // estimated horizontal asymptote of u(0)
    double c, gamma;  // fit model a = beta - c lambda^(-gamma)
    double residual;  // rms misfit
    std::size_t points_used;
};

struct CurveConfig {
    IvpConfig ivp;
    int threads = 0;            // sweep parallelism; 1 = serial reference path
    bool reshoot_check = true;  // verify u(1) = 0 for every emitted point
    int refine_rounds = 3;      // adaptive grid refinement passes
    double refine_ratio = 0.10; // refine where the lambda jump exceeds this
    std::size_t max_points = 400;
};

struct SolutionCurve {
    RadialProblem problem;  // the lambda = 1 shooting problem
    CurveConfig config;
    std::vector<CurvePoint> points;  // ordered by a
    std::vector<double> no_root_a;   // swept heights with no root up to r_max
    std::vector<std::pair<double, std::string>> failures;
    std::vector<Fold> folds;                // sign changes of d lambda / d a
    std::optional<AsymptoteFit> asymptote;  // filled when the upper branch suffices
};

/// rho^(p+alpha); converts a first-root radius into the unit-ball multiplier.
double lambda_from_rho(double rho, double p, double alpha);

/// Shoot-and-scale sweep over a_grid (strictly increasing, positive heights).
/// Grid points whose shot has no root up to r_max contribute no curve point;
/// integrator failures are recorded per point without aborting the sweep.
/// The sweep is data-parallel; results merge in grid order.
SolutionCurve trace_curve(const RadialProblem& pb, std::span<const double> a_grid,
                          const CurveConfig& cfg = {});

struct SolutionCount {
    int count;
    std::vector<double> a_values;
    bool at_grid_boundary;  // a crossing sits in the first or last grid interval
};

/// Number of curve crossings of lambda(a) = lambda_query, each refined by
/// bisection in a to 1e-8. A fold whose refined lambda sits within 1e-3 of
/// the query counts as a single tangent solution.
SolutionCount count_solutions_at(const SolutionCurve& curve, double lambda_query);

/// Fit the upper branch against a = beta - c lambda^(-gamma) and extrapolate
/// the horizontal asymptote. Needs >= 5 branch points spanning two decades of
/// lambda; otherwise throws InsufficientBranch.
AsymptoteFit estimate_asymptote(const SolutionCurve& curve);

/// Exact planar Bratu count: positive roots of a^2 - 2 sqrt2 a + B = 0,
/// i.e. two Dirichlet solutions for 0 < B < 2, one at B = 2, none beyond.
struct Bratu2dCount {
    int count;
    std::vector<double> a_roots;
};
Bratu2dCount bratu2d_count(double B);

/// Exact count for the p = n Bratu problem: solves
/// ((n-1)/n) a^(n/(n-1)) + B = n a by safeguarded Newton from the tangency
/// point a* = n^(n-1); B_critical = n^(n-1).
struct BratuPnCount {
    int count;
    std::vector<double> a_roots;
    double B_critical;
};
BratuPnCount bratu_pn_count(double n, double B);

/// Small-height scaling diagnostics for a two-power problem u^M + u^Q with
/// Q = (Mp-p+1)/(p-1): reports rho(a) a^((M-p+1)/p), which approaches the
/// first root of the single-power problem w^M from w(0) = 1 as a -> 0.
struct ScalingReport {
    std::vector<double> a;
    std::vector<double> scaled_rho;  // NaN where the shot failed or had no root
    double limit_estimate;           // last finite entry
    double reference_root;           // independently shot single-power root
};
ScalingReport small_a_scaling_check(const RadialProblem& two_power,
                                    std::span<const double> a_seq, const IvpConfig& cfg = {});

}  // namespace radial
