#include "radial/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radial/rootfind.hpp"
#include "radial/sweep.hpp"

namespace radial {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ShotStatus { Root, NoRoot, Failed };

struct Shot {
    double a;
    ShotStatus status;
    double rho = kNaN;
    double lambda = kNaN;
    double reshoot_err = kNaN;
    std::string reason;
};

Shot shoot_one(const RadialProblem& pb, double a, const IvpConfig& ivp) {
    Shot s;
    s.a = a;
    try {
        RootOutcome ro = first_root(pb, a, ivp);
        switch (ro.kind) {
            case RootOutcome::Kind::Root:
                s.status = ShotStatus::Root;
                s.rho = ro.rho;
                s.lambda = lambda_from_rho(ro.rho, pb.p, pb.alpha);
                break;
            case RootOutcome::Kind::NoRootUpTo:
                s.status = ShotStatus::NoRoot;
                break;
            case RootOutcome::Kind::Failed:
                s.status = ShotStatus::Failed;
                s.reason = ro.reason;
                break;
        }
    } catch (const std::exception& e) {
        s.status = ShotStatus::Failed;
        s.reason = e.what();
    }
    return s;
}

// |u(1)| of the lambda-scaled Dirichlet re-shoot (composite with the slope
// when the root lands just inside [0, 1]).
double reshoot_error(const RadialProblem& pb, const Shot& s, const IvpConfig& ivp) {
    RadialProblem q = pb;
    q.lambda = pb.lambda * s.lambda;
    IvpConfig c = ivp;
    c.r_max = 1.0;
    c.sample_dr = 0.0;
    try {
        const Profile pr = q.coulomb_mode ? integrate_coulomb(q, s.a, c) : integrate_ivp(q, s.a, c);
        const double r_end = pr.r.back();
        return std::abs(pr.u.back()) + std::abs(pr.uprime.back()) * std::abs(1.0 - r_end);
    } catch (const std::exception&) {
        return kInf;
    }
}

void detect_folds(SolutionCurve& curve) {
    curve.folds.clear();
    const auto& pts = curve.points;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const double d1 = pts[i].lambda - pts[i - 1].lambda;
        const double d2 = pts[i + 1].lambda - pts[i].lambda;
        if (!(d1 * d2 < 0.0)) continue;
        // vertex of the parabola through the three bracketing points
        const double a0 = pts[i - 1].a, a1 = pts[i].a, a2 = pts[i + 1].a;
        const double l0 = pts[i - 1].lambda, l1 = pts[i].lambda, l2 = pts[i + 1].lambda;
        const double s01 = (l1 - l0) / (a1 - a0);
        const double s12 = (l2 - l1) / (a2 - a1);
        const double c2 = (s12 - s01) / (a2 - a0);
        if (c2 == 0.0) continue;
        const double av = 0.5 * (a0 + a1) - s01 / (2.0 * c2);
        const double lv = l0 + s01 * (av - a0) + c2 * (av - a0) * (av - a1);
        curve.folds.push_back({av, lv});
    }
}

}  // namespace

double lambda_from_rho(double rho, double p, double alpha) {
    if (!(rho > 0.0)) throw std::invalid_argument("lambda_from_rho: requires rho > 0");
    return std::pow(rho, p + alpha);
}

SolutionCurve trace_curve(const RadialProblem& pb, std::span<const double> a_grid,
                          const CurveConfig& cfg) {
    pb.validate();
    if (pb.lambda != 1.0)
        throw std::invalid_argument("trace_curve: shoot the lambda = 1 problem (scale afterwards)");
    if (a_grid.size() < 2) throw std::invalid_argument("trace_curve: need at least 2 grid points");
    for (std::size_t i = 0; i < a_grid.size(); ++i) {
        if (!(a_grid[i] > 0.0)) throw std::invalid_argument("trace_curve: grid heights must be positive");
        if (i > 0 && !(a_grid[i] > a_grid[i - 1]))
            throw std::invalid_argument("trace_curve: grid must be strictly increasing");
    }

    std::vector<Shot> shots(a_grid.size());
    parallel_for(a_grid.size(), cfg.threads,
                 [&](std::size_t i) { shots[i] = shoot_one(pb, a_grid[i], cfg.ivp); });

    // Adaptive refinement: densify where lambda jumps or where the root set
    // ends (the latter resolves the approach to the ground-state height).
    for (int round = 0; round < cfg.refine_rounds && shots.size() < cfg.max_points; ++round) {
        std::vector<double> extra;
        for (std::size_t i = 0; i + 1 < shots.size(); ++i) {
            const Shot &L = shots[i], &R = shots[i + 1];
            if ((R.a - L.a) / L.a < 1e-3) continue;
            bool split = false;
            if (L.status == ShotStatus::Root && R.status == ShotStatus::Root) {
                const double rel = std::abs(R.lambda - L.lambda) / std::min(L.lambda, R.lambda);
                split = rel > cfg.refine_ratio;
            } else if (L.status != R.status) {
                split = true;
            }
            if (split) extra.push_back(std::sqrt(L.a * R.a));
            if (shots.size() + extra.size() >= cfg.max_points) break;
        }
        if (extra.empty()) break;
        std::vector<Shot> news(extra.size());
        parallel_for(extra.size(), cfg.threads,
                     [&](std::size_t i) { news[i] = shoot_one(pb, extra[i], cfg.ivp); });
        shots.insert(shots.end(), news.begin(), news.end());
        std::sort(shots.begin(), shots.end(), [](const Shot& x, const Shot& y) { return x.a < y.a; });
    }

    if (cfg.reshoot_check) {
        parallel_for(shots.size(), cfg.threads, [&](std::size_t i) {
            if (shots[i].status == ShotStatus::Root)
                shots[i].reshoot_err = reshoot_error(pb, shots[i], cfg.ivp);
        });
    }

    SolutionCurve curve;
    curve.problem = pb;
    curve.config = cfg;
    for (const Shot& s : shots) {
        switch (s.status) {
            case ShotStatus::Root:
                curve.points.push_back({s.a, s.rho, s.lambda, s.reshoot_err});
                break;
            case ShotStatus::NoRoot:
                curve.no_root_a.push_back(s.a);
                break;
            case ShotStatus::Failed:
                curve.failures.push_back({s.a, s.reason});
                break;
        }
    }
    detect_folds(curve);
    try {
        curve.asymptote = estimate_asymptote(curve);
    } catch (const InsufficientBranch&) {
        curve.asymptote.reset();
    }
    return curve;
}

SolutionCount count_solutions_at(const SolutionCurve& curve, double lambda_query) {
    if (curve.points.empty()) throw std::invalid_argument("count_solutions_at: empty curve");
    if (!(lambda_query > 0.0))
        throw std::invalid_argument("count_solutions_at: lambda_query must be positive");
    const auto& pts = curve.points;
    const RadialProblem& pb = curve.problem;

    auto lambda_of = [&](double a) -> double {
        RootOutcome ro = first_root(pb, a, curve.config.ivp);
        return ro.has_root() ? lambda_from_rho(ro.rho, pb.p, pb.alpha) : kInf;
    };

    struct Crossing {
        double a;
        std::size_t interval;
    };
    std::vector<Crossing> crossings;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double g0 = pts[i].lambda - lambda_query;
        const double g1 = pts[i + 1].lambda - lambda_query;
        if (g0 == 0.0) {
            crossings.push_back({pts[i].a, i});
            continue;
        }
        if (!(g0 * g1 < 0.0)) continue;
        double lo = pts[i].a, hi = pts[i + 1].a;
        double glo = g0;
        while (hi - lo > 1e-8) {
            const double mid = 0.5 * (lo + hi);
            const double gm = lambda_of(mid) - lambda_query;
            if (gm == 0.0) {
                lo = hi = mid;
                break;
            }
            if (glo * gm < 0.0)
                hi = mid;
            else {
                lo = mid;
                glo = gm;
            }
        }
        crossings.push_back({0.5 * (lo + hi), i});
    }

    SolutionCount out;
    out.at_grid_boundary = false;
    for (const auto& c : crossings)
        if (c.interval == 0 || c.interval + 2 == pts.size()) out.at_grid_boundary = true;

    // A fold tangent to the query level counts once; drop any near-duplicate
    // pair of crossings the grid may have produced across it.
    std::vector<double> roots;
    std::vector<bool> keep(crossings.size(), true);
    for (const Fold& f : curve.folds) {
        if (std::abs(f.lambda - lambda_query) > 1e-3 * std::max(f.lambda, lambda_query)) continue;
        // window: grid points straddling the fold
        auto it = std::lower_bound(pts.begin(), pts.end(), f.a,
                                   [](const CurvePoint& p, double a) { return p.a < a; });
        const std::size_t j = std::size_t(it - pts.begin());
        const double wlo = pts[j >= 2 ? j - 2 : 0].a;
        const double whi = pts[std::min(j + 1, pts.size() - 1)].a;
        for (std::size_t k = 0; k < crossings.size(); ++k)
            if (crossings[k].a >= wlo && crossings[k].a <= whi) keep[k] = false;
        roots.push_back(f.a);
    }
    for (std::size_t k = 0; k < crossings.size(); ++k)
        if (keep[k]) roots.push_back(crossings[k].a);
    std::sort(roots.begin(), roots.end());
    out.a_values = std::move(roots);
    out.count = int(out.a_values.size());
    return out;
}

AsymptoteFit estimate_asymptote(const SolutionCurve& curve) {
    const auto& pts = curve.points;
    if (pts.size() < 5) throw InsufficientBranch("estimate_asymptote: too few curve points");
    // upper branch: trailing run of strictly increasing lambda
    std::size_t start = pts.size() - 1;
    while (start > 0 && pts[start - 1].lambda < pts[start].lambda) --start;
    if (pts.size() - start < 5)
        throw InsufficientBranch("estimate_asymptote: upper branch has fewer than 5 points");
    const double span = pts.back().lambda / pts[start].lambda;
    if (!(span >= 100.0))
        throw InsufficientBranch("estimate_asymptote: upper branch spans less than two decades of lambda");
    // fit only the asymptotic tail: the top two decades of lambda (the points
    // just past the fold do not follow the asymptote model and would
    // dominate the misfit)
    while (pts[start].lambda < pts.back().lambda / 100.0) ++start;
    const std::size_t m = pts.size() - start;
    if (m < 5) throw InsufficientBranch("estimate_asymptote: fewer than 5 tail points");

    std::vector<double> lam(m), av(m);
    for (std::size_t i = 0; i < m; ++i) {
        lam[i] = pts[start + i].lambda;
        av[i] = pts[start + i].a;
    }

    // linear LS of a = beta - c x with x = lambda^(-gamma); returns SSR
    auto fit_at = [&](double gamma, double* beta, double* c) {
        double sx = 0, sa = 0, sxx = 0, sxa = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const double x = std::pow(lam[i], -gamma);
            sx += x;
            sa += av[i];
            sxx += x * x;
            sxa += x * av[i];
        }
        const double n = double(m);
        const double denom = n * sxx - sx * sx;
        const double slope = (n * sxa - sx * sa) / denom;  // = -c
        const double icept = (sa - slope * sx) / n;
        double ssr = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const double x = std::pow(lam[i], -gamma);
            const double e = av[i] - (icept + slope * x);
            ssr += e * e;
        }
        if (beta) *beta = icept;
        if (c) *c = -slope;
        return ssr;
    };

    // golden-section over the free decay rate
    double lo = 0.005, hi = 4.0;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = fit_at(x1, nullptr, nullptr), f2 = fit_at(x2, nullptr, nullptr);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = fit_at(x1, nullptr, nullptr);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = fit_at(x2, nullptr, nullptr);
        }
    }
    const double gamma = 0.5 * (lo + hi);
    AsymptoteFit fit;
    fit.gamma = gamma;
    const double ssr = fit_at(gamma, &fit.beta, &fit.c);
    fit.residual = std::sqrt(ssr / double(m));
    fit.points_used = m;
    return fit;
}

Bratu2dCount bratu2d_count(double B) {
    if (!(B > 0.0)) throw std::invalid_argument("bratu2d_count: requires B > 0");
    const double s2 = std::sqrt(2.0);
    Bratu2dCount out;
    if (B > 2.0) {
        out.count = 0;
    } else if (B == 2.0) {
        out.count = 1;
        out.a_roots = {s2};
    } else {
        const double d = std::sqrt(2.0 - B);
        out.count = 2;
        out.a_roots = {s2 - d, s2 + d};
    }
    return out;
}

BratuPnCount bratu_pn_count(double n, double B) {
    if (!(n > 1.0)) throw std::invalid_argument("bratu_pn_count: requires n > 1");
    if (!(B > 0.0)) throw std::invalid_argument("bratu_pn_count: requires B > 0");
    const double astar = std::pow(n, n - 1.0);
    const double Bcrit = std::pow(n, n - 1.0);
    auto g = [n](double a) { return n * a - (n - 1.0) / n * std::pow(a, n / (n - 1.0)); };
    auto gp = [n](double a) { return n - std::pow(a, 1.0 / (n - 1.0)); };

    BratuPnCount out;
    out.B_critical = Bcrit;
    if (B > Bcrit * (1.0 + 1e-13)) {
        out.count = 0;
        return out;
    }
    if (std::abs(B - Bcrit) <= 1e-13 * Bcrit) {
        out.count = 1;
        out.a_roots = {astar};
        return out;
    }

    // Newton from near the tangency, bisection-safeguarded within the
    // ordered bracket [lo, hi] (g - B changes sign across it).
    auto solve = [&](double lo, double hi, double x0) {
        double flo = g(lo) - B;
        double x = x0;
        for (int it = 0; it < 200; ++it) {
            const double fx = g(x) - B;
            if (fx == 0.0) return x;
            if ((flo < 0.0) == (fx < 0.0)) {
                lo = x;
                flo = fx;
            } else {
                hi = x;
            }
            const double d = gp(x);
            double xn = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
            if (!(xn > std::min(lo, hi) && xn < std::max(lo, hi))) xn = 0.5 * (lo + hi);
            if (std::abs(xn - x) <= 1e-13 * std::max(1.0, std::abs(x))) return xn;
            x = xn;
        }
        return x;
    };

    const double left = solve(0.0, astar, 0.5 * astar);
    double hi = 2.0 * astar;
    while (g(hi) - B > 0.0) hi *= 2.0;
    const double right = solve(astar, hi, std::min(2.0 * astar, 0.5 * (astar + hi)));
    out.count = 2;
    out.a_roots = {left, right};
    return out;
}

ScalingReport small_a_scaling_check(const RadialProblem& two_power,
                                    std::span<const double> a_seq, const IvpConfig& cfg) {
    two_power.validate();
    if (two_power.alpha != 0.0 || two_power.lambda != 1.0)
        throw std::invalid_argument("small_a_scaling_check: requires alpha = 0 and lambda = 1");
    const PowerTerm* lowT = nullptr;
    const PowerTerm* highT = nullptr;
    for (const auto& t : two_power.terms) {
        const auto* pw = std::get_if<PowerTerm>(&t);
        if (!pw) throw std::invalid_argument("small_a_scaling_check: power terms only");
        if (!lowT || pw->exponent < lowT->exponent) lowT = pw;
        if (!highT || pw->exponent > highT->exponent) highT = pw;
    }
    if (two_power.terms.size() != 2 || lowT == highT)
        throw std::invalid_argument("small_a_scaling_check: expected two distinct power terms");
    const double M = lowT->exponent, Q = highT->exponent, p = two_power.p;
    const double Qc = lin_ni_Q(M, p);
    if (std::abs(Q - Qc) > 1e-9 * Qc)
        throw std::invalid_argument("small_a_scaling_check: upper power must be (Mp-p+1)/(p-1)");

    RadialProblem ref = two_power;
    ref.terms = {PowerTerm{lowT->coeff, M}};
    RootOutcome rr = first_root(ref, 1.0, cfg);
    if (!rr.has_root())
        throw std::runtime_error("small_a_scaling_check: single-power reference shot has no root");

    const double e = (M - p + 1.0) / p;
    ScalingReport rep;
    rep.reference_root = rr.rho;
    rep.limit_estimate = kNaN;
    for (double a : a_seq) {
        IvpConfig c = cfg;
        c.r_max = std::max(cfg.r_max, 10.0 * rr.rho * std::pow(a, -e));
        double scaled = kNaN;
        try {
            RootOutcome ro = first_root(two_power, a, c);
            if (ro.has_root()) scaled = ro.rho * std::pow(a, e);
        } catch (const std::exception&) {
        }
        rep.a.push_back(a);
        rep.scaled_rho.push_back(scaled);
        if (std::isfinite(scaled)) rep.limit_estimate = scaled;
    }
    return rep;
}

}  // namespace radial
