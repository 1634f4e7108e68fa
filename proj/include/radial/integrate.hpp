#pragma once

#include <string>

#include "radial/model.hpp"

namespace radial {

/// Tolerances and limits for the radial IVP solver.
struct IvpConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double r_max = 1e3;
    double h0_max = 1e-2;  // cap on the series-start step
    std::size_t max_steps = 2'000'000;
    double sample_dr = 0.0;  // > 0: emit dense-output samples on a uniform grid
    // With positive f the descent is monotone and a positive slope is a
    // numerical anomaly. Setting this false admits sign-changing f and turns
    // "u' reached 0 while u > 0" into a clean no-root stop.
    bool require_positive_f = true;
};

struct RootOutcome {
    enum class Kind { Root, NoRootUpTo, Failed };
    Kind kind;
    double rho = 0.0;       // Kind::Root: first root, |u(rho)| < 10 abs_tol
    double r_reached = 0.0; // Kind::NoRootUpTo
    std::string reason;     // Kind::Failed
    Profile profile;

    bool has_root() const { return kind == Kind::Root; }
};

/// Thrown by integrate_ivp / integrate_coulomb on step-limit, step-underflow
/// or state overflow; first_root converts it into RootOutcome::Failed.
struct NumericalFailure : std::runtime_error {
    NumericalFailure(std::string reason_, Profile partial_)
        : std::runtime_error("integration failed: " + reason_),
          reason(std::move(reason_)),
          partial(std::move(partial_)) {}
    std::string reason;
    Profile partial;
};

/// Integrate u(0) = a, u'(0) = 0 outward from the singular origin.
///
/// State is (u, w) with w = r^(n-1) phi_p(u'), which removes the (n-1)/r term
/// exactly: w' = -lambda r^(alpha+n-1) f(u), u' = phi_p_inv(w / r^(n-1)).
/// The first step leaves r = 0 on the series
///   u(r) ~ a - ((p-1)/(p+alpha)) (lambda f(a)/(n+alpha))^(1/(p-1)) r^((p+alpha)/(p-1)),
/// with one further correction term; the step is sized so the truncated term
/// stays below abs_tol. Steps are DOPRI5(4) with dense output; the first root
/// and slope-sign events are localized by bisection on the dense polynomial.
/// Integration stops at the first root.
Profile integrate_ivp(const RadialProblem& pb, double a, const IvpConfig& cfg = {});

/// First root rho(a) of the IVP, refined to |u(rho)| < 10 abs_tol. Requires
/// f > 0 on (0, a] (checked on a sample) unless cfg.require_positive_f is
/// false, in which case a slope turnaround reports NoRootUpTo at its radius.
RootOutcome first_root(const RadialProblem& pb, double a, const IvpConfig& cfg = {});

/// Coulomb-weight IVP (alpha = -1, planar radial form): starts from
/// u(0) = a with slope u'(0) = -f(a). Stated for f = e^u; other f are
/// accepted as an experimental generalization.
Profile integrate_coulomb(const RadialProblem& pb, double a, const IvpConfig& cfg = {});

}  // namespace radial
