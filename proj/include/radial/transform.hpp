#pragma once

#include "radial/integrate.hpp"
#include "radial/model.hpp"

namespace radial {

/// Coordinate change t = r^(1+alpha/p) / (1+alpha/p). It removes the r^alpha
/// weight from the radial equation at the cost of replacing the dimension
/// coefficient n-1 by m = (n-1+alpha-alpha/p) / (1+alpha/p), generally
/// non-integer. At p = 2 this is m = (n-1+alpha/2)/(1+alpha/2); alpha = 0 is
/// the identity with m = n-1, and so is n = p for any admissible alpha.
struct CovMap {
    double n, p, alpha;
    double m;         // transformed dimension coefficient (m/t multiplies phi_p(u'))
    double exponent;  // 1 + alpha/p

    double t_of_r(double r) const { return std::pow(r, exponent) / exponent; }
    double r_of_t(double t) const { return std::pow(exponent * t, 1.0 / exponent); }
};

/// Requires alpha > -1 (and a resulting m > 0).
CovMap make_cov(double n, double p, double alpha);

/// The autonomous problem in t: same terms and multiplier, weight removed,
/// dimension parameter m+1.
RadialProblem transformed_problem(const RadialProblem& pb, const CovMap& cov);

/// Map profiles between coordinates: u values carry over pointwise,
/// derivatives by du/dt = du/dr r^(-alpha/p) (0 at the origin).
Profile pushforward(const Profile& in_r, const CovMap& cov);
Profile pullback(const Profile& in_t, const CovMap& cov);

/// Integrate the weighted problem by solving the autonomous m-dimensional
/// form and pulling the profile back; agrees with direct integration.
/// cfg.r_max and cfg.sample_dr are interpreted in the original r coordinate.
Profile solve_via_cov(const RadialProblem& pb, double a, const IvpConfig& cfg = {});

}  // namespace radial
