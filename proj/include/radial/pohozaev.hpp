#pragma once

#include <vector>

#include "radial/model.hpp"

namespace radial {

enum class Criticality { Subcritical, Critical, Supercritical };

/// Pohozaev function along a solution. For p = 2 (any weight alpha):
///   P(r) = r^n [u'^2 + 2 F(r,u)] + (n-2) r^(n-1) u' u,   F(r,u) = lambda r^alpha F(u).
/// For general p the autonomous form (alpha = 0 only):
///   P(r) = r^n [(p-1) phi_p(u') u' + p lambda F(u)] + (n-p) r^(n-1) phi_p(u') u.
/// The weighted general-p combination has no closed form here and is rejected.
double pohozaev_P(const RadialProblem& pb, double r, double u, double uprime);

/// Derivative of P along solutions; does not involve u'.
///   p = 2:  P'(r) = r^(n-1) [2n F(r,u) - (n-2) u f(r,u) + 2 r F_r(r,u)]
///   else:   P'(r) = r^(n-1) [n p F(u) - (n-p) u f(u)]  (times lambda)
double pohozaev_Pprime(const RadialProblem& pb, double r, double u);

/// Compare a power q against the applicable critical exponent
/// (relative tolerance 1e-12).
Criticality classify_power(double n, double p, double alpha, double q);

struct PohozaevSample {
    double r;
    double P;
    double Pprime_formula;
    double Pprime_numeric;  // centered difference of P along the profile; NaN at the ends
};

/// Evaluate P and both P' routes along a profile.
std::vector<PohozaevSample> pohozaev_scan(const RadialProblem& pb, const Profile& profile);

}  // namespace radial
