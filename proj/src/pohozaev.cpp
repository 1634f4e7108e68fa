#include "radial/pohozaev.hpp"

#include <cmath>
#include <limits>

namespace radial {

namespace {

void check_scope(const RadialProblem& pb) {
    if (pb.p != 2.0 && pb.alpha != 0.0)
        throw std::invalid_argument(
            "pohozaev: the weighted (alpha != 0) form is only available at p = 2");
}

}  // namespace

double pohozaev_P(const RadialProblem& pb, double r, double u, double uprime) {
    check_scope(pb);
    if (r == 0.0) return 0.0;
    const double n = pb.n, p = pb.p;
    const double Fu = detail::F_terms_raw(pb.terms, u);
    if (p == 2.0) {
        const double Fru = pb.lambda * std::pow(r, pb.alpha) * Fu;
        return std::pow(r, n) * (uprime * uprime + 2.0 * Fru) +
               (n - 2.0) * std::pow(r, n - 1.0) * uprime * u;
    }
    const double phi = phi_p(uprime, p);
    return std::pow(r, n) * ((p - 1.0) * phi * uprime + p * pb.lambda * Fu) +
           (n - p) * std::pow(r, n - 1.0) * phi * u;
}

double pohozaev_Pprime(const RadialProblem& pb, double r, double u) {
    check_scope(pb);
    if (r == 0.0) return 0.0;
    const double n = pb.n, p = pb.p;
    const double fu = detail::f_terms_raw(pb.terms, u);
    const double Fu = detail::F_terms_raw(pb.terms, u);
    if (p == 2.0) {
        const double w = pb.lambda * std::pow(r, pb.alpha);
        const double Fru = w * Fu;
        const double fru = w * fu;
        const double Fru_r = pb.lambda * pb.alpha * std::pow(r, pb.alpha - 1.0) * Fu;
        return std::pow(r, n - 1.0) * (2.0 * n * Fru - (n - 2.0) * u * fru + 2.0 * r * Fru_r);
    }
    return std::pow(r, n - 1.0) * pb.lambda * (n * p * Fu - (n - p) * u * fu);
}

Criticality classify_power(double n, double p, double alpha, double q) {
    double qc;
    if (p == 2.0) {
        qc = critical_exponent_weighted(n, alpha);
    } else {
        if (alpha != 0.0)
            throw std::invalid_argument("classify_power: weighted form requires p = 2");
        qc = critical_exponent_plap(n, p);
    }
    const double tol = 1e-12 * std::max(1.0, std::abs(qc));
    if (std::abs(q - qc) <= tol) return Criticality::Critical;
    return q < qc ? Criticality::Subcritical : Criticality::Supercritical;
}

std::vector<PohozaevSample> pohozaev_scan(const RadialProblem& pb, const Profile& profile) {
    const std::size_t m = profile.size();
    std::vector<PohozaevSample> out(m);
    std::vector<double> P(m);
    for (std::size_t i = 0; i < m; ++i)
        P[i] = pohozaev_P(pb, profile.r[i], profile.u[i], profile.uprime[i]);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < m; ++i) {
        out[i].r = profile.r[i];
        out[i].P = P[i];
        out[i].Pprime_formula = pohozaev_Pprime(pb, profile.r[i], profile.u[i]);
        if (i == 0 || i + 1 == m) {
            out[i].Pprime_numeric = nan;
            continue;
        }
        // three-point derivative on a nonuniform grid
        const double h1 = profile.r[i] - profile.r[i - 1];
        const double h2 = profile.r[i + 1] - profile.r[i];
        out[i].Pprime_numeric = -h2 / (h1 * (h1 + h2)) * P[i - 1] +
                                (h2 - h1) / (h1 * h2) * P[i] +
                                h1 / (h2 * (h1 + h2)) * P[i + 1];
    }
    return out;
}

}  // namespace radial
