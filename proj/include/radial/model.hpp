#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace radial {

// ---------------------------------------------------------------------------
// Nonlinearity: f(u) is a sum of power and exponential terms.
// ---------------------------------------------------------------------------

struct PowerTerm {
    double coeff;     // nonzero
    double exponent;  // real, > 0
};

struct ExpTerm {
    double coeff;  // nonzero
    double rate;   // finite, nonzero
};

using NonlinearTerm = std::variant<PowerTerm, ExpTerm>;

/// Radial problem  d/dr phi_p(u') + ((n-1)/r) phi_p(u') + lambda r^alpha f(u) = 0.
/// n and p are real-valued; p = 2 is the classical Laplacian. In Coulomb mode
/// alpha is exactly -1 and the natural initial condition becomes u'(0) = -f(a).
struct RadialProblem {
    double n = 3.0;
    double p = 2.0;
    double alpha = 0.0;
    double lambda = 1.0;
    std::vector<NonlinearTerm> terms;
    bool coulomb_mode = false;

    void validate() const;
};

void to_json(nlohmann::json& j, const RadialProblem& pb);
void from_json(const nlohmann::json& j, RadialProblem& pb);

// ---------------------------------------------------------------------------
// phi_p and its inverse
// ---------------------------------------------------------------------------

/// phi_p(z) = z |z|^(p-2); odd and strictly increasing, phi_p(0) = 0.
template <class T>
T phi_p(T z, T p) {
    if (!(p > T(1))) throw std::invalid_argument("phi_p: requires p > 1");
    if (z == T(0)) return T(0);
    using std::abs;
    using std::pow;
    return z * pow(abs(z), p - T(2));
}

/// Inverse of phi_p: w |w|^(1/(p-1) - 1).
template <class T>
T phi_p_inv(T w, T p) {
    if (!(p > T(1))) throw std::invalid_argument("phi_p_inv: requires p > 1");
    if (w == T(0)) return T(0);
    using std::abs;
    using std::pow;
    return w * pow(abs(w), T(1) / (p - T(1)) - T(1));
}

// ---------------------------------------------------------------------------
// Term-sum evaluation. The r^alpha weight and the lambda multiplier are
// applied by callers; these handle only the u-dependence.
// ---------------------------------------------------------------------------

namespace detail {

// Raw sum, no domain or overflow checks. Negative u with a non-integer power
// exponent contributes its value at 0 (only reachable transiently inside the
// integrator when a trial step overshoots the first root).
template <class T>
T f_terms_raw(const std::vector<NonlinearTerm>& terms, T u) {
    using std::exp;
    using std::pow;
    T s = T(0);
    for (const auto& t : terms) {
        if (const auto* pw = std::get_if<PowerTerm>(&t)) {
            T base = u;
            if (u < T(0) && std::nearbyint(pw->exponent) != pw->exponent) base = T(0);
            s += T(pw->coeff) * pow(base, T(pw->exponent));
        } else {
            const auto& e = std::get<ExpTerm>(t);
            s += T(e.coeff) * exp(T(e.rate) * u);
        }
    }
    return s;
}

template <class T>
T F_terms_raw(const std::vector<NonlinearTerm>& terms, T u) {
    using std::exp;
    using std::pow;
    T s = T(0);
    for (const auto& t : terms) {
        if (const auto* pw = std::get_if<PowerTerm>(&t)) {
            T base = u;
            if (u < T(0) && std::nearbyint(pw->exponent) != pw->exponent) base = T(0);
            s += T(pw->coeff) * pow(base, T(pw->exponent) + T(1)) / (T(pw->exponent) + T(1));
        } else {
            const auto& e = std::get<ExpTerm>(t);
            s += T(e.coeff) / T(e.rate) * (exp(T(e.rate) * u) - T(1));
        }
    }
    return s;
}

template <class T>
T fprime_terms_raw(const std::vector<NonlinearTerm>& terms, T u) {
    using std::exp;
    using std::pow;
    T s = T(0);
    for (const auto& t : terms) {
        if (const auto* pw = std::get_if<PowerTerm>(&t)) {
            T base = u;
            if (u < T(0) && std::nearbyint(pw->exponent) != pw->exponent) base = T(0);
            s += T(pw->coeff) * T(pw->exponent) * pow(base, T(pw->exponent) - T(1));
        } else {
            const auto& e = std::get<ExpTerm>(t);
            s += T(e.coeff) * T(e.rate) * exp(T(e.rate) * u);
        }
    }
    return s;
}

void check_u_domain(const std::vector<NonlinearTerm>& terms, double u);

}  // namespace detail

/// f(u); throws std::range_error on overflow, std::domain_error for negative u
/// against a non-integer power exponent.
double eval_f(const RadialProblem& pb, double u);

/// F(u) = int_0^u f(t) dt, F(0) = 0.
double eval_F(const RadialProblem& pb, double u);

/// f'(u), from the closed-form term derivatives.
double eval_fprime(const RadialProblem& pb, double u);

// ---------------------------------------------------------------------------
// Critical exponents
// ---------------------------------------------------------------------------

/// (n + 2 + 2 alpha) / (n - 2), the critical power of the r^alpha-weighted
/// Laplacian problem; requires n > 2.
double critical_exponent_weighted(double n, double alpha);

/// ((p - 1) n + p) / (n - p) for the p-Laplacian; requires n > p > 1.
/// Reduces to (n + 2)/(n - 2) at p = 2.
double critical_exponent_plap(double n, double p);

/// Q = (M p - p + 1) / (p - 1); the conjugate upper power of the two-power
/// family u^M + u^Q. Requires M > p - 1 > 0, which makes Q > M.
double lin_ni_Q(double M, double p);

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

enum class EventKind {
    FirstRoot,                  // u reached 0; r is the refined root rho
    ReachedRmax,                // integration ran to r_max with u still positive
    NonPositiveSlopeViolation,  // u' turned positive while u > 0
};

struct Event {
    EventKind kind;
    double r;
};

/// Dense radial solution: samples of (r, u, u') with r strictly increasing,
/// plus the event record. Immutable value once produced.
struct Profile {
    std::vector<double> r;
    std::vector<double> u;
    std::vector<double> uprime;
    std::vector<Event> events;
    std::size_t steps = 0;

    std::size_t size() const { return r.size(); }
    std::optional<double> first_root() const {
        for (const auto& e : events)
            if (e.kind == EventKind::FirstRoot) return e.r;
        return std::nullopt;
    }
    bool has_event(EventKind k) const {
        for (const auto& e : events)
            if (e.kind == k) return true;
        return false;
    }
};

/// Cubic Hermite interpolation of u on a profile (uses the stored slopes).
double profile_interp(const Profile& pr, double r);

}  // namespace radial
