#include "radial/closedform.hpp"

#include <cmath>

#include "radial/util.hpp"

namespace radial {

FamilyId family_from_string(const std::string& s) {
    static const std::map<std::string, FamilyId> table = {
        {"F1", FamilyId::F1}, {"F2", FamilyId::F2}, {"F3", FamilyId::F3},
        {"F4", FamilyId::F4}, {"F5", FamilyId::F5}, {"F6", FamilyId::F6},
        {"F7", FamilyId::F7}, {"F8", FamilyId::F8}, {"F9", FamilyId::F9},
        {"F10", FamilyId::F10}};
    auto it = table.find(s);
    if (it == table.end()) throw std::invalid_argument("unknown family id: " + s);
    return it->second;
}

std::string to_string(FamilyId id) {
    switch (id) {
        case FamilyId::F1: return "F1";
        case FamilyId::F2: return "F2";
        case FamilyId::F3: return "F3";
        case FamilyId::F4: return "F4";
        case FamilyId::F5: return "F5";
        case FamilyId::F6: return "F6";
        case FamilyId::F7: return "F7";
        case FamilyId::F8: return "F8";
        case FamilyId::F9: return "F9";
        case FamilyId::F10: return "F10";
    }
    return "?";
}

namespace {

using T = long double;
using detail::LogShape;
using detail::OracleTerm;
using detail::RationalShape;
using detail::Shape;

double need(const std::map<std::string, double>& params, const std::string& key, FamilyId id) {
    auto it = params.find(key);
    if (it == params.end())
        throw ValidityViolation(to_string(id) + ": missing parameter \"" + key + "\"");
    if (!std::isfinite(it->second))
        throw ValidityViolation(to_string(id) + ": parameter \"" + key + "\" must be finite");
    return it->second;
}

void reject_unknown(const std::map<std::string, double>& params,
                    std::initializer_list<const char*> known, FamilyId id) {
    for (const auto& [key, val] : params) {
        (void)val;
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) throw ValidityViolation(to_string(id) + ": unknown parameter \"" + key + "\"");
    }
}

template <class S>
S shape_D(const Shape& sh, S r) {
    using std::pow;
    if (const auto* s = std::get_if<RationalShape>(&sh)) return S(s->c0) + S(s->c1) * pow(r, S(s->k));
    const auto& s = std::get<LogShape>(sh);
    return S(s.c0) + S(s.c1) * pow(r, S(s.k));
}

template <class S>
S shape_u(const Shape& sh, S r) {
    using std::log;
    using std::pow;
    const S D = shape_D(sh, r);
    if (!(D > S(0)))
        throw std::domain_error("family evaluation: outside validity domain (denominator <= 0)");
    if (const auto* s = std::get_if<RationalShape>(&sh)) return pow(S(s->A) / D, S(s->gamma));
    const auto& s = std::get<LogShape>(sh);
    return S(s.C) - S(s.mu) * log(D);
}

template <class S>
S shape_uprime(const Shape& sh, S r) {
    using std::pow;
    if (const auto* s = std::get_if<RationalShape>(&sh)) {
        if (r == S(0)) {
            if (s->k > 1.0L) return S(0);
            throw std::domain_error("family evaluation: derivative unbounded at r = 0");
        }
        const S D = shape_D(sh, r);
        if (!(D > S(0))) throw std::domain_error("family evaluation: outside validity domain");
        return -S(s->gamma) * S(s->k) * S(s->c1) * pow(S(s->A), S(s->gamma)) *
               pow(r, S(s->k) - S(1)) * pow(D, -S(s->gamma) - S(1));
    }
    const auto& s = std::get<LogShape>(sh);
    if (r == S(0)) {
        if (s.k > 1.0L) return S(0);
        if (s.k == 1.0L) return -S(s.mu) * S(s.c1) / S(s.c0);
        throw std::domain_error("family evaluation: derivative unbounded at r = 0");
    }
    const S D = shape_D(sh, r);
    if (!(D > S(0))) throw std::domain_error("family evaluation: outside validity domain");
    return -S(s.mu) * S(s.k) * S(s.c1) * pow(r, S(s.k) - S(1)) / D;
}

// d/dr phi_p(u') for r > 0. Both shapes give phi_p(u') = -E r^m D^-nu with
// m = (k-1)(p-1), so the derivative is rational in r and D.
template <class S>
S shape_dphi(const Shape& sh, S p, S r) {
    using std::pow;
    const S D = shape_D(sh, r);
    if (!(D > S(0))) throw std::domain_error("family evaluation: outside validity domain");
    if (const auto* s = std::get_if<RationalShape>(&sh)) {
        const S E = pow(S(s->gamma) * S(s->k) * S(s->c1) * pow(S(s->A), S(s->gamma)), p - S(1));
        const S nu = (S(s->gamma) + S(1)) * (p - S(1));
        const S m = (S(s->k) - S(1)) * (p - S(1));
        return -E * pow(r, m - S(1)) * pow(D, -nu - S(1)) *
               (m * D - nu * S(s->k) * S(s->c1) * pow(r, S(s->k)));
    }
    const auto& s = std::get<LogShape>(sh);
    const S E = pow(S(s.mu) * S(s.k) * S(s.c1), p - S(1));
    const S m = (S(s.k) - S(1)) * (p - S(1));
    return -E * pow(r, m - S(1)) * pow(D, -p) *
           (m * D - (p - S(1)) * S(s.k) * S(s.c1) * pow(r, S(s.k)));
}

T f_oracle(const std::vector<OracleTerm>& terms, T u) {
    T s = 0;
    for (const auto& t : terms)
        s += t.exponential ? t.coeff * std::exp(t.expo * u) : t.coeff * std::pow(u, t.expo);
    return s;
}

ClosedFormFamily finish(FamilyId id, std::map<std::string, double> params, RadialProblem pb,
                        Shape shape, std::vector<OracleTerm> oracle) {
    ClosedFormFamily fam;
    fam.id = id;
    fam.params = std::move(params);
    fam.problem = std::move(pb);
    fam.shape = shape;
    fam.oracle_terms = std::move(oracle);
    return fam;
}

}  // namespace

ClosedFormFamily make_family(FamilyId id, const std::map<std::string, double>& params) {
    auto P = params;
    switch (id) {
        case FamilyId::F1: {
            reject_unknown(P, {"n", "alpha", "a"}, id);
            const double n = need(P, "n", id), alpha = need(P, "alpha", id), a = need(P, "a", id);
            if (!(n > 2.0)) throw ValidityViolation("F1: requires n > 2");
            if (!(alpha > -1.0)) throw ValidityViolation("F1: requires alpha > -1");
            if (!(a > 0.0)) throw ValidityViolation("F1: requires a > 0");
            const T nL = n, alL = alpha, aL = a;
            const T qL = (nL + 2 + 2 * alL) / (nL - 2);
            P["q"] = double(qL);
            RadialProblem pb{n, 2.0, alpha, 1.0, {PowerTerm{1.0, double(qL)}}, false};
            RationalShape sh{aL * (nL + alL), (nL - 2) / (2 + alL), 1.0L,
                             aL * aL * (nL + alL) / (nL - 2), 2 + alL};
            return finish(id, P, pb, sh, {{false, 1.0L, qL}});
        }
        case FamilyId::F2: {
            reject_unknown(P, {"n", "p", "alpha"}, id);
            const double n = need(P, "n", id), p = need(P, "p", id), alpha = need(P, "alpha", id);
            if (!(n > 2.0)) throw ValidityViolation("F2: requires n > 2");
            if (!(p > 1.0)) throw ValidityViolation("F2: requires p > 1");
            if (!(alpha > -1.0)) throw ValidityViolation("F2: requires alpha > -1");
            if (!(p < (n + alpha) / (n - 2.0)))
                throw ValidityViolation("F2: requires p < (n+alpha)/(n-2) (both powers subcritical)");
            const T nL = n, pL = p, alL = alpha;
            const T aL = (pL - 1) / (alL - nL * pL + nL + 2 * pL);
            P["a"] = double(aL);
            RadialProblem pb{n, 2.0, alpha, 1.0,
                             {PowerTerm{-1.0, p}, PowerTerm{1.0, double(2 * pL - 1)}}, false};
            RationalShape sh{aL * (nL + alL) + 1, 1 / (pL - 1), 1.0L, pL * aL * aL, 2 + alL};
            return finish(id, P, pb, sh, {{false, -1.0L, pL}, {false, 1.0L, 2 * pL - 1}});
        }
        case FamilyId::F3: {
            reject_unknown(P, {"n", "p", "alpha"}, id);
            const double n = need(P, "n", id), p = need(P, "p", id), alpha = need(P, "alpha", id);
            if (!(n > 2.0)) throw ValidityViolation("F3: requires n > 2");
            if (!(p > 1.0)) throw ValidityViolation("F3: requires p > 1");
            if (!(alpha > -1.0)) throw ValidityViolation("F3: requires alpha > -1");
            if (!(p > (n + alpha) / (n - 2.0)))
                throw ValidityViolation("F3: requires p > (n+alpha)/(n-2) (upper power supercritical)");
            const T nL = n, pL = p, alL = alpha;
            const T aL = (pL - 1) / (nL * pL - nL - 2 * pL - alL);
            P["a"] = double(aL);
            RadialProblem pb{n, 2.0, alpha, 1.0,
                             {PowerTerm{1.0, p}, PowerTerm{1.0, double(2 * pL - 1)}}, false};
            RationalShape sh{aL * (nL + alL) - 1, 1 / (pL - 1), 1.0L, pL * aL * aL, 2 + alL};
            return finish(id, P, pb, sh, {{false, 1.0L, pL}, {false, 1.0L, 2 * pL - 1}});
        }
        case FamilyId::F4: {
            reject_unknown(P, {"a", "B"}, id);
            const double a = need(P, "a", id), B = need(P, "B", id);
            if (!(a > 0.0)) throw ValidityViolation("F4: requires a > 0");
            if (!(B > 0.0)) throw ValidityViolation("F4: requires B > 0");
            const T aL = a;
            RadialProblem pb{2.0, 2.0, 0.0, 1.0, {ExpTerm{B, 1.0}}, false};
            LogShape sh{2 * std::log(2 * std::sqrt(2.0L) * aL), 2.0L, T(B), aL * aL, 2.0L};
            return finish(id, P, pb, sh, {{true, T(B), 1.0L}});
        }
        case FamilyId::F5: {
            reject_unknown(P, {"n", "B"}, id);
            const double n = need(P, "n", id), B = need(P, "B", id);
            if (!(n > 1.0)) throw ValidityViolation("F5: requires n > 1");
            if (n == 2.0 && B == 0.0)
                throw ValidityViolation("F5: n = 2 with B = 0 leaves no nonlinearity");
            std::vector<NonlinearTerm> terms;
            std::vector<OracleTerm> ots;
            if (n != 2.0) {
                terms.push_back(ExpTerm{n - 2.0, 1.0});
                ots.push_back({true, T(n) - 2, 1.0L});
            }
            if (B != 0.0) {
                terms.push_back(ExpTerm{B, 2.0});
                ots.push_back({true, T(B), 2.0L});
            }
            RadialProblem pb{n, 2.0, 0.0, 1.0, terms, false};
            LogShape sh{std::log(2.0L), 1.0L, T(B), 1.0L, 2.0L};
            return finish(id, P, pb, sh, ots);
        }
        case FamilyId::F6: {
            reject_unknown(P, {"n", "p", "a"}, id);
            const double n = need(P, "n", id), p = need(P, "p", id), a = need(P, "a", id);
            if (!(p > 1.0)) throw ValidityViolation("F6: requires p > 1");
            if (!(n > p)) throw ValidityViolation("F6: requires n > p");
            if (!(a > 0.0)) throw ValidityViolation("F6: requires a > 0");
            const T nL = n, pL = p, aL = a;
            const T qL = ((pL - 1) * nL + pL) / (nL - pL);
            P["q"] = double(qL);
            RadialProblem pb{n, p, 0.0, 1.0, {PowerTerm{1.0, double(qL)}}, false};
            const T kap = pL / (pL - 1);
            RationalShape sh{aL * (nL - pL), (nL - pL) / pL, (nL - pL) / nL,
                             (pL - 1) * std::pow(aL, kap), kap};
            return finish(id, P, pb, sh, {{false, 1.0L, qL}});
        }
        case FamilyId::F7: {
            reject_unknown(P, {"n", "p", "M"}, id);
            const double n = need(P, "n", id), p = need(P, "p", id), M = need(P, "M", id);
            if (!(p > 1.0)) throw ValidityViolation("F7: requires p > 1");
            if (!(n > p)) throw ValidityViolation("F7: requires n > p");
            if (!(M > n * (p - 1.0) / (n - p)))
                throw ValidityViolation("F7: requires M > n(p-1)/(n-p), otherwise a <= 0 or a n <= 1");
            const T nL = n, pL = p, ML = M;
            const T QL = (ML * pL - pL + 1) / (pL - 1);
            const T aL = (ML - pL + 1) / (ML * nL - pL * nL + nL - ML * pL);
            P["a"] = double(aL);
            P["Q"] = double(QL);
            RadialProblem pb{n, p, 0.0, 1.0, {PowerTerm{1.0, M}, PowerTerm{1.0, double(QL)}},
                             false};
            const T kap = pL / (pL - 1);
            RationalShape sh{aL * nL - 1, (pL - 1) / (ML - pL + 1), 1.0L,
                             std::pow(aL, kap) * ML, kap};
            return finish(id, P, pb, sh, {{false, 1.0L, ML}, {false, 1.0L, QL}});
        }
        case FamilyId::F8: {
            reject_unknown(P, {"n", "a", "B"}, id);
            const double n = need(P, "n", id), a = need(P, "a", id), B = need(P, "B", id);
            if (!(n > 1.0)) throw ValidityViolation("F8: requires n > 1");
            if (!(a > 0.0)) throw ValidityViolation("F8: requires a > 0");
            if (!(B > 0.0)) throw ValidityViolation("F8: requires B > 0");
            const T nL = n, aL = a;
            RadialProblem pb{n, n, 0.0, 1.0, {ExpTerm{B, 1.0}}, false};
            const T kap = nL / (nL - 1);
            LogShape sh{nL * std::log(aL * nL), nL, T(B), ((nL - 1) / nL) * std::pow(aL, kap),
                        kap};
            return finish(id, P, pb, sh, {{true, T(B), 1.0L}});
        }
        case FamilyId::F9: {
            reject_unknown(P, {"alpha", "a"}, id);
            const double alpha = need(P, "alpha", id), a = need(P, "a", id);
            if (!(alpha > -2.0)) throw ValidityViolation("F9: requires alpha > -2");
            if (alpha == -1.0)
                throw ValidityViolation("F9: alpha = -1 is the Coulomb case; use F10");
            // For alpha <= -1 the family is evaluation-only: the paired
            // problem sits outside the integrable range and integrate_ivp
            // rejects it.
            const T alL = alpha, aL = a;
            RadialProblem pb{2.0, 2.0, alpha, 1.0, {ExpTerm{1.0, 1.0}}, false};
            const T c = std::exp(aL) / (2 * (2 + alL) * (2 + alL));
            LogShape sh{aL, 2.0L, 1.0L, c, 2 + alL};
            return finish(id, P, pb, sh, {{true, 1.0L, 1.0L}});
        }
        case FamilyId::F10: {
            reject_unknown(P, {"a"}, id);
            const double a = need(P, "a", id);
            if (!std::isfinite(a)) throw ValidityViolation("F10: a must be finite");
            RadialProblem pb{2.0, 2.0, -1.0, 1.0, {ExpTerm{1.0, 1.0}}, true};
            LogShape sh{T(a), 2.0L, 1.0L, 0.5L * std::exp(T(a)), 1.0L};
            return finish(id, P, pb, sh, {{true, 1.0L, 1.0L}});
        }
    }
    throw std::invalid_argument("make_family: bad family id");
}

ClosedFormFamily make_f8_printed(double n, double a, double B) {
    auto fam = make_family(FamilyId::F8, {{"n", n}, {"a", a}, {"B", B}});
    const T nL = n, aL = a;
    const T kap = nL / (nL - 1);
    fam.shape = LogShape{nL * std::log(aL * nL), nL, T(B), (nL / (nL - 1)) * std::pow(aL, kap),
                         kap};
    fam.printed_f8 = true;
    return fam;
}

double eval_u(const ClosedFormFamily& fam, double r) { return double(shape_u(fam.shape, T(r))); }

double eval_uprime(const ClosedFormFamily& fam, double r) {
    return double(shape_uprime(fam.shape, T(r)));
}

double eval_phi_uprime_deriv(const ClosedFormFamily& fam, double r) {
    if (!(r > 0.0)) throw std::domain_error("eval_phi_uprime_deriv: requires r > 0");
    return double(shape_dphi(fam.shape, T(fam.problem.p), T(r)));
}

double residual_at(const ClosedFormFamily& fam, double r) {
    if (!(r > 0.0)) throw std::domain_error("residual_at: requires r > 0");
    const T rr = r;
    const T p = fam.problem.p;
    const T u = shape_u(fam.shape, rr);
    const T up = shape_uprime(fam.shape, rr);
    const T dphi = shape_dphi(fam.shape, p, rr);
    const T f = f_oracle(fam.oracle_terms, u);
    const T res = dphi + (T(fam.problem.n) - 1) / rr * phi_p(up, p) +
                  T(fam.problem.lambda) * std::pow(rr, T(fam.problem.alpha)) * f;
    return std::abs(double(res));
}

double residual_max(const ClosedFormFamily& fam, std::span<const double> r_grid) {
    double m = 0.0;
    for (double r : r_grid) m = std::max(m, residual_at(fam, r));
    return m;
}

double residual_max(const ClosedFormFamily& fam) {
    const auto grid = logspace(1e-6, 10.0, 200);
    return residual_max(fam, grid);
}

double initial_height(const ClosedFormFamily& fam) { return eval_u(fam, 0.0); }

}  // namespace radial
