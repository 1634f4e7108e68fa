#include "radial/model.hpp"

#include <algorithm>
#include <cmath>

namespace radial {

void RadialProblem::validate() const {
    if (!(n > 1.0)) throw std::invalid_argument("RadialProblem: requires n > 1");
    if (!(p > 1.0)) throw std::invalid_argument("RadialProblem: requires p > 1");
    if (coulomb_mode) {
        if (alpha != -1.0)
            throw std::invalid_argument("RadialProblem: Coulomb mode requires alpha = -1 exactly");
    } else if (!(alpha > -1.0)) {
        throw std::invalid_argument("RadialProblem: requires alpha > -1 (alpha = -1 only in Coulomb mode)");
    }
    if (!(lambda > 0.0)) throw std::invalid_argument("RadialProblem: requires lambda > 0");
    if (terms.empty()) throw std::invalid_argument("RadialProblem: terms must be nonempty");
    for (const auto& t : terms) {
        if (const auto* pw = std::get_if<PowerTerm>(&t)) {
            if (pw->coeff == 0.0 || !std::isfinite(pw->coeff))
                throw std::invalid_argument("RadialProblem: power term coeff must be finite and nonzero");
            if (!(pw->exponent > 0.0) || !std::isfinite(pw->exponent))
                throw std::invalid_argument("RadialProblem: power term exponent must be finite and > 0");
        } else {
            const auto& e = std::get<ExpTerm>(t);
            if (e.coeff == 0.0 || !std::isfinite(e.coeff))
                throw std::invalid_argument("RadialProblem: exponential term coeff must be finite and nonzero");
            if (e.rate == 0.0 || !std::isfinite(e.rate))
                throw std::invalid_argument("RadialProblem: exponential term rate must be finite and nonzero");
        }
    }
}

void to_json(nlohmann::json& j, const RadialProblem& pb) {
    j = nlohmann::json{{"n", pb.n}, {"p", pb.p}, {"alpha", pb.alpha}, {"lambda", pb.lambda}};
    j["terms"] = nlohmann::json::array();
    for (const auto& t : pb.terms) {
        if (const auto* pw = std::get_if<PowerTerm>(&t))
            j["terms"].push_back({{"kind", "power"}, {"coeff", pw->coeff}, {"exponent", pw->exponent}});
        else {
            const auto& e = std::get<ExpTerm>(t);
            j["terms"].push_back({{"kind", "exponential"}, {"coeff", e.coeff}, {"rate", e.rate}});
        }
    }
    if (pb.coulomb_mode) j["coulomb_mode"] = true;
}

void from_json(const nlohmann::json& j, RadialProblem& pb) {
    pb = RadialProblem{};
    pb.n = j.at("n").get<double>();
    pb.p = j.value("p", 2.0);
    pb.alpha = j.value("alpha", 0.0);
    pb.lambda = j.value("lambda", 1.0);
    pb.coulomb_mode = j.value("coulomb_mode", false);
    pb.terms.clear();
    if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
        throw std::invalid_argument("problem spec: \"terms\" must be a nonempty array");
    for (const auto& jt : j.at("terms")) {
        const std::string kind = jt.at("kind").get<std::string>();
        if (kind == "power")
            pb.terms.push_back(PowerTerm{jt.at("coeff").get<double>(), jt.at("exponent").get<double>()});
        else if (kind == "exponential" || kind == "exp")
            pb.terms.push_back(ExpTerm{jt.at("coeff").get<double>(), jt.at("rate").get<double>()});
        else
            throw std::invalid_argument("problem spec: unknown term kind \"" + kind +
                                        "\" (expected \"power\" or \"exponential\")");
    }
    pb.validate();
}

namespace detail {

void check_u_domain(const std::vector<NonlinearTerm>& terms, double u) {
    if (u >= 0.0) return;
    for (const auto& t : terms)
        if (const auto* pw = std::get_if<PowerTerm>(&t))
            if (std::nearbyint(pw->exponent) != pw->exponent)
                throw std::domain_error("nonlinearity: u < 0 against non-integer power exponent");
}

}  // namespace detail

double eval_f(const RadialProblem& pb, double u) {
    detail::check_u_domain(pb.terms, u);
    const double v = detail::f_terms_raw(pb.terms, u);
    if (!std::isfinite(v)) throw std::range_error("eval_f: overflow");
    return v;
}

double eval_F(const RadialProblem& pb, double u) {
    detail::check_u_domain(pb.terms, u);
    const double v = detail::F_terms_raw(pb.terms, u);
    if (!std::isfinite(v)) throw std::range_error("eval_F: overflow");
    return v;
}

double eval_fprime(const RadialProblem& pb, double u) {
    detail::check_u_domain(pb.terms, u);
    const double v = detail::fprime_terms_raw(pb.terms, u);
    if (!std::isfinite(v)) throw std::range_error("eval_fprime: overflow");
    return v;
}

double critical_exponent_weighted(double n, double alpha) {
    if (!(n > 2.0)) throw std::invalid_argument("critical_exponent_weighted: requires n > 2");
    return (n + 2.0 + 2.0 * alpha) / (n - 2.0);
}

double critical_exponent_plap(double n, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("critical_exponent_plap: requires p > 1");
    if (!(n > p)) throw std::invalid_argument("critical_exponent_plap: requires n > p");
    return ((p - 1.0) * n + p) / (n - p);
}

double lin_ni_Q(double M, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("lin_ni_Q: requires p > 1");
    if (!(M > p - 1.0)) throw std::invalid_argument("lin_ni_Q: requires M > p - 1");
    return (M * p - p + 1.0) / (p - 1.0);
}

double profile_interp(const Profile& pr, double r) {
    if (pr.size() < 2) throw std::invalid_argument("profile_interp: profile too short");
    if (r < pr.r.front() || r > pr.r.back())
        throw std::domain_error("profile_interp: r outside profile range");
    auto it = std::upper_bound(pr.r.begin(), pr.r.end(), r);
    std::size_t i = (it == pr.r.begin()) ? 0 : std::size_t(it - pr.r.begin()) - 1;
    if (i + 1 >= pr.size()) i = pr.size() - 2;
    const double h = pr.r[i + 1] - pr.r[i];
    const double t = (r - pr.r[i]) / h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    return h00 * pr.u[i] + h10 * h * pr.uprime[i] + h01 * pr.u[i + 1] + h11 * h * pr.uprime[i + 1];
}

}  // namespace radial
