#include "radial/integrate.hpp"

#include <array>
#include <cmath>

#include "radial/rootfind.hpp"

namespace radial {

namespace {

using State = std::array<double, 2>;  // (u, w)

constexpr double kOverflowGuard = 1e150;
constexpr double kSlopeTol = 1e-9;  // positive-slope event threshold on u'

struct Rhs {
    const RadialProblem& pb;

    double uprime(double r, double w) const {
        return phi_p_inv(w / std::pow(r, pb.n - 1.0), pb.p);
    }
    void operator()(double r, const State& y, State& dy) const {
        dy[0] = uprime(r, y[1]);
        dy[1] = -pb.lambda * std::pow(r, pb.alpha + pb.n - 1.0) *
                detail::f_terms_raw(pb.terms, y[0]);
    }
};

// Dormand-Prince 5(4) pair with the standard quartic dense output.
class Dopri5 {
  public:
    Dopri5(const Rhs& rhs, double rtol, double atol) : rhs_(rhs), rtol_(rtol), atol_(atol) {}

    void init(double r0, const State& y0, double h0) {
        r_ = r0;
        y_ = y0;
        rhs_(r_, y_, k1_);
        h_ = h0;
    }

    double r() const { return r_; }
    double r_prev() const { return rp_; }
    const State& y() const { return y_; }
    double h_next() const { return h_; }

    // One accepted step, no farther than r_end. Returns false when the step
    // size underflows or the state stops being finite.
    bool step(double r_end, std::string* fail_reason) {
        bool rejected = false;
        for (int attempt = 0; attempt < 200; ++attempt) {
            double h = std::min(h_, r_end - r_);
            if (!(h > 0)) h = r_end - r_;
            const bool clipped = (h >= r_end - r_);
            if (h < 1e-14 * std::max(1.0, r_)) {
                *fail_reason = "step_underflow";
                return false;
            }

            State k2, k3, k4, k5, k6, yt, y5;
            for (int i = 0; i < 2; ++i) yt[i] = y_[i] + h * a21 * k1_[i];
            rhs_(r_ + c2 * h, yt, k2);
            for (int i = 0; i < 2; ++i) yt[i] = y_[i] + h * (a31 * k1_[i] + a32 * k2[i]);
            rhs_(r_ + c3 * h, yt, k3);
            for (int i = 0; i < 2; ++i)
                yt[i] = y_[i] + h * (a41 * k1_[i] + a42 * k2[i] + a43 * k3[i]);
            rhs_(r_ + c4 * h, yt, k4);
            for (int i = 0; i < 2; ++i)
                yt[i] = y_[i] + h * (a51 * k1_[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            rhs_(r_ + c5 * h, yt, k5);
            for (int i = 0; i < 2; ++i)
                yt[i] = y_[i] +
                        h * (a61 * k1_[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
            rhs_(r_ + h, yt, k6);
            for (int i = 0; i < 2; ++i)
                y5[i] = y_[i] +
                        h * (b1 * k1_[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
            State k7;
            rhs_(r_ + h, y5, k7);

            double err = 0.0;
            bool finite = true;
            for (int i = 0; i < 2; ++i) {
                const double ei = h * (e1 * k1_[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                       e6 * k6[i] + e7 * k7[i]);
                const double sc = atol_ + rtol_ * std::max(std::abs(y_[i]), std::abs(y5[i]));
                err += (ei / sc) * (ei / sc);
                finite = finite && std::isfinite(y5[i]) && std::isfinite(k7[i]);
            }
            err = std::sqrt(0.5 * err);

            if (!finite || !std::isfinite(err)) {
                if (std::abs(y_[0]) > kOverflowGuard || std::abs(y_[1]) > kOverflowGuard) {
                    *fail_reason = "overflow";
                    return false;
                }
                h_ = 0.1 * h;
                rejected = true;
                continue;
            }

            if (err <= 1.0) {
                // dense output coefficients for this step
                for (int i = 0; i < 2; ++i) {
                    const double ydiff = y5[i] - y_[i];
                    const double bspl = h * k1_[i] - ydiff;
                    rc1_[i] = y_[i];
                    rc2_[i] = ydiff;
                    rc3_[i] = bspl;
                    rc4_[i] = ydiff - h * k7[i] - bspl;
                    rc5_[i] = h * (d1 * k1_[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                   d6 * k6[i] + d7 * k7[i]);
                }
                rp_ = r_;
                hp_ = h;
                r_ = clipped ? r_end : r_ + h;
                y_ = y5;
                k1_ = k7;  // FSAL
                const double fac =
                    std::min(rejected ? 1.0 : 5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
                h_ = h * fac;
                return true;
            }
            h_ = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
            rejected = true;
        }
        *fail_reason = "step_underflow";
        return false;
    }

    // Evaluate the dense interpolant of component i at r within the last step.
    double dense(int i, double r) const {
        const double th = (r - rp_) / hp_;
        const double th1 = 1.0 - th;
        return rc1_[i] + th * (rc2_[i] + th1 * (rc3_[i] + th * (rc4_[i] + th1 * rc5_[i])));
    }

  private:
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    static constexpr double d1 = -12715105075.0 / 11282082432.0,
                            d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0,
                            d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    const Rhs& rhs_;
    double rtol_, atol_;
    double r_ = 0, rp_ = 0, hp_ = 0, h_ = 0;
    State y_{}, k1_{};
    State rc1_{}, rc2_{}, rc3_{}, rc4_{}, rc5_{};
};

struct SeriesStart {
    double h0;
    double u, w, up;
    // u(r) = a + uc1 r^k + uc2 r^(2k) for r in (0, h0]
    double a, uc1, uc2, k;
    double wc1, wk1, wc2, wk2;  // w(r) = wc1 r^wk1 + wc2 r^wk2

    double u_at(double r) const { return a + uc1 * std::pow(r, k) + uc2 * std::pow(r, 2 * k); }
    double w_at(double r) const {
        return wc1 * std::pow(r, wk1) + wc2 * std::pow(r, wk2);
    }
};

SeriesStart series_start(const RadialProblem& pb, double a, const IvpConfig& cfg) {
    const double n = pb.n, p = pb.p, al = pb.alpha, lam = pb.lambda;
    const double fa = detail::f_terms_raw(pb.terms, a);
    const double fpa = detail::fprime_terms_raw(pb.terms, a);
    if (!std::isfinite(fa) || !std::isfinite(fpa))
        throw std::range_error("integrate_ivp: f(a) overflows");

    SeriesStart s{};
    s.a = a;
    s.k = (p + al) / (p - 1.0);
    s.uc1 = phi_p_inv(-lam * fa / (n + al), p) * (p - 1.0) / (p + al);
    s.uc2 = (fa != 0.0)
                ? 0.5 * s.uc1 * s.uc1 * fpa * (n + al) / ((p - 1.0) * fa * (n + al + s.k))
                : 0.0;
    s.wc1 = -lam * fa / (n + al);
    s.wk1 = n + al;
    s.wc2 = -lam * fpa * s.uc1 / (n + al + s.k);
    s.wk2 = n + al + s.k;

    double h0 = cfg.h0_max;
    if (s.uc2 != 0.0)
        h0 = std::min(h0, std::pow(cfg.abs_tol / std::abs(s.uc2), 1.0 / (2.0 * s.k)));
    h0 = std::max(h0, 1e-8);
    h0 = std::min(h0, 0.1 * cfg.r_max);
    s.h0 = h0;
    s.u = s.u_at(h0);
    s.w = s.w_at(h0);
    s.up = phi_p_inv(s.w / std::pow(h0, n - 1.0), p);
    return s;
}

SeriesStart coulomb_start(const RadialProblem& pb, double a, const IvpConfig& cfg) {
    // n = 2, p = 2, alpha = -1: u ~ a - f(a) r + f(a) f'(a) r^2 / 4, w = r u'.
    const double lam = pb.lambda;
    const double fa = lam * detail::f_terms_raw(pb.terms, a);
    const double fpa = lam * detail::fprime_terms_raw(pb.terms, a);
    if (!std::isfinite(fa) || !std::isfinite(fpa))
        throw std::range_error("integrate_coulomb: f(a) overflows");

    SeriesStart s{};
    s.a = a;
    s.k = 1.0;
    s.uc1 = -fa;
    s.uc2 = 0.25 * fa * fpa;
    // w = r u' = -fa r + (fa fpa / 2) r^2
    s.wc1 = -fa;
    s.wk1 = 1.0;
    s.wc2 = 0.5 * fa * fpa;
    s.wk2 = 2.0;

    const double c3est = std::abs(fa * fpa * fpa) / 6.0 + std::abs(s.uc2) * 1e-2;
    double h0 = std::min(cfg.h0_max, 1e-3);
    if (c3est > 0.0) h0 = std::min(h0, std::cbrt(cfg.abs_tol / c3est));
    h0 = std::max(h0, 1e-8);
    s.h0 = h0;
    s.u = s.u_at(h0);
    s.w = s.w_at(h0);
    s.up = s.w / h0;
    return s;
}

Profile integrate_core(const RadialProblem& pb, double a, const IvpConfig& cfg, bool coulomb) {
    if (!(cfg.rel_tol > 0 && cfg.abs_tol > 0)) throw std::invalid_argument("IvpConfig: tolerances must be positive");
    if (!(cfg.r_max > 0)) throw std::invalid_argument("IvpConfig: r_max must be positive");
    if (!std::isfinite(a)) throw std::invalid_argument("integrate: a must be finite");

    const Rhs rhs{pb};
    Profile out;
    auto emit = [&out, &rhs](double r, double u, double w) {
        out.r.push_back(r);
        out.u.push_back(u);
        out.uprime.push_back(r > 0 ? rhs.uprime(r, w) : 0.0);
    };

    const SeriesStart st = coulomb ? coulomb_start(pb, a, cfg) : series_start(pb, a, cfg);

    // origin sample carries the exact initial slope
    out.r.push_back(0.0);
    out.u.push_back(a);
    out.uprime.push_back(coulomb ? st.uc1 : 0.0);

    double next_sample = cfg.sample_dr > 0 ? cfg.sample_dr : 0.0;
    if (cfg.sample_dr > 0) {
        while (next_sample < st.h0) {
            emit(next_sample, st.u_at(next_sample), st.w_at(next_sample));
            next_sample += cfg.sample_dr;
        }
    }

    Dopri5 stepper(rhs, cfg.rel_tol, cfg.abs_tol);
    stepper.init(st.h0, {st.u, st.w}, st.h0);
    if (cfg.sample_dr <= 0) {
        out.r.push_back(st.h0);
        out.u.push_back(st.u);
        out.uprime.push_back(st.up);
    }

    const bool root_armed = a > 0.0;
    bool slope_flagged = false;
    bool done = false;
    while (!done) {
        if (out.steps++ >= cfg.max_steps) throw NumericalFailure("step_limit", std::move(out));
        std::string why;
        if (!stepper.step(cfg.r_max, &why)) throw NumericalFailure(why, std::move(out));

        const double r0 = stepper.r_prev(), r1 = stepper.r();
        const double u1 = stepper.y()[0], w1 = stepper.y()[1];
        double r_cut = r1;  // where this step's output ends

        // first root of u
        bool rooted = false;
        if (root_armed && u1 <= 0.0 && stepper.dense(0, r0) > 0.0) {
            const double rho = bisect([&](double r) { return stepper.dense(0, r); }, r0, r1,
                                      1e-13 * std::max(1.0, r1));
            r_cut = rho;
            rooted = true;
        }

        // positive slope while u > 0: with positive f this is an anomaly and
        // is recorded once; in relaxed mode it is the designed turnaround stop
        bool turned = false;
        if (!rooted && u1 > 10.0 * cfg.abs_tol && r1 > 0) {
            const double up1 = rhs.uprime(r1, w1);
            if (up1 > kSlopeTol) {
                double rt = r1;
                if (stepper.dense(1, r0) < 0.0 && w1 >= 0.0)
                    rt = bisect([&](double r) { return stepper.dense(1, r); }, r0, r1,
                                1e-13 * std::max(1.0, r1));
                if (!slope_flagged) {
                    out.events.push_back({EventKind::NonPositiveSlopeViolation, rt});
                    slope_flagged = true;
                }
                if (!cfg.require_positive_f) {
                    r_cut = rt;
                    turned = true;
                }
            }
        }

        if (cfg.sample_dr > 0) {
            while (next_sample < r_cut) {
                emit(next_sample, stepper.dense(0, next_sample), stepper.dense(1, next_sample));
                next_sample += cfg.sample_dr;
            }
        }

        if (rooted) {
            emit(r_cut, stepper.dense(0, r_cut), stepper.dense(1, r_cut));
            out.events.push_back({EventKind::FirstRoot, r_cut});
            done = true;
        } else if (turned) {
            emit(r_cut, stepper.dense(0, r_cut), stepper.dense(1, r_cut));
            done = true;
        } else {
            if (cfg.sample_dr <= 0) emit(r1, u1, w1);
            if (r1 >= cfg.r_max) {
                if (cfg.sample_dr > 0 && (out.r.empty() || out.r.back() < r1)) emit(r1, u1, w1);
                out.events.push_back({EventKind::ReachedRmax, r1});
                done = true;
            }
        }
    }
    return out;
}

}  // namespace

Profile integrate_ivp(const RadialProblem& pb, double a, const IvpConfig& cfg) {
    pb.validate();
    if (pb.coulomb_mode)
        throw std::invalid_argument("integrate_ivp: Coulomb problems go through integrate_coulomb");
    return integrate_core(pb, a, cfg, false);
}

Profile integrate_coulomb(const RadialProblem& pb, double a, const IvpConfig& cfg) {
    pb.validate();
    if (!pb.coulomb_mode || pb.alpha != -1.0)
        throw std::invalid_argument("integrate_coulomb: problem must have coulomb_mode and alpha = -1");
    if (pb.n != 2.0 || pb.p != 2.0)
        throw std::invalid_argument("integrate_coulomb: stated for the planar Laplacian (n = 2, p = 2)");
    return integrate_core(pb, a, cfg, true);
}

RootOutcome first_root(const RadialProblem& pb, double a, const IvpConfig& cfg) {
    pb.validate();
    if (!(a > 0.0)) throw std::invalid_argument("first_root: requires a > 0");
    if (cfg.require_positive_f) {
        for (int j = 1; j <= 64; ++j) {
            const double u = a * double(j) / 64.0;
            if (!(detail::f_terms_raw(pb.terms, u) > 0.0))
                throw std::invalid_argument(
                    "first_root: f(u) must be positive on (0, a] (violated near u = " +
                    std::to_string(u) + "); integrate_ivp still accepts this problem");
        }
    }

    RootOutcome out;
    try {
        out.profile = integrate_core(pb, a, cfg, pb.coulomb_mode);
    } catch (const NumericalFailure& nf) {
        out.kind = RootOutcome::Kind::Failed;
        out.reason = nf.reason;
        out.profile = nf.partial;
        return out;
    }
    if (auto rho = out.profile.first_root()) {
        out.kind = RootOutcome::Kind::Root;
        out.rho = *rho;
    } else if (out.profile.has_event(EventKind::NonPositiveSlopeViolation)) {
        if (!cfg.require_positive_f) {
            out.kind = RootOutcome::Kind::NoRootUpTo;  // turnaround: no root will occur
            out.r_reached = out.profile.r.back();
        } else {
            out.kind = RootOutcome::Kind::Failed;
            out.reason = "monotonicity violated (u' > 0 while u > 0)";
        }
    } else {
        out.kind = RootOutcome::Kind::NoRootUpTo;
        out.r_reached = cfg.r_max;
    }
    return out;
}

}  // namespace radial
