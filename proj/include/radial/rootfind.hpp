#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace radial {

// Brent's method on a bracketing interval [a, b] with f(a) f(b) <= 0.
template <class F>
double brent(F&& f, double a, double b, double xtol = 1e-14, int max_iter = 200) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw std::invalid_argument("brent: root not bracketed");
    if (std::abs(fa) < std::abs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a, fc = fa, d = b - a, s = b, fs = fb;
    bool mflag = true;
    for (int it = 0; it < max_iter && fs != 0.0 && std::abs(b - a) > xtol; ++it) {
        if (fa != fc && fb != fc) {
            s = a * fb * fc / ((fa - fb) * (fa - fc)) + b * fa * fc / ((fb - fa) * (fb - fc)) +
                c * fa * fb / ((fc - fa) * (fc - fb));
        } else {
            s = b - fb * (b - a) / (fb - fa);
        }
        const double lo = 0.25 * (3.0 * a + b);
        const bool out_of_range = (s < std::fmin(lo, b)) || (s > std::fmax(lo, b));
        if (out_of_range || (mflag && std::abs(s - b) >= 0.5 * std::abs(b - c)) ||
            (!mflag && std::abs(s - b) >= 0.5 * std::abs(c - d)) ||
            (mflag && std::abs(b - c) < xtol) || (!mflag && std::abs(c - d) < xtol)) {
            s = 0.5 * (a + b);
            mflag = true;
        } else {
            mflag = false;
        }
        fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if (fa * fs < 0.0) {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if (std::abs(fa) < std::abs(fb)) {
            std::swap(a, b);
            std::swap(fa, fb);
        }
    }
    return s;
}

// Plain bisection to an absolute x tolerance; returns the midpoint of the
// final bracket. f(a) f(b) <= 0 required.
template <class F>
double bisect(F&& f, double a, double b, double xtol) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw std::invalid_argument("bisect: root not bracketed");
    while (std::abs(b - a) > xtol) {
        const double m = 0.5 * (a + b);
        if (m == a || m == b) break;
        const double fm = f(m);
        if (fm == 0.0) return m;
        if (fa * fm < 0.0) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace radial
