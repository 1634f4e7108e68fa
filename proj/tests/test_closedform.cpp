#include <cmath>
#include <random>

#include "doctest.h"
#include "radial/closedform.hpp"
#include "radial/util.hpp"

using namespace radial;

namespace {

// central 5-point first derivative, for checking hand-derived slopes
double fd_uprime(const ClosedFormFamily& fam, double r, double h) {
    return (-eval_u(fam, r + 2 * h) + 8 * eval_u(fam, r + h) - 8 * eval_u(fam, r - h) +
            eval_u(fam, r - 2 * h)) /
           (12 * h);
}

// one randomized valid parameter set per family, seeded
ClosedFormFamily random_family(FamilyId id, std::mt19937& rng) {
    auto U = [&rng](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    switch (id) {
        case FamilyId::F1:
            return make_family(id, {{"n", U(2.3, 6)}, {"alpha", U(-0.9, 3)}, {"a", U(0.2, 3)}});
        case FamilyId::F2: {
            const double n = U(2.5, 6), alpha = U(-0.9, 2);
            const double pmax = (n + alpha) / (n - 2.0);
            return make_family(id, {{"n", n}, {"alpha", alpha},
                                    {"p", 1.0 + U(0.1, 0.9) * (pmax - 1.0)}});
        }
        case FamilyId::F3: {
            const double n = U(2.5, 5), alpha = U(-0.9, 2);
            const double pmin = (n + alpha) / (n - 2.0);
            return make_family(id, {{"n", n}, {"alpha", alpha}, {"p", pmin * U(1.05, 2.5)}});
        }
        case FamilyId::F4:
            return make_family(id, {{"a", U(0.2, 3)}, {"B", U(0.2, 4)}});
        case FamilyId::F5:
            return make_family(id, {{"n", U(2.2, 6)}, {"B", U(0.1, 4)}});
        case FamilyId::F6: {
            const double p = U(1.2, 3.5);
            return make_family(id, {{"n", p + U(0.5, 4)}, {"p", p}, {"a", U(0.2, 3)}});
        }
        case FamilyId::F7: {
            const double p = U(1.2, 3.0), n = p + U(0.5, 3);
            const double Mmin = n * (p - 1.0) / (n - p);
            return make_family(id, {{"n", n}, {"p", p}, {"M", Mmin * U(1.05, 3)}});
        }
        case FamilyId::F8:
            return make_family(id, {{"n", U(1.3, 5)}, {"a", U(0.3, 3)}, {"B", U(0.3, 4)}});
        case FamilyId::F9:
            return make_family(id, {{"alpha", U(-0.9, 3)}, {"a", U(-2, 2)}});
        case FamilyId::F10:
            return make_family(id, {{"a", U(-2, 1.5)}});
    }
    throw std::logic_error("unreachable");
}

const FamilyId kAll[] = {FamilyId::F1, FamilyId::F2, FamilyId::F3, FamilyId::F4, FamilyId::F5,
                         FamilyId::F6, FamilyId::F7, FamilyId::F8, FamilyId::F9, FamilyId::F10};

}  // namespace

TEST_CASE("F3 example: n=3, p=4, alpha=0") {
    auto f3 = make_family(FamilyId::F3, {{"n", 3}, {"p", 4}, {"alpha", 0}});
    CHECK(f3.params.at("a") == doctest::Approx(3.0));
    CHECK(initial_height(f3) == doctest::Approx(2.0));
    for (double r : {0.3, 1.0, 2.5}) {
        CHECK(eval_u(f3, r) ==
              doctest::Approx(std::cbrt(8.0 / (1.0 + 36.0 * r * r))).epsilon(1e-13));
        // the defining slope relation u' = -3 r u^4
        CHECK(eval_uprime(f3, r) ==
              doctest::Approx(-3.0 * r * std::pow(eval_u(f3, r), 4.0)).epsilon(1e-12));
    }
    CHECK(residual_max(f3) < 1e-10);
}

TEST_CASE("F2 example: n=3, p=2, alpha=0") {
    auto f2 = make_family(FamilyId::F2, {{"n", 3}, {"p", 2}, {"alpha", 0}});
    CHECK(f2.params.at("a") == doctest::Approx(1.0));
    CHECK(initial_height(f2) == doctest::Approx(4.0));
    for (double r : {0.1, 1.0, 7.0})
        CHECK(eval_u(f2, r) == doctest::Approx(4.0 / (1.0 + 2.0 * r * r)).epsilon(1e-13));
    CHECK(residual_max(f2) < 1e-10);
    // paired equation carries -u^2 + u^3
    REQUIRE(f2.problem.terms.size() == 2);
    CHECK(std::get<PowerTerm>(f2.problem.terms[0]).coeff == doctest::Approx(-1.0));
}

TEST_CASE("F7 example coincides with F3 pointwise") {
    auto f7 = make_family(FamilyId::F7, {{"n", 3}, {"p", 2}, {"M", 4}});
    CHECK(f7.params.at("a") == doctest::Approx(3.0));
    CHECK(f7.params.at("Q") == doctest::Approx(7.0));
    CHECK(initial_height(f7) == doctest::Approx(2.0));
    auto f3 = make_family(FamilyId::F3, {{"n", 3}, {"p", 4}, {"alpha", 0}});
    for (double r : logspace(1e-4, 10, 40)) {
        CHECK(eval_u(f7, r) == doctest::Approx(eval_u(f3, r)).epsilon(1e-12));
        CHECK(eval_uprime(f7, r) == doctest::Approx(eval_uprime(f3, r)).epsilon(1e-11));
    }
}

TEST_CASE("F7 at p=2 equals F3 for random (n, M)") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        const double n = std::uniform_real_distribution<double>(2.6, 5.0)(rng);
        const double M = n / (n - 2.0) * std::uniform_real_distribution<double>(1.1, 2.5)(rng);
        auto f7 = make_family(FamilyId::F7, {{"n", n}, {"p", 2}, {"M", M}});
        auto f3 = make_family(FamilyId::F3, {{"n", n}, {"p", M}, {"alpha", 0}});
        for (double r : {0.2, 1.7, 6.0})
            CHECK(eval_u(f7, r) == doctest::Approx(eval_u(f3, r)).epsilon(1e-11));
    }
}

TEST_CASE("F6 at p=2 equals F1 at alpha=0") {
    auto f6 = make_family(FamilyId::F6, {{"n", 3}, {"p", 2}, {"a", 1}});
    auto f1 = make_family(FamilyId::F1, {{"n", 3}, {"alpha", 0}, {"a", 1}});
    CHECK(initial_height(f1) == doctest::Approx(std::sqrt(3.0)));
    for (double r : logspace(1e-5, 10, 50)) {
        const double expect = std::sqrt(3.0 / (1.0 + 3.0 * r * r));
        CHECK(eval_u(f6, r) == doctest::Approx(expect).epsilon(1e-13));
        CHECK(eval_u(f1, r) == doctest::Approx(expect).epsilon(1e-13));
    }
    CHECK(residual_max(f6) < 1e-10);
}

TEST_CASE("F4 example: a=sqrt2, B=2 vanishes at r=1") {
    auto f4 = make_family(FamilyId::F4, {{"a", std::sqrt(2.0)}, {"B", 2.0}});
    CHECK(eval_u(f4, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    for (double r : {0.2, 0.8})
        CHECK(eval_u(f4, r) == doctest::Approx(2.0 * std::log(2.0 / (r * r + 1.0))).epsilon(1e-13));
    const auto grid = logspace(1e-6, 1.0, 120);
    CHECK(residual_max(f4, grid) < 1e-10);
}

TEST_CASE("F5: solution and negative-B domain") {
    auto f5 = make_family(FamilyId::F5, {{"n", 4}, {"B", 1.0}});
    for (double r : {0.0, 1.0, 3.0})
        CHECK(eval_u(f5, r) == doctest::Approx(std::log(2.0 / (r * r + 1.0))).epsilon(1e-13));
    CHECK(residual_max(f5) < 1e-10);

    auto neg = make_family(FamilyId::F5, {{"n", 3}, {"B", -1.0}});
    CHECK_THROWS_AS(eval_u(neg, 0.5), std::domain_error);  // r^2 + B <= 0
    CHECK(eval_u(neg, 2.0) == doctest::Approx(std::log(2.0 / 3.0)).epsilon(1e-13));
    CHECK(residual_at(neg, 2.0) < 1e-10);
}

TEST_CASE("F9: equals the planar Bratu closure at alpha=0 and evaluates when singular") {
    for (double a : {-1.0, 0.0, 1.4}) {
        auto f9 = make_family(FamilyId::F9, {{"alpha", 0}, {"a", a}});
        for (double r : {0.0, 0.5, 2.0})
            CHECK(eval_u(f9, r) ==
                  doctest::Approx(a - 2.0 * std::log(1.0 + std::exp(a) / 8.0 * r * r)).epsilon(1e-13));
    }
    // strongly singular weight: evaluation-only, residual still vanishes away from 0
    auto sing = make_family(FamilyId::F9, {{"alpha", -1.5}, {"a", 0.5}});
    CHECK(residual_at(sing, 0.37) < 1e-10);
    CHECK_THROWS_AS(eval_uprime(sing, 0.0), std::domain_error);
    CHECK_THROWS_AS(make_family(FamilyId::F9, {{"alpha", -1.0}, {"a", 0.0}}), ValidityViolation);
}

TEST_CASE("F10: Coulomb boundary data") {
    auto f0 = make_family(FamilyId::F10, {{"a", 0.0}});
    CHECK(eval_u(f0, 0.0) == doctest::Approx(0.0));
    CHECK(eval_uprime(f0, 0.0) == doctest::Approx(-1.0));
    CHECK(eval_u(f0, 2.0) == doctest::Approx(-2.0 * std::log(2.0)).epsilon(1e-14));

    for (double a : {-1.5, 0.0, 1.0}) {
        auto f = make_family(FamilyId::F10, {{"a", a}});
        CHECK(eval_uprime(f, 0.0) == doctest::Approx(-std::exp(a)).epsilon(1e-14));
        CHECK(residual_at(f, 1e-5) < 1e-9);
    }
}

TEST_CASE("boundary slope: u'(0) = 0 in the limit except F10") {
    std::mt19937 rng(314159);
    for (FamilyId id : kAll) {
        if (id == FamilyId::F10) continue;
        auto fam = random_family(id, rng);
        if (fam.params.count("alpha") && fam.params.at("alpha") <= -1.0) continue;
        CHECK(eval_uprime(fam, 0.0) == 0.0);
        // |u'| decays monotonically to 0 along r -> 0 (the rate is r^(1+alpha),
        // arbitrarily slow as alpha -> -1, so only the ordering is asserted)
        const double u3 = std::abs(eval_uprime(fam, 1e-12));
        const double u2 = std::abs(eval_uprime(fam, 1e-8));
        const double u1 = std::abs(eval_uprime(fam, 1e-4));
        CHECK(u3 < u2);
        CHECK(u2 < u1);
    }
}

TEST_CASE("hand-coded slopes match central differences") {
    std::mt19937 rng(2718281);
    for (FamilyId id : kAll) {
        for (int trial = 0; trial < 4; ++trial) {
            auto fam = random_family(id, rng);
            for (double r : {0.4, 1.1, 3.3}) {
                const double up = eval_uprime(fam, r);
                const double fd = fd_uprime(fam, r, 1e-4 * std::max(1.0, r));
                CHECK(up == doctest::Approx(fd).epsilon(1e-7));
            }
        }
    }
}

TEST_CASE("ansatz consistency: slope relations hold pointwise") {
    std::mt19937 rng(55);
    const auto rs = logspace(1e-3, 8.0, 25);
    for (int trial = 0; trial < 6; ++trial) {
        auto f1 = random_family(FamilyId::F1, rng);
        {
            const double a = f1.params.at("a"), n = f1.params.at("n"),
                         al = f1.params.at("alpha");
            const double s = (n + al) / (n - 2.0);
            for (double r : rs) {
                const double rhs = -a * std::pow(r, 1.0 + al) * std::pow(eval_u(f1, r), s);
                CHECK(eval_uprime(f1, r) == doctest::Approx(rhs).epsilon(1e-9));
            }
        }
        for (FamilyId id : {FamilyId::F2, FamilyId::F3}) {
            auto fam = random_family(id, rng);
            const double a = fam.params.at("a"), q = fam.params.at("p"),
                         al = fam.params.at("alpha");
            for (double r : rs) {
                const double rhs = -a * std::pow(r, 1.0 + al) * std::pow(eval_u(fam, r), q);
                CHECK(eval_uprime(fam, r) == doctest::Approx(rhs).epsilon(1e-9));
            }
        }
        {
            auto f6 = random_family(FamilyId::F6, rng);
            const double a = f6.params.at("a"), n = f6.params.at("n"), p = f6.params.at("p");
            const double s = n * (p - 1.0) / (n - p);
            for (double r : rs) {
                const double lhs = phi_p(eval_uprime(f6, r), p);
                CHECK(lhs == doctest::Approx(-a * r * std::pow(eval_u(f6, r), s)).epsilon(1e-9));
            }
        }
        {
            auto f7 = random_family(FamilyId::F7, rng);
            const double a = f7.params.at("a"), p = f7.params.at("p"), M = f7.params.at("M");
            for (double r : rs) {
                const double lhs = phi_p(eval_uprime(f7, r), p);
                CHECK(lhs == doctest::Approx(-a * r * std::pow(eval_u(f7, r), M)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("residual oracle: randomized draws stay under 1e-8") {
    std::mt19937 rng(987654321);
    for (FamilyId id : kAll) {
        for (int trial = 0; trial < 5; ++trial) {
            auto fam = random_family(id, rng);
            const double res = residual_max(fam);
            INFO("family ", to_string(id), " trial ", trial);
            CHECK(res < 1e-8);
        }
    }
}

TEST_CASE("printed p=n Bratu coefficient fails the oracle") {
    auto printed = make_f8_printed(3.0, 1.0, 1.0);
    const double res = residual_max(printed);
    CHECK(res > 0.1);  // order-one defect
    auto corrected = make_family(FamilyId::F8, {{"n", 3}, {"a", 1}, {"B", 1}});
    CHECK(residual_max(corrected) < 1e-9);
}

TEST_CASE("validity violations name the failed predicate") {
    // F7 needs M > n(p-1)/(n-p) = 3 at (n,p) = (3,2)
    CHECK_THROWS_AS(make_family(FamilyId::F7, {{"n", 3}, {"p", 2}, {"M", 2.5}}),
                    ValidityViolation);
    // F3 needs a supercritical upper power
    CHECK_THROWS_AS(make_family(FamilyId::F3, {{"n", 3}, {"p", 2}, {"alpha", 0}}),
                    ValidityViolation);
    // F2 is the complementary regime
    CHECK_THROWS_AS(make_family(FamilyId::F2, {{"n", 3}, {"p", 4}, {"alpha", 0}}),
                    ValidityViolation);
    CHECK_THROWS_AS(make_family(FamilyId::F1, {{"n", 3}, {"alpha", 0}, {"a", -1}}),
                    ValidityViolation);
    CHECK_THROWS_AS(make_family(FamilyId::F4, {{"a", 1}}), ValidityViolation);  // missing B
    CHECK_THROWS_AS(make_family(FamilyId::F4, {{"a", 1}, {"B", 1}, {"zz", 0}}),
                    ValidityViolation);  // unknown key
}

TEST_CASE("paired problems are populated") {
    auto f7 = make_family(FamilyId::F7, {{"n", 3}, {"p", 2}, {"M", 4}});
    REQUIRE(f7.problem.terms.size() == 2);
    CHECK(std::get<PowerTerm>(f7.problem.terms[0]).exponent == doctest::Approx(4.0));
    CHECK(std::get<PowerTerm>(f7.problem.terms[1]).exponent == doctest::Approx(7.0));
    CHECK(f7.problem.p == 2.0);

    auto f8 = make_family(FamilyId::F8, {{"n", 3}, {"a", 1}, {"B", 2}});
    CHECK(f8.problem.p == 3.0);  // p = n
    CHECK(std::get<ExpTerm>(f8.problem.terms[0]).coeff == doctest::Approx(2.0));

    auto f10 = make_family(FamilyId::F10, {{"a", 0.5}});
    CHECK(f10.problem.coulomb_mode);
    CHECK(f10.problem.alpha == -1.0);
}
