#include "doctest.h"

#include "hyperlevy/errors.hpp"
#include "hyperlevy/exponents.hpp"
#include "hyperlevy/stable.hpp"

#include <cmath>
#include <numbers>

using namespace hyperlevy;

namespace {

constexpr double pi = std::numbers::pi;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

bool same(const HGParams& a, const HGParams& b)
{
    return std::fabs(a.beta - b.beta) < 1e-15 && std::fabs(a.gamma - b.gamma) < 1e-15
           && std::fabs(a.betah - b.betah) < 1e-15 && std::fabs(a.gammah - b.gammah) < 1e-15;
}

} // namespace

TEST_CASE("stable parameters and exponent")
{
    StableParams sp = make_stable(1.5, 0.4);
    CHECK(sp.rhoh == doctest::Approx(0.6));
    CHECK(sp.c_plus > 0);
    CHECK(sp.c_plus > sp.c_minus);
    CHECK_THROWS(make_stable(1.5, 0.7));
    CHECK_THROWS(make_stable(2.5, 0.5));
    CHECK(admissible_stable(0.8, 0.9));
    cplx a = stable_char_exponent(sp, 1.0);
    CHECK(rel(stable_char_exponent(sp, 2.0), std::pow(2.0, 1.5) * a) < 1e-14);
    CHECK(rel(stable_char_exponent(sp, -1.0), std::conj(a)) < 1e-14);
    CHECK(std::fabs(std::abs(std::arg(a)) - pi * 1.5 * 0.1) < 1e-14);
    CHECK(std::fabs(stable_char_exponent(make_stable(1.5, 0.5), 1.0).imag()) < 1e-15);
}

TEST_CASE("Lamperti parameters")
{
    auto [p, t] = censored_lamperti(make_stable(1.5, 0.5));
    CHECK(t == ClassTag::EHG);
    CHECK(same(p, {1, 0.75, -0.5, 0.75}));
    auto [q, u] = censored_lamperti(make_stable(0.8, 0.5));
    CHECK(u == ClassTag::HG);
    CHECK(same(q, {1, 0.4, 0.2, 0.4}));
    LaplaceExponent e(p, t);
    for (cplx z : {cplx(0.3, 0), cplx(-0.2, 2)})
        CHECK(rel(censored_exponent(make_stable(1.5, 0.5), z), e(z)) < 1e-14);

    CHECK(same(radial_lamperti(1.5).first, {1, 0.75, -0.25, 0.75}));
    CHECK(same(avoid_zero_params(1.5), {1.25, 0.75, 0, 0.75}));
    // the process conditioned to avoid zero is conservative
    CHECK(std::abs(avoid_zero_exponent(1.5, 0.0)) < 1e-15);
}

TEST_CASE("censored occupation Mellin transform against mpmath")
{
    StableParams sp = make_stable(4.0 / 3, 0.5);
    CHECK(censored_occupation_mellin(sp, 0.8).real() == doctest::Approx(0.724612709709).epsilon(1e-11));
    CHECK(censored_occupation_mellin(sp, 0.9).real() == doctest::Approx(0.817201310325).epsilon(1e-11));
    CHECK(censored_occupation_mellin(sp, 1.1).real() == doctest::Approx(1.43853232947).epsilon(1e-11));
    CHECK(rel(censored_occupation_mellin(sp, cplx(0.9, 1)), cplx(0.206289181175, 0.062566441623)) < 1e-10);
    CHECK(std::abs(censored_occupation_mellin(sp, 1.0) - 1.0) < 1e-14);
    CHECK_THROWS_AS(censored_occupation_mellin(sp, 1.3), OutOfStrip);
}

TEST_CASE("C_{k,l} closed form")
{
    StableParams sp = make_stable(4.0 / 3, 0.5);
    CHECK(ckl_rho(4.0 / 3, 1, 2) == doctest::Approx(0.5));
    CHECK(in_ckl(sp, 1, 2));
    CHECK_FALSE(in_ckl(sp, 1, 1));
    for (double s : {0.8, 0.9, 1.1})
        CHECK(rel(ckl_closed_form(sp, 1, 2, s), censored_occupation_mellin(sp, s)) < 1e-11);
    CHECK(rel(ckl_closed_form(sp, 1, 2, cplx(0.9, 1)), censored_occupation_mellin(sp, cplx(0.9, 1))) < 1e-11);
    CHECK_THROWS_AS(ckl_closed_form(sp, 1, 1, 0.9), NotInCkl);
    CHECK_THROWS_AS(ckl_closed_form(sp, 1, -1, 0.9), UnsupportedCase);

    // 2/1.5 - 1 = 1/3
    CHECK_FALSE(in_ckl(make_stable(1.5, 0.5), 1, 2));
}

TEST_CASE("radial functional")
{
    double c = std::sqrt(pi) / (std::tgamma(1 / 1.5) * std::tgamma(1 - 1 / 1.5));
    CHECK(radial_constant(1.5) == doctest::Approx(0.488602511902922).epsilon(1e-13));
    CHECK(radial_constant(1.5) == doctest::Approx(c).epsilon(1e-14));
    CHECK(t0_mellin(1.5, 1.0) == cplx(1.0, 0.0));
    CHECK(t0_mellin(1.5, 0.5).real() == doctest::Approx(std::pow(2.0, 0.75) * 0.408721900781).epsilon(1e-11));
    CHECK(t0_mellin(1.5, 1.2).real() == doctest::Approx(std::pow(2.0, -0.3) * 2.60412448485).epsilon(1e-11));
    CHECK_THROWS_AS(t0_mellin(1.5, -0.7), OutOfStrip);
}

TEST_CASE("invariant function")
{
    StableParams sp = make_stable(1.5, 0.5);
    CHECK(h_invariant(1.0, sp) == doctest::Approx(std::sqrt(2 / pi)).epsilon(1e-14));
    CHECK(h_invariant(-4.0, sp) == doctest::Approx(2 * std::sqrt(2 / pi)).epsilon(1e-14));
    StableParams as = make_stable(1.5, 0.4);
    double r = h_invariant(1.0, as) / h_invariant(-1.0, as);
    CHECK(r == doctest::Approx(std::sin(pi * 1.5 * 0.6) / std::sin(pi * 1.5 * 0.4)).epsilon(1e-14));
    CHECK_THROWS_AS(h_invariant(0.0, sp), DomainError);
}

TEST_CASE("squared-process exit laws against mpmath")
{
    CHECK(hit_zero_before_exit_prob_squared_form(0.5, 1.5) == doctest::Approx(0.23839433452171138).epsilon(1e-12));
    CHECK(hit_zero_before_exit_prob_squared_form(0.1, 1.2) == doctest::Approx(0.28221417417149141).epsilon(1e-12));
    CHECK(hit_zero_before_exit_prob_squared_form(0.9, 1.8) == doctest::Approx(0.057506087622909206).epsilon(1e-12));
    CHECK(exit_before_zero_density_squared_form(0.5, 1.3, 1.5) == doctest::Approx(0.31087416746754059).epsilon(1e-12));
    CHECK(exit_before_zero_density_squared_form(0.1, 2.0, 1.2) == doctest::Approx(0.10685388468329342).epsilon(1e-12));
    CHECK(exit_before_zero_density_squared_form(0.9, 1.05, 1.8) == doctest::Approx(1.1438293614264544).epsilon(1e-12));
}

TEST_CASE("exit laws in |X| and X")
{
    CHECK(hit_zero_before_exit_prob(0.5, 1.5) == doctest::Approx(0.378505115119).epsilon(1e-11));
    CHECK(hit_zero_before_exit_prob(-0.5, 1.5) == hit_zero_before_exit_prob(0.5, 1.5));
    CHECK(hit_zero_before_exit_prob(0.5, 0.8) == 0.0);
    for (double y : {1.01, 1.3, 4.0})
        CHECK(exit_before_zero_density(0.5, y, 1.5)
              == doctest::Approx(2 * y * exit_before_zero_density_squared_form(0.25, y * y, 1.5)).epsilon(1e-13));
    CHECK(exit_before_zero_density(0.5, 1.3, 1.5) == exit_before_zero_density(0.5, 1.3, 0.3, 1.5));

    for (double a : {1.2, 1.5, 1.8}) {
        for (double x : {0.1, 0.5, 0.9}) {
            double m = integrate_exit_range([&](double y, double ym1) { return exit_before_zero_density(x, y, ym1, a); },
                                            a, 1.0, INFINITY);
            CHECK(m + hit_zero_before_exit_prob(x, a) == doctest::Approx(1.0).epsilon(1e-10));
            auto two = [&](double y, double aym1) {
                return two_sided_exit_density(x, y, aym1, a) + two_sided_exit_density(x, -y, aym1, a);
            };
            double t = integrate_exit_range(two, a, 1.0, INFINITY);
            CHECK(t == doctest::Approx(1.0).epsilon(1e-9));
            auto avoid = [&](double y, double aym1) {
                return two_sided_exit_avoid_zero_density(x, y, aym1, a) + two_sided_exit_avoid_zero_density(x, -y, aym1, a);
            };
            CHECK(integrate_exit_range(avoid, a, 1.0, INFINITY) == doctest::Approx(m).epsilon(1e-9));
        }
    }
    // zero is polar for alpha <= 1
    double m = integrate_exit_range([&](double y, double ym1) { return exit_before_zero_density(0.5, y, ym1, 0.8); },
                                    0.8, 1.0, INFINITY);
    CHECK(m == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(integrate_exit_tail([](double y, double) { return 1.0 / (y * y); }, 1.5) > 0);
}
