#include "doctest.h"

#include "hyperlevy/errors.hpp"
#include "hyperlevy/exponents.hpp"
#include "hyperlevy/levy_measure.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

using namespace hyperlevy;

namespace {

// five-point second difference of psi on the real axis
double psi2(const LaplaceExponent& e, double z)
{
    const double h = 2e-3;
    auto f = [&](double t) { return e(t).real(); };
    return (-f(z + 2 * h) + 16 * f(z + h) - 30 * f(z) + 16 * f(z - h) - f(z - 2 * h)) / (12 * h * h);
}

template <class F> double moment2(F pi, double z)
{
    using boost::math::quadrature::gauss_kronrod;
    auto r = [&](double x) { return x * x * std::exp(z * x) * pi(x); };
    auto l = [&](double x) { return x * x * std::exp(-z * x) * pi(-x); };
    double s = 0;
    for (auto [a, b] : {std::pair{0.0, 1.0}, {1.0, 20.0}, {20.0, 600.0}})
        s += gauss_kronrod<double, 61>::integrate(r, a, b, 15, 1e-13)
             + gauss_kronrod<double, 61>::integrate(l, a, b, 15, 1e-13);
    return s;
}

} // namespace

TEST_CASE("pole and zero sequences")
{
    PoleZeroGrid g = pole_zero_sequences({1.2, 0.5, -0.2, 0.5}, 3);
    CHECK(g.zeta[0] == doctest::Approx(0.2));
    CHECK(g.zeta[1] == doctest::Approx(0.8));
    CHECK(g.rho[0] == doctest::Approx(0.3));
    CHECK(g.zetah[0] == doctest::Approx(0.2));
    CHECK(g.rhoh[0] == doctest::Approx(0.3));
    CHECK(interlaced(g));
    CHECK_FALSE(g.cancelled_right);

    // zeta_1 = rho_1 when 1 - beta + betah + gamma = 0
    PoleZeroGrid c = pole_zero_sequences({1.5, 0.75, -0.25, 0.75}, 4);
    CHECK(c.cancelled_right);
    CHECK(interlaced(c));
    CHECK_THROWS_AS(pole_zero_sequences({0.5, 0.5, 0.5, 0.5}, 3), InadmissibleParameters);
}

TEST_CASE("density against mpmath")
{
    HGParams p{1.2, 0.5, -0.2, 0.5};
    CHECK(density_closed_form(p, 1.0).value == doctest::Approx(0.28521855214900702).epsilon(1e-12));
    CHECK(density_closed_form(p, -0.3).value == doctest::Approx(3.4758543824448745).epsilon(1e-12));
    CHECK(density_closed_form({1.3, 0.4, -0.1, 0.7}, 2.0).value
          == doctest::Approx(0.050955863228362271).epsilon(1e-12));
    // degenerate pair: closed form 0 * inf in mpmath, series is fine
    CHECK(density_series({1.5, 0.75, -0.25, 0.75}, 0.2, 5000).value
          == doctest::Approx(17.021764281661794).epsilon(1e-11));
    CHECK_THROWS_AS(density_closed_form(p, 0.0), DomainError);
}

TEST_CASE("series and closed form agree")
{
    for (HGParams p : {HGParams{1.2, 0.5, -0.2, 0.5}, HGParams{1.3, 0.4, -0.1, 0.7}, HGParams{0.5, 0.5, 0.5, 0.5},
                       HGParams{-0.3, 0.4, 1.2, 0.7}}) {
        for (double x : {-3.0, -0.5, 0.25, 1.0, 6.0}) {
            double a = density_closed_form(p, x).value;
            DensityEvaluation s = density_series(p, x, 20000);
            CHECK(s.value == doctest::Approx(a).epsilon(1e-11));
            CHECK(s.terms_used > 0);
        }
    }
    CHECK_THROWS_AS(density_series({1.2, 0.5, -0.2, 0.5}, 1e-4, 10), NonConvergence);
}

TEST_CASE("first residue dominates far out")
{
    HGParams p{1.2, 0.5, -0.2, 0.5};
    double x = 40.0;
    double lead = residue_coefficient(p, 1, true) * std::exp(-0.3 * x);
    CHECK(density_closed_form(p, x).value == doctest::Approx(lead).epsilon(1e-9));
    double leadl = residue_coefficient(p, 1, false) * std::exp(-0.3 * x);
    CHECK(density_closed_form(p, -x).value == doctest::Approx(leadl).epsilon(1e-9));
}

TEST_CASE("second moment matches psi''")
{
    HGParams p{1.2, 0.5, -0.2, 0.5};
    LaplaceExponent e(p, ClassTag::EHG);
    for (double z : {-0.1, 0.0, 0.1}) {
        double m = moment2([&](double x) { return density_closed_form(p, x).value; }, z);
        CHECK(m == doctest::Approx(psi2(e, z)).epsilon(1e-7));
    }
}

TEST_CASE("Levy-Khintchine reconstruction")
{
    HGParams p{1.2, 0.4, -0.2, 0.4};
    LaplaceExponent e(p, ClassTag::EHG);
    for (double th : {1.0, 10.0}) {
        cplx a = lk_reconstruct(p, th), b = e(cplx(0, th));
        CHECK(std::abs(a - b) / std::abs(b) < 1e-8);
    }
}

TEST_CASE("EHL density")
{
    const double b = 1.5, g = 1.5, gh = -0.5;
    LaplaceExponent e(HGParams{b, g, b, gh}, ClassTag::EHL);
    double m = moment2([&](double x) { return ehl_density(b, g, gh, x); }, 0.1);
    CHECK(m == doctest::Approx(psi2(e, 0.1)).epsilon(1e-7));
    LampertiStableTriple t = ehl_lamperti_stable(b, g, gh);
    CHECK(t.alpha == doctest::Approx(1.0));
    CHECK(t.beta == doctest::Approx(1.0));
    CHECK(t.delta == doctest::Approx(1.0));
    CHECK_THROWS_AS(ehl_density(1.5, 0.5, -0.5, 1.0), InadmissibleParameters);
}
