#include "doctest.h"

#include "hyperlevy/errors.hpp"
#include "hyperlevy/exponents.hpp"
#include "hyperlevy/expfun.hpp"

#include <cmath>

using namespace hyperlevy;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("Mellin transform against mpmath")
{
    MellinSpec h = make_hg_spec({0.5, 0.5, 0.5, 0.5}, 4.0);
    CHECK(mellin(h, 0.5).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rel(mellin(h, cplx(1.3, 2)), cplx(-0.13763166816472726, 0.10776967975794707)) < 1e-11);
    CHECK(mellin_hg({-0.3, 0.4, 1.2, 0.7}, 2.0, 1.7).real() == doctest::Approx(1.0035437904667206).epsilon(1e-12));
    CHECK(mellin_ehg({1.25, 0.75, 0, 0.75}, 4.0 / 3, 0.6).real()
          == doctest::Approx(0.45510028501194666).epsilon(1e-12));
    CHECK(mellin_ehg({1.4, 0.6, -0.1, 0.8}, 2.0, 0.3).real() == doctest::Approx(0.94955159582744305).epsilon(1e-12));

    MellinSpec r = make_radial_spec(1.5);
    CHECK(mellin(r, 0.5).real() == doctest::Approx(0.408721900781).epsilon(1e-11));
    CHECK(mellin(r, 1.2).real() == doctest::Approx(2.60412448485).epsilon(1e-11));
    CHECK(rel(mellin(r, cplx(0.7, 3)), cplx(0.0035995208743294722, 0.0091839039290513339)) < 1e-11);
}

TEST_CASE("normalisation and first moment")
{
    for (MellinSpec sp : {make_hg_spec({0.5, 0.5, 0.5, 0.5}, 4.0), make_hg_spec({-0.3, 0.4, 1.2, 0.7}, 2.0),
                          make_ehg_spec({1.25, 0.75, 0, 0.75}, 4.0 / 3), make_ehg_spec({1.4, 0.6, -0.1, 0.8}, 2.0),
                          make_radial_spec(1.5)})
        CHECK(std::abs(mellin(sp, 1.0) - 1.0) < 1e-13);
    // E[I] = -1/psi(-1/delta) on the killed HG process
    HGParams p{0.5, 0.5, 0.5, 0.5};
    LaplaceExponent e(p, ClassTag::HG);
    CHECK(mellin_hg(p, 4.0, 2.0).real() == doctest::Approx(-1.0 / e(-0.25).real()).epsilon(1e-12));
}

TEST_CASE("functional equation")
{
    CHECK(functional_equation_residual(make_hg_spec({0.5, 0.5, 0.5, 0.5}, 1.0), 0.3) < 1e-12);
    CHECK(functional_equation_residual(make_hg_spec({-0.3, 0.4, 1.2, 0.7}, 2.0), 0.6) < 1e-12);
    CHECK(functional_equation_residual(make_ehg_spec({1.25, 0.75, 0, 0.75}, 4.0 / 3), 0.2) < 1e-12);
    CHECK(functional_equation_residual(make_ehg_spec({1.4, 0.6, -0.1, 0.8}, 2.0), 0.5) < 1e-12);
    CHECK(functional_equation_residual(make_radial_spec(1.5), 0.1) < 1e-12);
    CHECK_THROWS_AS(functional_equation_residual(make_hg_spec({0.5, 0.5, 0.5, 0.5}, 1.0), 0.9), OutOfStrip);
}

TEST_CASE("strip")
{
    MellinSpec r = make_radial_spec(1.5);
    CHECK(r.strip_lo == doctest::Approx(-2.0 / 3));
    CHECK(r.strip_hi == doctest::Approx(4.0 / 3));
    CHECK_THROWS_AS(mellin(r, -0.7), OutOfStrip);
    CHECK_THROWS_AS(mellin(r, 1.4), OutOfStrip);
    MellinSpec h = make_hg_spec({0.5, 0.5, 0.5, 0.5}, 1.0);
    CHECK(h.strip_hi == doctest::Approx(1.5));
    CHECK_THROWS_AS(make_hg_spec({1.2, 0.5, -0.2, 0.5}, 1.0), InadmissibleParameters);
}

TEST_CASE("log grid")
{
    auto g = log_grid(1e-2, 1e2, 5);
    CHECK(g.size() == 21);
    CHECK(g.front() == doctest::Approx(1e-2));
    CHECK(g.back() == doctest::Approx(1e2));
    CHECK(g[5] == doctest::Approx(0.1));
}

TEST_CASE("inversion recovers mass and moments")
{
    MellinSpec r = make_radial_spec(1.5);
    InvertedDensity d = invert_density(r, log_grid(1e-6, 1e6, 20));
    CHECK(d.values.size() == d.grid.size());
    CHECK(density_moment(r, d, 1.0) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(density_moment(r, d, 0.5) == doctest::Approx(0.408721900781).epsilon(1e-4));
    CHECK(density_moment(r, d, 1.2) == doctest::Approx(2.60412448485).epsilon(1e-3));
    for (double v : d.values) CHECK(v >= 0.0);

    InversionOptions o;
    o.contour = 2.0;
    CHECK_THROWS_AS(invert_density(r, {1.0}, o), ContourOutOfStrip);
}
