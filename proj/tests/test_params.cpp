#include "doctest.h"

#include "hyperlevy/errors.hpp"
#include "hyperlevy/params.hpp"

#include <cmath>

using namespace hyperlevy;

TEST_CASE("classify examples")
{
    auto c = classify(1, 0.75, -0.25, 0.75);
    REQUIRE(c.classes.size() == 1);
    CHECK(c.classes[0] == ClassTag::EHG);
    CHECK(c.regime == Regime::DriftsMinusInfinity);

    c = classify(1.5, 0.75, -0.25, 0.75);
    CHECK(c.classes == std::vector<ClassTag>{ClassTag::EHG});
    CHECK(c.regime == Regime::Killed);

    // kappa(0) = 0 at beta = 1 while kappah(0) > 0 for betah = 0.5
    c = classify(1, 0.5, 0.5, 0.5);
    CHECK(c.contains(ClassTag::HG));
    CHECK(c.regime == Regime::DriftsPlusInfinity);
    CHECK(classify(1, 0.5, 0.0, 0.5).regime == Regime::Oscillates);
}

TEST_CASE("class boundaries")
{
    CHECK(in_class({0.3, 0.5, 1.0, 0.5}, ClassTag::HG));
    CHECK_FALSE(in_class({1.2, 0.5, 1.0, 0.5}, ClassTag::HG));
    CHECK(in_class({1.5, 1.5, 1.5, -0.5}, ClassTag::EHL));
    CHECK_FALSE(in_class({1.5, 1.5, 1.4, -0.5}, ClassTag::EHL));
    // 1-beta+betah+gamma < 0 leaves EHG for the beta-only class
    HGParams p{1.8, 0.3, 0.2, 0.9};
    CHECK_FALSE(in_class(p, ClassTag::EHG));
    CHECK(in_class(p, ClassTag::EHG_BETA_ONLY));
    HGParams q{0.5, 0.6, -0.9, 0.3};
    CHECK(in_class(q, ClassTag::EHG_BETAH_ONLY));
    // eps only relaxes the gap constraints
    HGParams r{1.5, 0.749999999, -0.25, 0.75};
    CHECK_FALSE(in_class(r, ClassTag::EHG));
    CHECK(in_class(r, ClassTag::EHG, 1e-8));
}

TEST_CASE("inadmissible parameters")
{
    CHECK_THROWS_AS(classify(3.0, 0.5, 0.5, 0.5), InadmissibleParameters);
    CHECK_THROWS_AS(classify(1.0, 1.5, 0.5, 0.5), InadmissibleParameters);
    CHECK_THROWS_AS(classify(NAN, 0.5, 0.5, 0.5), InadmissibleParameters);
    try {
        classify(1.0, 1.5, 0.5, 0.5);
    } catch (const InadmissibleParameters& e) {
        CHECK(std::string(e.what()).find("gamma in (0,1)") != std::string::npos);
    }
}

TEST_CASE("dual")
{
    HGParams s = dual({1.2, 0.5, -0.2, 0.5});
    CHECK(s.beta == doctest::Approx(1.2));
    CHECK(s.betah == doctest::Approx(-0.2));
    CHECK(dual({1, 0.75, -0.25, 0.75}) == HGParams{1.25, 0.75, 0, 0.75});
    HGParams p{1.3, 0.5, -0.1, 0.7};
    HGParams dd = dual(dual(p));
    for (auto [a, b] : {std::pair{dd.beta, p.beta}, {dd.gamma, p.gamma}, {dd.betah, p.betah}, {dd.gammah, p.gammah}})
        CHECK(a == doctest::Approx(b).epsilon(1e-15));
    CHECK_THROWS_AS(dual({0.5, 0.5, 0.5, 0.5}), InadmissibleParameters);
}

TEST_CASE("eta and gaps")
{
    CHECK(eta({1.2, 0.5, -0.2, 0.5}) == doctest::Approx(0.6));
    CHECK(eta({1, 0.75, -0.25, 0.75}) == doctest::Approx(1.25));
    CHECK(eta({1.5, 0.75, -0.25, 0.75}) == doctest::Approx(0.75));
    CHECK(right_gap({1.5, 0.75, -0.25, 0.75}) == 0.0);
    CHECK(left_gap({1.5, 0.75, -0.25, 0.75}) == 0.0);
}

TEST_CASE("names and json")
{
    for (ClassTag t : {ClassTag::HG, ClassTag::EHG, ClassTag::EHG_BETA_ONLY, ClassTag::EHG_BETAH_ONLY, ClassTag::EHL})
        CHECK(class_tag_from_string(to_string(t)) == t);
    CHECK(to_string(Regime::DriftsMinusInfinity) == "drifts_minus");
    HGParams p{1.3, 0.4, -0.1, 0.7};
    nlohmann::json j = p;
    CHECK(j.get<HGParams>() == p);
}
