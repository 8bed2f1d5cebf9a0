#include "hyperlevy/params.hpp"
#include "hyperlevy/errors.hpp"


#include <algorithm>
#include <cmath>
#include <sstream>

namespace hyperlevy {

std::string to_string(ClassTag t)
{
    switch (t) {
    case ClassTag::HG: return "HG";
    case ClassTag::EHG: return "EHG";
    case ClassTag::EHG_BETA_ONLY: return "EHG_BETA_ONLY";
    case ClassTag::EHG_BETAH_ONLY: return "EHG_BETAH_ONLY";
    case ClassTag::EHL: return "EHL";
    }
    return "?";
}

std::string to_string(Regime r)
{
    switch (r) {
    case Regime::Killed: return "killed";
    case Regime::DriftsPlusInfinity: return "drifts_plus";
    case Regime::DriftsMinusInfinity: return "drifts_minus";
    case Regime::Oscillates: return "oscillates";
    }
    return "?";
}

ClassTag class_tag_from_string(const std::string& s)
{
    for (ClassTag t : {ClassTag::HG, ClassTag::EHG, ClassTag::EHG_BETA_ONLY,
                       ClassTag::EHG_BETAH_ONLY, ClassTag::EHL})
        if (to_string(t) == s) return t;
    throw InadmissibleParameters("unknown class tag '" + s + "'");
}

bool Classification::contains(ClassTag t) const
{
    return std::find(classes.begin(), classes.end(), t) != classes.end();
}

double right_gap(const HGParams& p) { return 1 - p.beta + p.betah + p.gamma; }
double left_gap(const HGParams& p) { return 1 - p.beta + p.betah + p.gammah; }
double eta(const HGParams& p) { return p.eta(); }

namespace {

bool open01(double x) { return x > 0.0 && x < 1.0; }

// Collects the violated inequalities of one class, for error messages.
std::vector<std::string> violations(const HGParams& p, ClassTag t, double eps)
{
    std::vector<std::string> v;
    auto need = [&](bool ok, const char* what) {
        if (!ok) v.emplace_back(what);
    };
    const double b = p.beta, g = p.gamma, bh = p.betah, gh = p.gammah;
    switch (t) {
    case ClassTag::HG:
        need(b <= 1.0, "beta <= 1");
        need(open01(g), "gamma in (0,1)");
        need(bh >= 0.0, "betah >= 0");
        need(open01(gh), "gammah in (0,1)");
        break;
    case ClassTag::EHG:
        need(b >= 1.0 && b <= 2.0, "beta in [1,2]");
        need(open01(g), "gamma in (0,1)");
        need(bh >= -1.0 && bh <= 0.0, "betah in [-1,0]");
        need(open01(gh), "gammah in (0,1)");
        need(right_gap(p) >= -eps, "1-beta+betah+gamma >= 0");
        need(left_gap(p) >= -eps, "1-beta+betah+gammah >= 0");
        break;
    case ClassTag::EHG_BETA_ONLY:
        need(b >= 1.0 && b <= 2.0, "beta in [1,2]");
        need(open01(g), "gamma in (0,1)");
        need(bh >= 0.0, "betah >= 0");
        need(open01(gh), "gammah in (0,1)");
        need(right_gap(p) <= eps, "1-beta+betah+gamma <= 0");
        need(left_gap(p) >= -eps, "1-beta+betah+gammah >= 0");
        break;
    case ClassTag::EHG_BETAH_ONLY:
        need(b <= 1.0, "beta <= 1");
        need(open01(g), "gamma in (0,1)");
        need(bh >= -1.0 && bh <= 0.0, "betah in [-1,0]");
        need(open01(gh), "gammah in (0,1)");
        need(right_gap(p) >= -eps, "1-beta+betah+gamma >= 0");
        need(left_gap(p) <= eps, "1-beta+betah+gammah <= 0");
        break;
    case ClassTag::EHL:
        need(b >= 1.0 && b <= 2.0, "beta in [1,2]");
        need(g > 1.0 && g < 2.0, "gamma in (1,2)");
        need(gh > -1.0 && gh < 0.0, "gammah in (-1,0)");
        need(bh == b, "betah == beta");
        break;
    }
    return v;
}

constexpr ClassTag all_tags[] = {ClassTag::HG, ClassTag::EHG, ClassTag::EHG_BETA_ONLY,
                                 ClassTag::EHG_BETAH_ONLY, ClassTag::EHL};

Regime from_zeros(bool killed, bool kappa0_zero, bool kappah0_zero)
{
    if (killed) return Regime::Killed;
    if (kappa0_zero && kappah0_zero) return Regime::Oscillates;
    if (kappa0_zero) return Regime::DriftsPlusInfinity;
    return Regime::DriftsMinusInfinity;
}

} // namespace

bool in_class(const HGParams& p, ClassTag t, double eps)
{
    for (double x : {p.beta, p.gamma, p.betah, p.gammah})
        if (!std::isfinite(x)) return false;
    return violations(p, t, eps).empty();
}

// Read off from which ladder exponent vanishes at 0 and whether psi(0) < 0.
Regime regime_for(const HGParams& p, ClassTag t)
{
    const double b = p.beta, bh = p.betah;
    switch (t) {
    case ClassTag::HG:
        // kappa(0) = Gamma(1-b+g)/Gamma(1-b), kappah(0) = Gamma(bh+gh)/Gamma(bh)
        return from_zeros(b < 1.0 && bh > 0.0, b == 1.0, bh == 0.0);
    case ClassTag::EHG:
        // kappa(0) = -bh Gamma(1-b+g)/Gamma(2-b), kappah(0) = (b-1) Gamma(bh+gh)/Gamma(1+bh)
        return from_zeros(b > 1.0 && b < 2.0 && bh < 0.0 && bh > -1.0, bh == 0.0 || b == 2.0,
                          b == 1.0 || bh == -1.0);
    case ClassTag::EHG_BETA_ONLY:
        return from_zeros(b < 2.0 && bh > 0.0, b == 2.0, bh == 0.0);
    case ClassTag::EHG_BETAH_ONLY:
        return from_zeros(b < 1.0 && bh > -1.0, bh == 0.0, b == 1.0 || bh == -1.0);
    case ClassTag::EHL:
        return from_zeros(b > 1.0 && b < 2.0, b == 2.0, b == 1.0);
    }
    return Regime::Oscillates;
}

Classification classify(const HGParams& p, double eps)
{
    for (double x : {p.beta, p.gamma, p.betah, p.gammah})
        if (!std::isfinite(x)) throw InadmissibleParameters("parameters must be finite");
    Classification c;
    std::ostringstream err;
    for (ClassTag t : all_tags) {
        auto v = violations(p, t, eps);
        if (v.empty()) {
            c.classes.push_back(t);
        } else {
            err << " " << to_string(t) << ":";
            for (auto& s : v) err << " [" << s << "]";
        }
    }
    if (c.classes.empty()) throw InadmissibleParameters("no admissible class;" + err.str());
    c.regime = regime_for(p, c.classes.front());
    return c;
}

Classification classify(double beta, double gamma, double betah, double gammah)
{
    return classify(HGParams{beta, gamma, betah, gammah});
}

HGParams dual(const HGParams& p)
{
    if (!in_class(p, ClassTag::EHG)) {
        auto v = violations(p, ClassTag::EHG, 0.0);
        std::string msg = "dual requires EHG parameters;";
        for (auto& s : v) msg += " [" + s + "]";
        throw InadmissibleParameters(msg);
    }
    return HGParams{1 - p.betah, p.gammah, 1 - p.beta, p.gamma};
}

void to_json(nlohmann::json& j, const HGParams& p)
{
    j = nlohmann::json{{"beta", p.beta}, {"gamma", p.gamma}, {"betah", p.betah}, {"gammah", p.gammah}};
}

void from_json(const nlohmann::json& j, HGParams& p)
{
    j.at("beta").get_to(p.beta);
    j.at("gamma").get_to(p.gamma);
    j.at("betah").get_to(p.betah);
    j.at("gammah").get_to(p.gammah);
}

} // namespace hyperlevy
