#include "hyperlevy/levy_measure.hpp"
#include "hyperlevy/errors.hpp"
#include "hyperlevy/exponents.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace hyperlevy {

namespace {

void require_density_params(const HGParams& p)
{
    if (!in_class(p, ClassTag::EHG) && !in_class(p, ClassTag::HG))
        throw InadmissibleParameters("Levy density needs EHG (or HG) parameters");
}

} // namespace

PoleZeroGrid pole_zero_sequences(const HGParams& p, int n)
{
    if (!in_class(p, ClassTag::EHG)) throw InadmissibleParameters("pole_zero_sequences needs EHG parameters");
    if (n < 1) throw DomainError("pole_zero_sequences: n >= 1");
    PoleZeroGrid g;
    g.count = n;
    for (int k = 1; k <= n; ++k) {
        g.zeta.push_back(k == 1 ? -p.betah : k - p.beta);
        g.rho.push_back(k - p.beta + p.gamma);
        g.zetah.push_back(k == 1 ? p.beta - 1 : p.betah + k - 1);
        g.rhoh.push_back(p.betah + p.gammah + k - 1);
    }
    g.cancelled_right = g.zeta[0] == g.rho[0];
    g.cancelled_left = g.zetah[0] == g.rhoh[0];
    return g;
}

bool interlaced(const PoleZeroGrid& g)
{
    auto side = [](const std::vector<double>& z, const std::vector<double>& r, bool cancelled) {
        if (z.empty() || z[0] < 0.0) return false;
        for (std::size_t k = 0; k < z.size(); ++k) {
            bool first_ok = k == 0 && cancelled ? z[0] <= r[0] : z[k] < r[k];
            if (!first_ok) return false;
            if (k + 1 < z.size() && !(r[k] < z[k + 1])) return false;
        }
        return true;
    };
    return side(g.zeta, g.rho, g.cancelled_right) && side(g.zetah, g.rhoh, g.cancelled_left);
}

DensityEvaluation density_closed_form(const HGParams& p, double x)
{
    require_density_params(p);
    if (x == 0.0 || !std::isfinite(x)) throw DomainError("Levy density is not finite at x = 0");
    const double e = p.eta();
    SeriesPolicy pol;
    pol.rel_tol = 1e-15;
    double ax = std::fabs(x), z = std::exp(-ax), omz = -std::expm1(-ax);
    double v;
    if (x > 0) {
        double k = -gamma_fn(e) * rgamma(-p.gamma);
        v = k * std::exp(-(1 - p.beta + p.gamma) * ax)
            * gauss_2f1_regularized(1 + p.gamma, e, e - p.gammah, z, omz, pol);
    } else {
        double k = -gamma_fn(e) * rgamma(-p.gammah);
        v = k * std::exp(-(p.betah + p.gammah) * ax)
            * gauss_2f1_regularized(1 + p.gammah, e, e - p.gamma, z, omz, pol);
    }
    return {x, v, DensityRoute::ClosedForm, 0};
}

double residue_coefficient(const HGParams& p, int n, bool right)
{
    // -(-1)^{n-1}/(n-1)! / Gamma(1-g-n) * Gamma(eta+n-1) / Gamma(eta-gh+n-1), with
    // (g, gh) swapped on the left
    const double g = right ? p.gamma : p.gammah;
    const double gh = right ? p.gammah : p.gamma;
    const double e = p.eta();
    double sign = (n % 2 == 1) ? -1.0 : 1.0;
    double r1 = rgamma(1 - g - n), r2 = rgamma(e - gh + n - 1);
    if (r1 == 0.0 || r2 == 0.0) return 0.0;
    int s;
    double l = log_abs_gamma(e + n - 1, &s) - std::lgamma(double(n));
    sign *= s;
    sign *= r1 < 0 ? -1.0 : 1.0;
    sign *= r2 < 0 ? -1.0 : 1.0;
    l += std::log(std::fabs(r1)) + std::log(std::fabs(r2));
    return sign * std::exp(l);
}

DensityEvaluation density_series(const HGParams& p, double x, int n_terms, double rel_tol)
{
    require_density_params(p);
    if (x == 0.0 || !std::isfinite(x)) throw DomainError("Levy density is not finite at x = 0");
    if (n_terms < 1) throw DomainError("density_series: n_terms >= 1");
    const bool right = x > 0;
    const double ax = std::fabs(x);
    const double g = right ? p.gamma : p.gammah;
    const double gh = right ? p.gammah : p.gamma;
    const double e = p.eta();
    auto rate = [&](int n) { return right ? n - p.beta + p.gamma : p.betah + p.gammah + n - 1; };
    const double geo = -std::expm1(-ax);
    double sum = 0.0, coef = 0.0;
    for (int n = 1; n <= n_terms; ++n) {
        if (n <= 2 || coef == 0.0) {
            coef = residue_coefficient(p, n, right);
        } else {
            // a_{n} rho_{n} from a_{n-1} rho_{n-1}
            int m = n - 1;
            coef *= (g + m) * (e + m - 1) / (m * (e - gh + m - 1));
        }
        double term = coef * std::exp(-rate(n) * ax);
        sum += term;
        if (n >= 2 && std::fabs(term) / geo <= rel_tol * std::fabs(sum))
            return {x, sum, DensityRoute::ResidueSeries, n};
    }
    throw NonConvergence("density_series: " + std::to_string(n_terms)
                         + " terms are not enough at x = " + std::to_string(x));
}

namespace {

using boost::math::quadrature::gauss_kronrod;

// pi(x) |x|^{1+g+gh}, frozen below 1e-14 where it has reached its limit
double scaled_density(const HGParams& p, double x, double A)
{
    double ax = std::max(std::fabs(x), 1e-14);
    double xs = x > 0 ? ax : -ax;
    return density_closed_form(p, xs).value * std::pow(ax, 1 + A);
}

// int_0^inf (e^{i theta s x} - 1) pi(s x) dx, s = +-1
cplx lk_half(const HGParams& p, double theta, double s, double A, double decay)
{
    const double m = 1.0 / (1.0 - A);
    auto near_re = [&](double t) {
        if (t == 0.0) return 0.0;
        double x = std::pow(t, m);
        double h = std::sin(0.5 * theta * x);
        return m * scaled_density(p, s * x, A) * (-2.0 * h * h / x);
    };
    auto near_im = [&](double t) {
        if (t == 0.0) return m * scaled_density(p, s * 1e-14, A) * s * theta;
        double x = std::pow(t, m);
        return m * scaled_density(p, s * x, A) * s * std::sin(theta * x) / x;
    };
    double re = gauss_kronrod<double, 31>::integrate(near_re, 0.0, 1.0, 20, 1e-13);
    double im = gauss_kronrod<double, 31>::integrate(near_im, 0.0, 1.0, 20, 1e-13);

    auto far_re = [&](double x) { return (std::cos(theta * x) - 1.0) * density_closed_form(p, s * x).value; };
    auto far_im = [&](double x) { return s * std::sin(theta * x) * density_closed_form(p, s * x).value; };
    const double len = 2.0;
    double a = 1.0;
    for (int k = 0; k < 200000; ++k) {
        double b = a + len;
        re += gauss_kronrod<double, 31>::integrate(far_re, a, b, 15, 1e-13);
        im += gauss_kronrod<double, 31>::integrate(far_im, a, b, 15, 1e-13);
        a = b;
        if (2.0 * density_closed_form(p, s * a).value / decay < 1e-14) break;
    }
    return {re, im};
}

} // namespace

cplx lk_reconstruct(const HGParams& p, double theta)
{
    if (!in_class(p, ClassTag::EHG)) throw InadmissibleParameters("lk_reconstruct needs EHG parameters");
    const double A = p.gamma + p.gammah;
    if (A >= 1.0) throw UnboundedVariation("gamma + gammah >= 1: jump part has unbounded variation");
    PoleZeroGrid g = pole_zero_sequences(p, 2);
    double dr = g.cancelled_right ? g.rho[1] : g.rho[0];
    double dl = g.cancelled_left ? g.rhoh[1] : g.rhoh[0];
    double q = killing_rate(LaplaceExponent(p, ClassTag::EHG));
    return -q + lk_half(p, theta, 1.0, A, dr) + lk_half(p, theta, -1.0, A, dl);
}

double ehl_density(double beta, double gamma, double gammah, double x)
{
    if (!in_class(HGParams{beta, gamma, beta, gammah}, ClassTag::EHL))
        throw InadmissibleParameters("ehl_density: (beta, gamma, gammah) outside the EHL set");
    if (x == 0.0 || !std::isfinite(x)) throw DomainError("Levy density is not finite at x = 0");
    const double A = gamma + gammah;
    double ax = std::fabs(x);
    if (x > 0) {
        double k = gamma_ratio({A + 1}, {1 + gamma, -gamma});
        return k * std::exp((beta + gammah) * ax - (A + 1) * std::log(std::expm1(ax)));
    }
    double k = gamma_ratio({A + 1}, {1 + gammah, -gammah});
    return k * std::exp((1 - beta + gamma) * ax - (A + 1) * std::log(std::expm1(ax)));
}

LampertiStableTriple ehl_lamperti_stable(double beta, double gamma, double gammah)
{
    if (!in_class(HGParams{beta, gamma, beta, gammah}, ClassTag::EHL))
        throw InadmissibleParameters("ehl_lamperti_stable: parameters outside the EHL set");
    return {gamma + gammah, beta + gammah, 1 - beta + gamma};
}

} // namespace hyperlevy
