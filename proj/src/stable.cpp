#include "hyperlevy/stable.hpp"
#include "hyperlevy/errors.hpp"
#include "hyperlevy/exponents.hpp"
#include "hyperlevy/expfun.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>

namespace hyperlevy {

namespace {

constexpr double pi = std::numbers::pi;

cplx lg(cplx z) { return log_gamma_unwrapped(z); }

// mean of exp(f) on a small circle around s; f analytic with removable
// singularities only
template <class F>
cplx circle_mean(F f, cplx s, double r)
{
    const int n = 32;
    cplx acc = 0.0;
    for (int k = 0; k < n; ++k) acc += std::exp(f(s + std::polar(r, 2 * pi * (k + 0.5) / n)));
    return acc / double(n);
}

template <class F>
cplx exp_or_circle(F f, cplx s, double r)
{
    try {
        cplx v = std::exp(f(s));
        if (std::isfinite(v.real()) && std::isfinite(v.imag())) return v;
    } catch (const PoleError&) {
    }
    return circle_mean(f, s, r);
}

void require_high_index(double alpha, const char* who)
{
    if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError(std::string(who) + ": alpha must lie in (1,2)");
}

void require_exit_args(double x, double alpha, const char* who)
{
    if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError(std::string(who) + ": alpha must lie in (0,2)");
    if (!(std::fabs(x) < 1.0)) throw DomainError(std::string(who) + ": |x| < 1 required");
}

} // namespace

bool admissible_stable(double alpha, double rho)
{
    if (!std::isfinite(alpha) || !std::isfinite(rho)) return false;
    if (alpha > 0.0 && alpha < 1.0) return rho > 0.0 && rho < 1.0;
    if (alpha == 1.0) return rho == 0.5;
    if (alpha > 1.0 && alpha < 2.0) return rho > 1.0 - 1.0 / alpha && rho < 1.0 / alpha;
    return false;
}

StableParams make_stable(double alpha, double rho)
{
    if (!admissible_stable(alpha, rho))
        throw InadmissibleParameters("(alpha, rho) = (" + std::to_string(alpha) + ", " + std::to_string(rho)
                                     + ") is not an admissible stable pair");
    StableParams sp;
    sp.alpha = alpha;
    sp.rho = rho;
    sp.rhoh = 1.0 - rho;
    sp.c_plus = gamma_ratio({alpha + 1}, {alpha * rho, 1 - alpha * rho});
    sp.c_minus = gamma_ratio({alpha + 1}, {alpha * sp.rhoh, 1 - alpha * sp.rhoh});
    return sp;
}

cplx stable_char_exponent(const StableParams& sp, double theta)
{
    if (theta == 0.0) return 0.0;
    double m = std::pow(std::fabs(theta), sp.alpha);
    if (sp.alpha == 1.0) return m;
    // c (1 - i beta tan(pi a/2) sgn) with c = cos(pi a (rho - 1/2)) and
    // beta tan(pi a/2) = tan(pi a (rho - 1/2))
    double ph = pi * sp.alpha * (sp.rho - 0.5);
    double sg = theta > 0 ? 1.0 : -1.0;
    return {m * std::cos(ph), -sg * m * std::sin(ph)};
}

std::pair<HGParams, ClassTag> censored_lamperti(const StableParams& sp)
{
    const double a = sp.alpha;
    HGParams p{1.0, a * sp.rho, 1.0 - a, a * sp.rhoh};
    return {p, a <= 1.0 ? ClassTag::HG : ClassTag::EHG};
}

cplx censored_exponent(const StableParams& sp, cplx z)
{
    const double a = sp.alpha, ar = a * sp.rho;
    return -gamma_ratio({ar - z, 1 - ar + z}, {-z, 1 - a + z});
}

namespace {

cplx censored_log_raw(const DoubleGamma& G, double a, double rho, cplx s)
{
    const double t = 1.0 / a;
    return G.log(2 * t - 1 + s) - G.log(2 * t - rho + s) + G.log(t + rho + 1.0 - s) - G.log(t + 1.0 - s)
           + lg(t - rho + s) - lg(rho + 1.0 - s) + lg(2 - t - s);
}

} // namespace

cplx censored_occupation_mellin(const StableParams& sp, cplx s)
{
    require_high_index(sp.alpha, "censored_occupation_mellin");
    const double a = sp.alpha, lo = sp.rho - 1 / a, hi = 2 - 1 / a;
    if (!(s.real() > lo && s.real() < hi))
        throw OutOfStrip("censored_occupation_mellin: Re s outside (rho-1/alpha, 2-1/alpha)");
    DoubleGamma G(1.0 / a);
    auto f = [&](cplx z) { return censored_log_raw(G, a, sp.rho, z); };
    cplx v = std::exp(f(s) - f(cplx(1.0, 0.0)));
    if (s.imag() == 0.0) v.imag(0.0);
    return v;
}

double ckl_rho(double alpha, int k, int l) { return l / alpha - k; }

bool in_ckl(const StableParams& sp, int k, int l, double tol)
{
    return std::fabs(sp.rho + k - l / sp.alpha) <= tol;
}

namespace {

cplx ckl_log(double a, int k, int l, cplx s)
{
    const double t = 1.0 / a;
    cplx L = lg((1 - l) * t + k + s) - lg(l * t + 1.0 - k - s) + lg(2 - t - s);
    if (k >= 0) {
        for (int j = 1; j <= l; ++j) L += lg(j * t + 1.0 - k - s) + lg(2 * t - (j * t + 1.0 - s));
        for (int i = 0; i < k; ++i) L += lg(a * (s + double(i))) + std::log(std::sin(pi * a * (s + double(i))) / pi);
        for (int i = 0; i <= k; ++i) L -= lg(2.0 - l - a + a * (s + double(i)));
    } else {
        for (int j = 1; j <= l; ++j) L += lg(j * t + 1.0 - s) + lg((2 - j) * t + k + s);
        for (int i = 0; i < -k; ++i) L += lg(l + 1 + a - a * s + a * double(i));
        for (int i = 0; i < -k - 1; ++i) L += lg(2 + a * k + a * s + a * double(i));
    }
    return L;
}

} // namespace

cplx ckl_closed_form(const StableParams& sp, int k, int l, cplx s)
{
    if (l < 0) throw UnsupportedCase("ckl_closed_form: l < 0 is not covered");
    if (!in_ckl(sp, k, l)) throw NotInCkl("rho + k != l/alpha for (k, l) = (" + std::to_string(k) + ", "
                                         + std::to_string(l) + ")");
    require_high_index(sp.alpha, "ckl_closed_form");
    const double a = sp.alpha, lo = sp.rho - 1 / a, hi = 2 - 1 / a;
    if (!(s.real() > lo && s.real() < hi)) throw OutOfStrip("ckl_closed_form: Re s outside the strip");
    auto f = [&](cplx z) { return ckl_log(a, k, l, z); };
    double r = 1e-3 * std::min({1.0, s.real() - lo, hi - s.real()});
    double r1 = 1e-3 * std::min({1.0, 1.0 - lo, hi - 1.0});
    cplx v = exp_or_circle(f, s, r) / exp_or_circle(f, cplx(1.0, 0.0), r1);
    if (s.imag() == 0.0) v.imag(0.0);
    return v;
}

std::pair<HGParams, ClassTag> radial_lamperti(double alpha)
{
    if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("radial_lamperti: alpha in (0,2)");
    HGParams p{1.0, alpha / 2, (1 - alpha) / 2, alpha / 2};
    return {p, alpha <= 1.0 ? ClassTag::HG : ClassTag::EHG};
}

cplx radial_mellin(double alpha, cplx s)
{
    require_high_index(alpha, "radial_mellin");
    return mellin(make_radial_spec(alpha), s);
}

cplx t0_mellin(double alpha, cplx s)
{
    cplx m = radial_mellin(alpha, s);
    if (s == cplx(1.0, 0.0)) return 1.0;
    return std::exp(-alpha * (s - 1.0) * std::log(2.0)) * m;
}

double radial_constant(double alpha)
{
    require_high_index(alpha, "radial_constant");
    return std::sqrt(pi) * gamma_ratio({}, {1 / alpha, 1 - 1 / alpha});
}

HGParams avoid_zero_params(double alpha) { return HGParams{(alpha + 1) / 2, alpha / 2, 0.0, alpha / 2}; }

cplx avoid_zero_exponent(double alpha, cplx z)
{
    require_high_index(alpha, "avoid_zero_exponent");
    // psi' is the exponent of xi'; psi_eval of the radial parameters is that of 2 xi'
    LaplaceExponent le(radial_lamperti(alpha).first, ClassTag::EHG);
    return le((z + alpha - 1.0) / 2.0);
}

double h_invariant(double x, const StableParams& sp)
{
    require_high_index(sp.alpha, "h_invariant");
    if (x == 0.0) throw DomainError("h_invariant: x = 0");
    const double a = sp.alpha;
    double sn = x > 0 ? std::sin(pi * a * sp.rhoh) : std::sin(pi * a * sp.rho);
    return -gamma_fn(1 - a) * sn / pi * std::pow(std::fabs(x), a - 1);
}

double exit_beta_integral(double x, double alpha)
{
    if (!(std::fabs(x) <= 1.0)) throw DomainError("exit_beta_integral: |x| <= 1");
    SeriesPolicy pol;
    pol.rel_tol = 1e-14;
    return incomplete_beta(alpha / 2, (3 - alpha) / 2, 1 - std::fabs(x), pol);
}

namespace {

// ym1 = y - 1
double squared_density(double ax, double y, double ym1, double a)
{
    const double k = std::sin(pi * a / 2) / pi;
    double base = k / y * std::pow(ym1, -a / 2);
    return base * ax * std::pow(1 - ax, a / 2) / (y - ax)
           + 0.5 * base * std::pow(ax, (a - 1) / 2) * exit_beta_integral(ax, a);
}

double squared_hit(double ax, double a)
{
    return std::pow(1 - ax, a / 2) - 0.5 * std::pow(ax, (a - 1) / 2) * exit_beta_integral(ax, a);
}

// two-sided exit kernel, aym1 = |y| - 1
double rogozin(double x, double y, double aym1, double a)
{
    double y2m1 = aym1 * (std::fabs(y) + 1);
    return std::sin(pi * a / 2) / pi * std::pow(1 - x * x, a / 2) * std::pow(y2m1, -a / 2) / std::fabs(y - x);
}

} // namespace

double exit_before_zero_density_squared_form(double x, double y, double alpha)
{
    require_exit_args(x, alpha, "exit_before_zero_density");
    require_high_index(alpha, "exit_before_zero_density_squared_form");
    if (!(y > 1.0)) throw DomainError("exit_before_zero_density: y > 1 required");
    return squared_density(std::fabs(x), y, y - 1, alpha);
}

double hit_zero_before_exit_prob_squared_form(double x, double alpha)
{
    require_exit_args(x, alpha, "hit_zero_before_exit_prob");
    require_high_index(alpha, "hit_zero_before_exit_prob_squared_form");
    return squared_hit(std::fabs(x), alpha);
}

double exit_before_zero_density(double x, double y, double ym1, double alpha)
{
    require_exit_args(x, alpha, "exit_before_zero_density");
    if (!(y > 1.0 || ym1 > 0.0)) throw DomainError("exit_before_zero_density: y > 1 required");
    if (alpha <= 1.0) return rogozin(x, y, ym1, alpha) + rogozin(x, -y, ym1, alpha);
    // the squared form is the law of X^2 started at x^2
    return 2 * y * squared_density(x * x, y * y, ym1 * (y + 1), alpha);
}

double exit_before_zero_density(double x, double y, double alpha)
{
    return exit_before_zero_density(x, y, y - 1, alpha);
}

double hit_zero_before_exit_prob(double x, double alpha)
{
    require_exit_args(x, alpha, "hit_zero_before_exit_prob");
    if (alpha <= 1.0) return 0.0;
    return std::clamp(squared_hit(x * x, alpha), 0.0, 1.0);
}

double two_sided_exit_density(double x, double y, double aym1, double alpha)
{
    require_exit_args(x, alpha, "two_sided_exit_density");
    if (!(std::fabs(y) > 1.0 || aym1 > 0.0)) throw DomainError("two_sided_exit_density: |y| > 1 required");
    return rogozin(x, y, aym1, alpha);
}

double two_sided_exit_density(double x, double y, double alpha)
{
    return two_sided_exit_density(x, y, std::fabs(y) - 1, alpha);
}

double two_sided_exit_avoid_zero_density(double x, double y, double aym1, double alpha)
{
    require_exit_args(x, alpha, "two_sided_exit_avoid_zero_density");
    if (!(std::fabs(y) > 1.0 || aym1 > 0.0))
        throw DomainError("two_sided_exit_avoid_zero_density: |y| > 1 required");
    double v = rogozin(x, y, aym1, alpha) - hit_zero_before_exit_prob(x, alpha) * rogozin(0.0, y, aym1, alpha);
    return std::max(v, 0.0);
}

double two_sided_exit_avoid_zero_density(double x, double y, double alpha)
{
    return two_sided_exit_avoid_zero_density(x, y, std::fabs(y) - 1, alpha);
}

double integrate_exit_range(const ExitIntegrand& f, double alpha, double a, double b, double tol)
{
    using boost::math::quadrature::gauss_kronrod;
    if (!(a >= 1.0 && b > a)) throw DomainError("integrate_exit_range: need 1 <= a < b");
    auto fy = [&](double y) { return f(y, y - 1); };
    double sum = 0.0;
    const double mid = 2.0;
    if (a < mid) {
        double hi = std::min(b, mid);
        if (a == 1.0) {
            const double m = 1.0 / (1.0 - alpha / 2);
            auto g = [&](double w) {
                if (w <= 0.0) return 0.0;
                double wm1 = std::pow(w, m - 1), u = wm1 * w;
                // f ~ u^(-alpha/2) and u^(-alpha/2) w^(m-1) = w^0; scale out to
                // stay finite when u underflows
                return f(1.0 + u, u) * m * wm1;
            };
            sum += gauss_kronrod<double, 31>::integrate(g, 0.0, std::pow(hi - 1.0, 1.0 / m), 20, tol);
        } else {
            sum += gauss_kronrod<double, 31>::integrate(fy, a, hi, 20, tol);
        }
    }
    if (b > mid) {
        double lo = std::max(a, mid);
        if (std::isinf(b)) {
            boost::math::quadrature::tanh_sinh<double> ts;
            auto g = [&](double t) {
                if (t <= 0.0) return 0.0;
                double y = lo / t;
                if (y > 1e100) return 0.0;
                return f(y, y - 1) * lo / (t * t);
            };
            sum += ts.integrate(g, 0.0, 1.0, tol);
        } else {
            sum += gauss_kronrod<double, 31>::integrate(fy, lo, b, 20, tol);
        }
    }
    return sum;
}

double integrate_exit_tail(const ExitIntegrand& f, double alpha, double tol)
{
    return integrate_exit_range(f, alpha, 1.0, INFINITY, tol);
}

} // namespace hyperlevy
