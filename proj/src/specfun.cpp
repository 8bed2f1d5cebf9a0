#include "hyperlevy/specfun.hpp"
#include "hyperlevy/errors.hpp"

#include <boost/math/special_functions/bernoulli.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace hyperlevy {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double ln_pi = 1.1447298858494002;
constexpr double half_ln_2pi = 0.91893853320467274;

std::string fmt(cplx z)
{
    std::ostringstream os;
    os.precision(17);
    os << "(" << z.real() << "," << z.imag() << ")";
    return os.str();
}

void require_finite(cplx z, const char* where)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw NonFinite(std::string(where) + ": non-finite argument " + fmt(z));
}

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr double stirling_coef[] = {
    1.0 / 12.0,           -1.0 / 360.0,        1.0 / 1260.0,
    -1.0 / 1680.0,        1.0 / 1188.0,        -691.0 / 360360.0,
    1.0 / 156.0,          -3617.0 / 122400.0,  43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

cplx stirling(cplx w)
{
    cplx r = (w - 0.5) * std::log(w) - w + half_ln_2pi;
    cplx winv = 1.0 / w, w2 = winv * winv, p = winv;
    for (double c : stirling_coef) {
        r += c * p;
        p *= w2;
    }
    return r;
}

cplx wrap_branch(cplx v)
{
    double im = std::remainder(v.imag(), 2 * pi);
    if (im <= -pi) im += 2 * pi;
    return {v.real(), im};
}

} // namespace

double sinpi(double x)
{
    double r = x - 2.0 * std::round(0.5 * x);
    double s = r < 0 ? -1.0 : 1.0;
    double a = std::fabs(r);
    double v;
    if (a < 0.25) v = std::sin(pi * a);
    else if (a < 0.75) v = std::cos(pi * (a - 0.5));
    else v = std::sin(pi * (1.0 - a));
    return s * v;
}

double cospi(double x)
{
    double a = std::fabs(x - 2.0 * std::round(0.5 * x));
    if (a < 0.25) return std::cos(pi * a);
    if (a < 0.75) return std::sin(pi * (0.5 - a));
    return -std::cos(pi * (1.0 - a));
}

bool is_nonpositive_integer(double x)
{
    if (x > 0.5) return false;
    double n = std::round(x);
    return std::fabs(x - n) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(n));
}

bool is_nonpositive_integer(cplx z)
{
    return z.imag() == 0.0 && is_nonpositive_integer(z.real());
}

cplx log_sin_pi(cplx z)
{
    double x = z.real(), y = z.imag();
    if (std::fabs(y) < 100.0) {
        cplx s(sinpi(x) * std::cosh(pi * y), cospi(x) * std::sinh(pi * y));
        return std::log(s);
    }
    // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i), with |e^{2 i pi z}| tiny
    double ay = std::fabs(y);
    double m = std::exp(-2 * pi * ay);
    cplx w(m * cospi(2 * x), m * sinpi(2 * x));
    cplx r = cplx(pi * ay - std::numbers::ln2, 0.5 * pi - pi * x) + std::log(1.0 - w);
    return y > 0 ? r : std::conj(r);
}

cplx log_gamma_unwrapped(cplx z)
{
    require_finite(z, "log_gamma");
    if (is_nonpositive_integer(z)) throw PoleError("log_gamma: pole at " + fmt(z));
    if (z.real() < 0.5) return ln_pi - log_sin_pi(z) - log_gamma_unwrapped(1.0 - z);
    const double R = 15.0;
    cplx w = z, prod = 1.0, logprod = 0.0;
    int k = 0;
    while (std::abs(w) < R) {
        prod *= w;
        w += 1.0;
        if (++k % 8 == 0) {
            logprod += std::log(prod);
            prod = 1.0;
        }
    }
    return stirling(w) - logprod - std::log(prod);
}

cplx log_gamma(cplx z) { return wrap_branch(log_gamma_unwrapped(z)); }

double log_abs_gamma(double x, int* sign)
{
    cplx l = log_gamma(cplx(x, 0.0));
    if (sign) *sign = std::fabs(l.imag()) > 1.0 ? -1 : 1;
    return l.real();
}

double gamma_fn(double x)
{
    int s;
    double l = log_abs_gamma(x, &s);
    return s * std::exp(l);
}

double rgamma(double x)
{
    if (is_nonpositive_integer(x)) return 0.0;
    int s;
    double l = log_abs_gamma(x, &s);
    return s * std::exp(-l);
}

cplx gamma_ratio(std::span<const cplx> num, std::span<const cplx> den)
{
    for (cplx z : num)
        if (is_nonpositive_integer(z)) throw PoleError("gamma_ratio: numerator pole at " + fmt(z));
    for (cplx z : den)
        if (is_nonpositive_integer(z)) return 0.0;
    cplx l = 0.0;
    for (cplx z : num) l += log_gamma_unwrapped(z);
    for (cplx z : den) l -= log_gamma_unwrapped(z);
    return std::exp(l);
}

double gamma_ratio(std::span<const double> num, std::span<const double> den)
{
    for (double x : num)
        if (is_nonpositive_integer(x)) throw PoleError("gamma_ratio: numerator pole at " + fmt(x));
    for (double x : den)
        if (is_nonpositive_integer(x)) return 0.0;
    double l = 0.0;
    int sign = 1, s;
    for (double x : num) {
        l += log_abs_gamma(x, &s);
        sign *= s;
    }
    for (double x : den) {
        l -= log_abs_gamma(x, &s);
        sign *= s;
    }
    return sign * std::exp(l);
}

cplx gamma_ratio(std::initializer_list<cplx> num, std::initializer_list<cplx> den)
{
    return gamma_ratio(std::span<const cplx>(num.begin(), num.size()),
                       std::span<const cplx>(den.begin(), den.size()));
}

double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den)
{
    return gamma_ratio(std::span<const double>(num.begin(), num.size()),
                       std::span<const double>(den.begin(), den.size()));
}

// ---------------------------------------------------------------------------
// Gauss hypergeometric function

namespace {

bool terminating(double a) { return is_nonpositive_integer(a); }

double f21_series(double a, double b, double c, double z, const SeriesPolicy& pol)
{
    double sum = 1.0, t = 1.0;
    int small = 0;
    for (int n = 0; n < pol.max_terms; ++n) {
        double an = a + n, bn = b + n;
        if (an == 0.0 || bn == 0.0) return sum;
        t *= an * bn / ((c + n) * (n + 1)) * z;
        sum += t;
        if (std::fabs(t) <= pol.rel_tol * 1e-2 * std::fabs(sum)) {
            if (++small >= 2) return sum;
        } else {
            small = 0;
        }
    }
    std::ostringstream os;
    os << "2F1 series did not converge for (" << a << "," << b << "," << c << "," << z << ")";
    throw NonConvergence(os.str());
}

// Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)) with c-a-b > 0.
double gauss_sum(double a, double b, double c)
{
    return gamma_ratio({c, c - a - b}, {c - a, c - b});
}

double f21_connection(double a, double b, double c, double z, double omz,
                      const SeriesPolicy& pol)
{
    double d = c - a - b;
    double t1 = gamma_ratio({c, d}, {c - a, c - b});
    double t2 = gamma_ratio({c, -d}, {a, b});
    double r = 0.0;
    if (t1 != 0.0) r += t1 * f21_series(a, b, 1.0 - d, omz, pol);
    if (t2 != 0.0) r += t2 * std::pow(omz, d) * f21_series(c - a, c - b, 1.0 + d, omz, pol);
    (void)z;
    return r;
}

// Taylor stepping of the hypergeometric ODE
//   z(1-z) w'' + [c - (a+b+1) z] w' - ab w = 0
// from z = 1/2, each step at most half the distance to the singularity at 1.
double f21_continuation(double a, double b, double c, double z, double omz,
                        const SeriesPolicy& pol)
{
    double z0 = 0.5, om0 = 0.5;
    if (omz >= om0) return f21_series(a, b, c, z, pol);
    double w = f21_series(a, b, c, z0, pol);
    double dw = a * b / c * f21_series(a + 1, b + 1, c + 1, z0, pol);
    const double ab = a * b, q1 = -(a + b + 1);
    int steps = 0;
    while (om0 > omz) {
        double h = std::min(om0 - omz, 0.5 * om0);
        if (om0 - h - omz < 1e-3 * h) h = om0 - omz;
        double p0 = z0 * om0, p1 = om0 - z0, q0 = c - (a + b + 1) * z0;
        // scaled coefficients u_n = w_n h^n of the local expansion
        double un = w, un1 = dw * h;
        double val = un + un1, der = dw;
        int small = 0;
        bool ok = false;
        for (int n = 0; n < pol.max_terms; ++n) {
            double un2 = -((p1 * n * (n + 1) + q0 * (n + 1)) * un1 * h
                           + (-double(n) * (n - 1) + q1 * n - ab) * un * h * h)
                         / (p0 * (n + 2) * (n + 1));
            double td = (n + 2) * un2 / h;
            val += un2;
            der += td;
            if (std::fabs(un2) <= 1e-2 * pol.rel_tol * std::fabs(val)
                && std::fabs(td) <= 1e-2 * pol.rel_tol * std::fabs(der) + 1e-300) {
                if (++small >= 3) {
                    ok = true;
                    break;
                }
            } else {
                small = 0;
            }
            un = un1;
            un1 = un2;
        }
        if (!ok) throw NonConvergence("2F1 continuation step did not converge");
        w = val;
        dw = der;
        z0 += h;
        om0 -= h;
        if (++steps > 4000) throw NonConvergence("2F1 continuation: too many steps");
    }
    return w;
}

// c is not a non-positive integer here.
double f21_core(double a, double b, double c, double z, double omz, const SeriesPolicy& pol,
                Hyp2f1Method method)
{
    if (z == 0.0) return 1.0;
    if (omz == 0.0) {
        if (c - a - b <= 0.0) throw DomainError("2F1 diverges at z = 1 when c-a-b <= 0");
        return gauss_sum(a, b, c);
    }
    switch (method) {
    case Hyp2f1Method::Series: return f21_series(a, b, c, z, pol);
    case Hyp2f1Method::Connection: return f21_connection(a, b, c, z, omz, pol);
    case Hyp2f1Method::Continuation: return f21_continuation(a, b, c, z, omz, pol);
    case Hyp2f1Method::Auto: break;
    }
    if (terminating(a) || terminating(b) || z <= 0.75) return f21_series(a, b, c, z, pol);
    double d = c - a - b;
    if (std::fabs(d - std::round(d)) > 0.02) return f21_connection(a, b, c, z, omz, pol);
    return f21_continuation(a, b, c, z, omz, pol);
}

void check_args(double a, double b, double c, double z, double omz)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(z))
        throw NonFinite("gauss_2f1: non-finite argument");
    if (z < 0.0 || omz < 0.0) throw DomainError("gauss_2f1: z must lie in [0, 1]");
}

} // namespace

double gauss_2f1(double a, double b, double c, double z, const SeriesPolicy& pol)
{
    return gauss_2f1_with(Hyp2f1Method::Auto, a, b, c, z, pol);
}

double gauss_2f1_with(Hyp2f1Method m, double a, double b, double c, double z,
                      const SeriesPolicy& pol)
{
    check_args(a, b, c, z, 1.0 - z);
    if (is_nonpositive_integer(c))
        throw PoleError("gauss_2f1: c is a non-positive integer");
    return f21_core(a, b, c, z, 1.0 - z, pol, m);
}

double gauss_2f1_regularized(double a, double b, double c, double z, double omz,
                             const SeriesPolicy& pol)
{
    check_args(a, b, c, z, omz);
    if (is_nonpositive_integer(c)) {
        // F/Gamma(c) at c = -k: (a)_{k+1} (b)_{k+1} / (k+1)! z^{k+1} F(a+k+1, b+k+1; k+2; z)
        int k = int(std::lround(-c));
        double pre = 1.0;
        for (int j = 0; j <= k; ++j) pre *= (a + j) * (b + j) / (j + 1);
        if (pre == 0.0) return 0.0;
        return pre * std::pow(z, k + 1)
               * f21_core(a + k + 1, b + k + 1, k + 2, z, omz, pol, Hyp2f1Method::Auto);
    }
    return f21_core(a, b, c, z, omz, pol, Hyp2f1Method::Auto) * rgamma(c);
}

double gauss_2f1_regularized(double a, double b, double c, double z, const SeriesPolicy& pol)
{
    return gauss_2f1_regularized(a, b, c, z, 1.0 - z, pol);
}

double incomplete_beta(double a, double b, double u, const SeriesPolicy& pol)
{
    if (!(a > 0.0) || !std::isfinite(b) || !(u >= 0.0 && u <= 1.0))
        throw DomainError("incomplete_beta: need a > 0 and u in [0, 1]");
    if (u == 0.0) return 0.0;
    if (u == 1.0) {
        if (!(b > 0.0)) throw DomainError("incomplete_beta: divergent at u = 1");
        return gamma_ratio({a, b}, {a + b});
    }
    return std::pow(u, a) / a * f21_core(a, 1.0 - b, a + 1.0, u, 1.0 - u, pol, Hyp2f1Method::Auto);
}

// ---------------------------------------------------------------------------
// Double gamma

DoubleGamma::DoubleGamma(double tau) : tau_(tau)
{
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("DoubleGamma: tau must be > 0");
    radius_ = 16.0 * std::max(1.0, tau);
    const int K = 64;
    std::vector<double> bern(K + 1, 0.0), fact(K + 1, 1.0);
    for (int n = 1; n <= K; ++n) fact[n] = fact[n - 1] * n;
    bern[0] = 1.0;
    bern[1] = 0.5;
    for (int n = 2; n <= K; n += 2) bern[n] = boost::math::bernoulli_b2n<double>(n / 2);
    c_.assign(K + 1, 0.0);
    for (int k = 0; k <= K; ++k) {
        double s = 0.0;
        for (int i = 0; i <= k; ++i) {
            int j = k - i;
            s += bern[i] / fact[i] * bern[j] * std::pow(tau, j) / fact[j];
        }
        c_[k] = s / tau;
    }
    double lt = std::log(tau);
    b2_ = -lt / (2 * tau);
    b1_ = half_ln_2pi + 0.5 * lt + lt / (2 * tau);
    raw_at_one_ = 0.0;
    raw_at_one_ = raw(1.0);
}

cplx DoubleGamma::asymptotic(cplx w) const
{
    cplx lw = std::log(w), w2 = w * w;
    cplx L = c_[0] * (0.5 * w2 * lw - 0.75 * w2) - c_[1] * (w * lw - w) + c_[2] * lw
             + b2_ * w2 + b1_ * w;
    cplx winv = 1.0 / w, p = winv;
    double fk = 1.0;  // (k-3)!
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t k = 3; k < c_.size(); ++k) {
        if (k > 3) fk *= double(k - 3);
        cplx term = c_[k] * fk * p;
        double at = std::abs(term);
        if (c_[k] != 0.0 && at > prev) break;
        L -= term;
        if (c_[k] != 0.0) {
            if (at < 1e-18 * std::abs(L)) break;
            prev = at;
        }
        p *= winv;
    }
    return L;
}

cplx DoubleGamma::raw(cplx z) const
{
    cplx acc = 0.0, w = z;
    while (std::abs(w) < radius_ || w.real() < 0.5 * radius_) {
        acc += log_gamma_unwrapped(w / tau_);
        w += 1.0;
    }
    return asymptotic(w) - acc;
}

bool DoubleGamma::is_lattice_point(cplx z) const
{
    if (z.imag() != 0.0 || z.real() > 1e-12) return false;
    double x = -z.real();
    for (int n = 0; n * tau_ <= x + 1e-9; ++n) {
        double m = x - n * tau_;
        if (std::fabs(m - std::round(m)) <= 1e-12 * std::max(1.0, x)) return true;
    }
    return false;
}

cplx DoubleGamma::log(cplx z) const
{
    require_finite(z, "log_double_gamma");
    if (is_lattice_point(z)) throw PoleError("log_double_gamma: lattice point " + fmt(z));
    return raw(z) - raw_at_one_;
}

cplx log_double_gamma(cplx z, double tau) { return DoubleGamma(tau).log(z); }

} // namespace hyperlevy
