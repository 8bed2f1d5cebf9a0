#include "hyperlevy/exponents.hpp"
#include "hyperlevy/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hyperlevy {

BernsteinExpr BernsteinExpr::identity()
{
    BernsteinExpr b;
    b.lin_num = {0.0};
    return b;
}

BernsteinExpr BernsteinExpr::gamma_quotient(double num_shift, double den_shift)
{
    BernsteinExpr b;
    b.gamma_num = {num_shift};
    b.gamma_den = {den_shift};
    return b;
}

cplx BernsteinExpr::operator()(cplx z) const
{
    cplx lin = scale;
    for (double a : lin_num) lin *= a + z;
    for (double a : lin_den) {
        if (a + z == 0.0) throw PoleError("BernsteinExpr: linear pole at z = " + std::to_string(-a));
        lin /= a + z;
    }
    if (lin == 0.0) return offset;
    std::vector<cplx> num, den;
    for (double c : gamma_num) num.push_back(c + z);
    for (double d : gamma_den) den.push_back(d + z);
    return lin * gamma_ratio(num, den) + offset;
}

double BernsteinExpr::operator()(double z) const { return (*this)(cplx(z, 0.0)).real(); }

std::string BernsteinExpr::to_string() const
{
    std::ostringstream os;
    os.precision(12);
    auto shift = [&](double a) {
        std::ostringstream s;
        s.precision(12);
        if (a == 0.0) s << "z";
        else s << a << "+z";
        return s.str();
    };
    os << scale;
    for (double a : lin_num) os << "*(" << shift(a) << ")";
    for (double c : gamma_num) os << "*Gamma(" << shift(c) << ")";
    for (double a : lin_den) os << "/(" << shift(a) << ")";
    for (double d : gamma_den) os << "/Gamma(" << shift(d) << ")";
    if (offset != 0.0) os << (offset > 0 ? "+" : "") << offset;
    return os.str();
}

BernsteinExpr BernsteinExpr::simplified() const
{
    BernsteinExpr r = *this;
    auto cancel = [](std::vector<double>& num, std::vector<double>& den) {
        for (auto it = num.begin(); it != num.end();) {
            auto jt = std::find(den.begin(), den.end(), *it);
            if (jt != den.end()) {
                den.erase(jt);
                it = num.erase(it);
            } else {
                ++it;
            }
        }
    };
    cancel(r.lin_num, r.lin_den);
    cancel(r.gamma_num, r.gamma_den);
    return r;
}

LaplaceExponent::LaplaceExponent(const HGParams& p, ClassTag t) : params(p), cls(t)
{
    if (!in_class(p, t))
        throw InadmissibleParameters("parameters are not in class " + hyperlevy::to_string(t));
}

LaplaceExponent::LaplaceExponent(const HGParams& p) : params(p), cls(classify(p).classes.front()) {}

cplx LaplaceExponent::operator()(cplx z) const
{
    const double b = params.beta, g = params.gamma, bh = params.betah, gh = params.gammah;
    try {
        if (cls == ClassTag::EHL) {
            // betah = beta; the denominator is Gamma(1-beta-z), which makes psi(0) = -q <= 0
            return gamma_ratio({1 - b + g - z, b + gh + z}, {1 - b - z, b + z});
        }
        return -gamma_ratio({1 - b + g - z, bh + gh + z}, {1 - b - z, bh + z});
    } catch (const PoleError&) {
        std::ostringstream os;
        os.precision(17);
        os << "psi has a pole at z = (" << z.real() << "," << z.imag() << ")";
        throw PoleError(os.str());
    }
}

cplx psi_eval(const LaplaceExponent& le, cplx z) { return le(z); }

WhFactors wh_factors(const LaplaceExponent& le)
{
    const double b = le.params.beta, g = le.params.gamma, bh = le.params.betah, gh = le.params.gammah;
    WhFactors f;
    switch (le.cls) {
    case ClassTag::HG:
        f.ascending = BernsteinExpr::gamma_quotient(1 - b + g, 1 - b);
        f.descending = BernsteinExpr::gamma_quotient(bh + gh, bh);
        break;
    case ClassTag::EHG:
        f.ascending = BernsteinExpr::gamma_quotient(1 - b + g, 2 - b);
        f.ascending.lin_num = {-bh};
        f.descending = BernsteinExpr::gamma_quotient(bh + gh, 1 + bh);
        f.descending.lin_num = {b - 1};
        break;
    case ClassTag::EHG_BETA_ONLY:
        f.ascending = BernsteinExpr::gamma_quotient(2 - b + g, 2 - b);
        f.descending = BernsteinExpr::gamma_quotient(bh + gh, bh);
        f.descending.lin_num = {b - 1};
        f.descending.lin_den = {b - 1 - g};
        break;
    case ClassTag::EHG_BETAH_ONLY: {
        // factors of the dual process, which lies in the beta-only class, swapped
        HGParams d{1 - bh, gh, 1 - b, g};
        WhFactors fd = wh_factors(LaplaceExponent(d, ClassTag::EHG_BETA_ONLY));
        f.ascending = fd.descending;
        f.descending = fd.ascending;
        break;
    }
    case ClassTag::EHL:
        f.ascending = BernsteinExpr::gamma_quotient(1 - b + g, 2 - b);
        f.descending = BernsteinExpr::gamma_quotient(b + gh, b);
        f.descending.lin_num = {b - 1};
        break;
    }
    return f;
}

double killing_rate(const LaplaceExponent& le)
{
    double q = -le(cplx(0.0, 0.0)).real();
    return q == 0.0 ? 0.0 : q;
}

double killing_rate(const HGParams& p) { return killing_rate(LaplaceExponent(p)); }

bool looks_bernstein(const BernsteinExpr& b)
{
    for (int i = 0; i < 16; ++i) {
        double z = 1e-2 * std::pow(10.0, 4.0 * i / 15.0);
        double h = 0.2 * z;
        double f[5];
        for (int k = 0; k < 5; ++k) f[k] = b(z + k * h);
        double scale = std::fabs(f[4]) + 1e-300;
        if (f[0] < -1e-12 * scale) return false;
        // forward differences of order n carry the sign (-1)^(n-1)
        double d[5];
        std::copy(f, f + 5, d);
        for (int n = 1; n <= 4; ++n) {
            for (int k = 0; k + n < 5; ++k) d[k] = d[k + 1] - d[k];
            double sign = (n % 2 == 1) ? 1.0 : -1.0;
            if (sign * d[0] < -1e-9 * scale) return false;
        }
    }
    return true;
}

BernsteinExpr conjugate(const BernsteinExpr& b)
{
    if (b.offset != 0.0) throw UnsupportedCase("conjugate of an expression with an additive constant");
    if (!looks_bernstein(b)) throw NotSpecial("argument of conjugate is not Bernstein: " + b.to_string());
    BernsteinExpr r;
    r.scale = 1.0 / b.scale;
    r.lin_num = b.lin_den;
    r.lin_num.push_back(0.0);
    r.lin_den = b.lin_num;
    r.gamma_num = b.gamma_den;
    r.gamma_den = b.gamma_num;
    r = r.simplified();
    if (!looks_bernstein(r)) throw NotSpecial("conjugate fails the Bernstein spot check: " + r.to_string());
    return r;
}

namespace {

BernsteinExpr shifted(const BernsteinExpr& b, double c)
{
    BernsteinExpr r = b;
    for (auto* v : {&r.lin_num, &r.lin_den, &r.gamma_num, &r.gamma_den})
        for (double& a : *v) a += c;
    return r;
}

} // namespace

BernsteinExpr t_transform(const BernsteinExpr& b, double c)
{
    if (c < 0.0) throw NegativeShift("t_transform needs c >= 0");
    if (c == 0.0) return b;
    if (b.offset != 0.0) throw UnsupportedCase("t_transform of an expression with an additive constant");
    BernsteinExpr r = shifted(b, c);
    r.lin_num.push_back(0.0);
    r.lin_den.push_back(c);
    return r.simplified();
}

BernsteinExpr esscher(const BernsteinExpr& b, double c)
{
    if (c < 0.0) throw NegativeShift("esscher needs c >= 0");
    BernsteinExpr r = shifted(b, c);
    r.offset = b.offset - b(c);
    if (c == 0.0 && b(0.0) == 0.0) return b;
    return r;
}

} // namespace hyperlevy
