#include "hyperlevy/expfun.hpp"
#include "hyperlevy/errors.hpp"
#include "hyperlevy/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

namespace hyperlevy {

namespace {

std::string fmt(cplx s)
{
    std::ostringstream os;
    os.precision(17);
    os << "(" << s.real() << "," << s.imag() << ")";
    return os.str();
}

cplx lg(cplx z) { return log_gamma_unwrapped(z); }

// log of the HG product without its constant
cplx log_hg_raw(const HGParams& p, double d, const DoubleGamma& G, cplx s)
{
    const double b = p.beta, g = p.gamma, bh = p.betah, gh = p.gammah;
    return lg(s) + G.log((1 - b) * d + s) - G.log((1 - b + g) * d + s)
           + G.log((bh + gh) * d + 1.0 - s) - G.log(bh * d + 1.0 - s);
}

cplx log_ehg_raw(const HGParams& p, double d, const DoubleGamma& G, cplx s)
{
    const double b = p.beta, g = p.gamma, bh = p.betah, gh = p.gammah;
    HGParams aux{b - 1, g, bh + 1, gh};
    return log_hg_raw(aux, d, G, s) + lg(d * (1 - b + g) + s) - lg(-d * bh + s)
           + lg(d * (b - 1) + 1.0 - s) - lg(d * (bh + gh) + 1.0 - s);
}

cplx log_radial_raw(double a, cplx s)
{
    return lg(1 + a / 2 - a * s / 2.0) - lg((1 - a) / 2 + a * s / 2.0) + lg(1 / a - 1 + s)
           + lg(2 - 1 / a - s) - lg(2.0 - s);
}

cplx log_raw(const MellinSpec& sp, cplx s)
{
    switch (sp.kind) {
    case MellinKind::HG: return log_hg_raw(sp.params, sp.delta, *sp.dg, s);
    case MellinKind::EHG: return log_ehg_raw(sp.params, sp.delta, *sp.dg, s);
    case MellinKind::Radial: return log_radial_raw(sp.alpha, s);
    }
    return 0.0;
}

void normalise(MellinSpec& sp)
{
    sp.log_norm = -log_raw(sp, cplx(1.0, 0.0));
    sp.norm_constant = std::exp(sp.log_norm).real();
}

void check_delta(double delta)
{
    if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("delta must be > 0");
}

} // namespace

MellinSpec make_hg_spec(const HGParams& p, double delta)
{
    check_delta(delta);
    if (!in_class(p, ClassTag::HG)) throw InadmissibleParameters("make_hg_spec: parameters are not HG");
    if (!(p.betah > 0.0))
        throw InadmissibleParameters("make_hg_spec: betah > 0 is needed for a finite exponential functional");
    MellinSpec sp;
    sp.kind = MellinKind::HG;
    sp.params = p;
    sp.delta = delta;
    sp.theta = p.betah * delta;
    sp.strip_lo = 0.0;
    sp.strip_hi = 1.0 + sp.theta;
    sp.dg = std::make_shared<DoubleGamma>(delta);
    normalise(sp);
    return sp;
}

MellinSpec make_ehg_spec(const HGParams& p, double delta)
{
    check_delta(delta);
    if (!in_class(p, ClassTag::EHG)) throw InadmissibleParameters("make_ehg_spec: parameters are not EHG");
    if (!(p.beta > 1.0))
        throw InadmissibleParameters("make_ehg_spec: beta > 1 is needed for a finite exponential functional");
    MellinSpec sp;
    sp.kind = MellinKind::EHG;
    sp.params = p;
    sp.delta = delta;
    sp.theta = delta * (p.beta - 1);
    sp.strip_lo = 0.0;
    sp.strip_hi = 1.0 + sp.theta;
    sp.dg = std::make_shared<DoubleGamma>(delta);
    normalise(sp);
    return sp;
}

MellinSpec make_radial_spec(double alpha)
{
    if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("make_radial_spec: alpha in (1,2)");
    MellinSpec sp;
    sp.kind = MellinKind::Radial;
    sp.alpha = alpha;
    sp.params = HGParams{(alpha + 1) / 2, alpha / 2, 0.0, alpha / 2};
    sp.delta = 2.0 / alpha;
    sp.theta = 1.0 - 1.0 / alpha;
    sp.strip_lo = -1.0 / alpha;
    sp.strip_hi = 2.0 - 1.0 / alpha;
    normalise(sp);
    return sp;
}

cplx mellin(const MellinSpec& spec, cplx s)
{
    if (!spec.in_strip(s.real()))
        throw OutOfStrip("Re s = " + std::to_string(s.real()) + " is outside (" + std::to_string(spec.strip_lo)
                         + ", " + std::to_string(spec.strip_hi) + ")");
    cplx v;
    try {
        v = std::exp(log_raw(spec, s) + spec.log_norm);
    } catch (const PoleError&) {
        // a pole of one gamma factor cancelled by a zero of another; M is
        // analytic there, so take the mean over a small circle
        const int n = 32;
        const double r = 1e-3 * std::min(1.0, std::min(s.real() - spec.strip_lo, spec.strip_hi - s.real()));
        v = 0.0;
        for (int k = 0; k < n; ++k)
            v += std::exp(log_raw(spec, s + std::polar(r, 2 * std::numbers::pi * (k + 0.5) / n)) + spec.log_norm);
        v /= double(n);
    }
    if (s.imag() == 0.0) v.imag(0.0);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NonFinite("mellin at s = " + fmt(s));
    return v;
}

cplx mellin_hg(const HGParams& p, double delta, cplx s) { return mellin(make_hg_spec(p, delta), s); }
cplx mellin_ehg(const HGParams& p, double delta, cplx s) { return mellin(make_ehg_spec(p, delta), s); }

cplx psi_delta(const MellinSpec& spec, cplx z)
{
    ClassTag t = spec.kind == MellinKind::HG ? ClassTag::HG : ClassTag::EHG;
    return LaplaceExponent(spec.params, t)(z / spec.delta);
}

double functional_equation_residual(const MellinSpec& spec, double s)
{
    if (!spec.in_strip(s) || !spec.in_strip(s + 1))
        throw OutOfStrip("functional equation needs s and s+1 in the strip; s = " + std::to_string(s));
    cplx m1 = mellin(spec, s + 1.0);
    cplx rhs = -s * mellin(spec, s) / psi_delta(spec, -s);
    return std::abs(m1 - rhs) / std::abs(m1);
}

std::vector<double> log_grid(double lo, double hi, int per_decade)
{
    if (!(lo > 0.0 && hi > lo) || per_decade < 1) throw DomainError("log_grid: need 0 < lo < hi");
    double a = std::log10(lo), b = std::log10(hi);
    int n = std::max(1, int(std::ceil((b - a) * per_decade)));
    std::vector<double> g(n + 1);
    for (int i = 0; i <= n; ++i) g[i] = std::pow(10.0, a + (b - a) * i / n);
    return g;
}

namespace {

struct Line {
    double c;
    std::vector<cplx> m;  // M(c + i k h), k = 0, 1, ...
    double abs_sum;
};

Line sample_line(const MellinSpec& spec, double c, const InversionOptions& opt)
{
    Line L{c, {}, 0.0};
    cplx m0 = mellin(spec, c);
    L.m.push_back(m0);
    L.abs_sum = 0.5 * std::abs(m0);
    const double stop = opt.tail_tol * std::abs(m0);
    for (int k = 1;; ++k) {
        double t = k * opt.step;
        if (t > opt.max_height)
            throw TruncationTooLow("|M| has not decayed below tolerance at height " + std::to_string(opt.max_height));
        cplx v = mellin(spec, cplx(c, t));
        L.m.push_back(v);
        L.abs_sum += std::abs(v);
        if (std::abs(v) < stop && t > 1.0) break;
    }
    return L;
}

double line_value(const Line& L, double h, double u)
{
    const double lu = std::log(u);
    double acc = 0.5 * L.m[0].real();
    for (std::size_t k = 1; k < L.m.size(); ++k) {
        double ph = -double(k) * h * lu;
        acc += L.m[k].real() * std::cos(ph) - L.m[k].imag() * std::sin(ph);
    }
    return h / std::numbers::pi * acc * std::exp(-L.c * lu);
}

} // namespace

InvertedDensity invert_density(const MellinSpec& spec, const std::vector<double>& u_grid,
                               const InversionOptions& opt)
{
    for (double u : u_grid)
        if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("invert_density: grid points must be > 0");
    if (!(opt.step > 0.0)) throw DomainError("invert_density: step must be > 0");
    const double w = spec.strip_hi - spec.strip_lo;
    std::vector<double> cs;
    if (std::isnan(opt.contour)) {
        cs = {spec.strip_lo + 0.1 * w, spec.strip_lo + 0.5 * w, spec.strip_lo + 0.9 * w};
    } else {
        if (!spec.in_strip(opt.contour))
            throw ContourOutOfStrip("contour Re s = " + std::to_string(opt.contour) + " is outside the strip");
        cs = {opt.contour};
    }
    std::vector<Line> lines;
    for (double c : cs) lines.push_back(sample_line(spec, c, opt));

    InvertedDensity out;
    out.grid = u_grid;
    out.values.assign(u_grid.size(), 0.0);
    out.contours.assign(u_grid.size(), 0.0);
    out.contour_re = lines[lines.size() / 2].c;
    for (auto& L : lines) out.truncation_height = std::max(out.truncation_height, (L.m.size() - 1) * opt.step);

    // the rounding error of a line is about eps * abs_sum * u^-c; take the line
    // with the smallest bound
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double u = u_grid[i], lu = std::log(u);
            std::size_t best = 0;
            double best_bound = INFINITY;
            for (std::size_t j = 0; j < lines.size(); ++j) {
                double bnd = std::log(lines[j].abs_sum) - lines[j].c * lu;
                if (bnd < best_bound) {
                    best_bound = bnd;
                    best = j;
                }
            }
            out.values[i] = line_value(lines[best], opt.step, u);
            out.contours[i] = lines[best].c;
        }
    };
    unsigned nt = std::max(1u, std::min<unsigned>(opt.threads, unsigned(u_grid.size() / 16 + 1)));
    if (nt == 1) {
        work(0, u_grid.size());
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (u_grid.size() + nt - 1) / nt;
        for (unsigned t = 0; t < nt; ++t) {
            std::size_t a = t * chunk, b = std::min(u_grid.size(), a + chunk);
            if (a < b) pool.emplace_back(work, a, b);
        }
        for (auto& th : pool) th.join();
    }
    out.raw_min = u_grid.empty() ? 0.0 : *std::min_element(out.values.begin(), out.values.end());
    for (double& v : out.values)
        if (v < 0.0 && v > -opt.clip_tol) v = 0.0;
    return out;
}

double density_moment(const MellinSpec& spec, const InvertedDensity& d, double s)
{
    if (!spec.in_strip(s)) throw OutOfStrip("density_moment: s outside the strip");
    const auto& u = d.grid;
    const auto& p = d.values;
    if (u.size() < 2) throw DomainError("density_moment: grid too small");
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        double v0 = std::log(u[i]), v1 = std::log(u[i + 1]);
        double g0 = std::pow(u[i], s) * p[i], g1 = std::pow(u[i + 1], s) * p[i + 1];
        sum += 0.5 * (v1 - v0) * (g0 + g1);
    }
    const double kappa = -spec.strip_lo, lambda = spec.strip_hi;
    const double u0 = u.front(), un = u.back();
    double B = p.front() / std::pow(u0, kappa);
    double A = p.back() * std::pow(un, lambda);
    sum += B * std::pow(u0, s + kappa) / (s + kappa);
    sum += A * std::pow(un, s - lambda) / (lambda - s);
    return sum;
}

} // namespace hyperlevy
