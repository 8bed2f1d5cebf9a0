#pragma once

#include "hyperlevy/params.hpp"
#include "hyperlevy/specfun.hpp"

#include <memory>
#include <vector>

namespace hyperlevy {

// Mellin transform M(s) = E[I^(s-1)] of I = int_0^inf exp(-xi_t/delta) dt.
//   HG     : xi in the hypergeometric class, theta = betah*delta
//   EHG    : xi extended hypergeometric with beta > 1, theta = delta*(beta-1)
//   Radial : E_1[T_0^(s-1)] = 2^(-alpha(s-1)) M(s) of the symmetric stable
//            process; closed gamma form on the wide strip (-1/alpha, 2-1/alpha)
enum class MellinKind { HG, EHG, Radial };

struct MellinSpec {
    MellinKind kind = MellinKind::HG;
    HGParams params;        // for Radial: ((alpha+1)/2, alpha/2, 0, alpha/2)
    double delta = 1.0;     // for Radial: 2/alpha
    double alpha = 0.0;     // Radial only
    double theta = 0.0;
    double strip_lo = 0.0, strip_hi = 1.0;
    double norm_constant = 1.0;  // M(s) = norm_constant * (unnormalised product)
    cplx log_norm = 0.0;
    std::shared_ptr<const DoubleGamma> dg;

    bool in_strip(double re) const { return re > strip_lo && re < strip_hi; }
};

MellinSpec make_hg_spec(const HGParams& p, double delta);
MellinSpec make_ehg_spec(const HGParams& p, double delta);
MellinSpec make_radial_spec(double alpha);

cplx mellin(const MellinSpec& spec, cplx s);
cplx mellin_hg(const HGParams& p, double delta, cplx s);
cplx mellin_ehg(const HGParams& p, double delta, cplx s);

// psi_delta(z) = psi(z/delta), the exponent of xi/delta.
cplx psi_delta(const MellinSpec& spec, cplx z);

// |M(s+1) + s M(s)/psi_delta(-s)| / |M(s+1)|; needs s and s+1 in the strip.
double functional_equation_residual(const MellinSpec& spec, double s);

struct InversionOptions {
    double contour = NAN;       // NaN: per-point choice from three lines
    double step = 0.02;         // trapezoid step in Im s
    double tail_tol = 1e-13;    // stop when |M(c+it)| < tail_tol |M(c)|
    double max_height = 400.0;  // TruncationTooLow beyond this
    double clip_tol = 1e-6;     // negative values above -clip_tol are set to 0
    unsigned threads = 1;
};

struct InvertedDensity {
    std::vector<double> grid;
    std::vector<double> values;   // after clipping
    std::vector<double> contours; // line Re s = c used at each grid point
    double contour_re = 0.0;      // central line
    double truncation_height = 0.0;
    double raw_min = 0.0;         // smallest value before clipping
};

// p(u) = (1/2 pi) int M(c+it) u^(-c-it) dt by the trapezoid rule.
InvertedDensity invert_density(const MellinSpec& spec, const std::vector<double>& u_grid,
                               const InversionOptions& opt = {});

// Log-spaced grid on [lo, hi] with per_decade points per decade.
std::vector<double> log_grid(double lo, double hi, int per_decade);

// int u^(s-1) p(u) du on a log-spaced grid by the trapezoid rule in log u,
// plus power-law tails p ~ B u^(-strip_lo) at 0 and p ~ A u^(-strip_hi) at
// infinity fitted to the end values. s = 1 gives the mass.
double density_moment(const MellinSpec& spec, const InvertedDensity& d, double s);

} // namespace hyperlevy
