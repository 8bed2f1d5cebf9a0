#pragma once

#include "hyperlevy/params.hpp"
#include "hyperlevy/specfun.hpp"

#include <functional>
#include <utility>

namespace hyperlevy {

struct StableParams {
    double alpha = 1.5;
    double rho = 0.5;
    double rhoh = 0.5;
    double c_plus = 0.0, c_minus = 0.0;  // Levy density c+- |x|^(-1-alpha) on each half-line
};

bool admissible_stable(double alpha, double rho);
// Validates (alpha, rho) and fills in rhoh and c+-.
StableParams make_stable(double alpha, double rho);

// Psi(theta) with E exp(i theta X_1) = exp(-Psi(theta)).
cplx stable_char_exponent(const StableParams& sp, double theta);

// Lamperti transform of the path-censored process: (1, a rho, 1-a, a rhoh),
// HG for alpha <= 1 and EHG for alpha > 1.
std::pair<HGParams, ClassTag> censored_lamperti(const StableParams& sp);
// -Gamma(a rho - z) Gamma(1 - a rho + z) / (Gamma(-z) Gamma(1 - a + z))
cplx censored_exponent(const StableParams& sp, cplx z);

// E_1[(occupation time of (0,inf) before T_0)^(s-1)], alpha > 1, on the strip
// (rho - 1/alpha, 2 - 1/alpha).
cplx censored_occupation_mellin(const StableParams& sp, cplx s);

// rho = l/alpha - k
double ckl_rho(double alpha, int k, int l);
bool in_ckl(const StableParams& sp, int k, int l, double tol = 1e-12);
// Gamma and sine form of censored_occupation_mellin for X in C_{k,l}, l >= 0.
cplx ckl_closed_form(const StableParams& sp, int k, int l, cplx s);

// Lamperti transform of |X|/2 (rho = 1/2): (1, a/2, (1-a)/2, a/2) for 2 xi'.
std::pair<HGParams, ClassTag> radial_lamperti(double alpha);

// Bare M(s) of the radial functional and E_1[T_0^(s-1)] = 2^(-alpha(s-1)) M(s),
// on (-1/alpha, 2-1/alpha).
cplx radial_mellin(double alpha, cplx s);
cplx t0_mellin(double alpha, cplx s);
// sqrt(pi) / (Gamma(1/alpha) Gamma(1-1/alpha))
double radial_constant(double alpha);

// psi'(z + alpha - 1), the exponent of xi' conditioned to avoid zero.
cplx avoid_zero_exponent(double alpha, cplx z);
HGParams avoid_zero_params(double alpha);  // ((a+1)/2, a/2, 0, a/2)

// Invariant function of X killed at zero, alpha in (1,2).
double h_invariant(double x, const StableParams& sp);

// int_0^(1-|x|) t^(a/2-1) (1-t)^(-(a-1)/2) dt
double exit_beta_integral(double x, double alpha);

// Symmetric process. Density in y > 1 of |X| at the exit of [-1,1] on the
// event that the exit happens before T_0. For alpha <= 1 zero is polar and
// this is the folded two-sided exit law.
double exit_before_zero_density(double x, double y, double alpha);
// P_x(T_0 < exit of [-1,1]); 0 for alpha <= 1.
double hit_zero_before_exit_prob(double x, double alpha);
// Two-sided exit density of X at y, |y| > 1, started at x (symmetric process).
double two_sided_exit_density(double x, double y, double alpha);
// Same on the event {exit before T_0}, |y| > 1.
double two_sided_exit_avoid_zero_density(double x, double y, double alpha);

// The same two laws written for X^2 started at x^2:
// exit_before_zero_density(x, y) = 2y * squared_form(x^2, y^2).
double exit_before_zero_density_squared_form(double x, double y, double alpha);
double hit_zero_before_exit_prob_squared_form(double x, double alpha);

// Integrands take (y, y-1) so that y-1 keeps its relative precision near 1.
using ExitIntegrand = std::function<double(double y, double y_minus_1)>;

// int_a^b f dy, 1 <= a < b <= inf. Near 1 the substitution y = 1 + w^m,
// m = 1/(1-alpha/2), smooths the (y-1)^(-alpha/2) endpoint; the tail uses
// y = c/t.
double integrate_exit_range(const ExitIntegrand& f, double alpha, double a, double b, double tol = 1e-12);
double integrate_exit_tail(const ExitIntegrand& f, double alpha, double tol = 1e-12);

// Density variants taking |y|-1 explicitly.
double exit_before_zero_density(double x, double y, double y_minus_1, double alpha);
double two_sided_exit_density(double x, double y, double absy_minus_1, double alpha);
double two_sided_exit_avoid_zero_density(double x, double y, double absy_minus_1, double alpha);

} // namespace hyperlevy
