#pragma once

#include <complex>
#include <span>
#include <vector>

namespace hyperlevy {

using cplx = std::complex<double>;

struct SeriesPolicy {
    double rel_tol = 1e-12;
    int max_terms = 10000;
    double asymptotic_switch_radius = 15.0;
};

double sinpi(double x);
double cospi(double x);

// Tolerant test for z in {0, -1, -2, ...}.
bool is_nonpositive_integer(cplx z);
bool is_nonpositive_integer(double x);

// Principal value: imaginary part in (-pi, pi].
cplx log_gamma(cplx z);
// Same function without the final branch wrap; cheaper, fine under exp().
cplx log_gamma_unwrapped(cplx z);
cplx log_sin_pi(cplx z);

// log|Gamma(x)| with the sign written to *sign.
double log_abs_gamma(double x, int* sign);
double gamma_fn(double x);
// 1/Gamma(x), exactly zero at the poles.
double rgamma(double x);

// prod Gamma(num) / prod Gamma(den), evaluated as exp of a log-sum. A pole in
// the denominator gives 0, a pole in the numerator throws PoleError.
cplx gamma_ratio(std::span<const cplx> num, std::span<const cplx> den);
double gamma_ratio(std::span<const double> num, std::span<const double> den);
cplx gamma_ratio(std::initializer_list<cplx> num, std::initializer_list<cplx> den);
double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den);

enum class Hyp2f1Method { Auto, Series, Connection, Continuation };

// 2F1(a,b;c;z) for z in [0,1]; z == 1 only when c-a-b > 0.
double gauss_2f1(double a, double b, double c, double z, const SeriesPolicy& pol = {});
// 2F1/Gamma(c); defined for every c.
double gauss_2f1_regularized(double a, double b, double c, double z,
                             const SeriesPolicy& pol = {});
// As above with omz = 1-z supplied separately, for z within rounding of 1.
double gauss_2f1_regularized(double a, double b, double c, double z, double omz,
                             const SeriesPolicy& pol);
// Forces one evaluation route; used to cross-check the routes against each other.
double gauss_2f1_with(Hyp2f1Method m, double a, double b, double c, double z,
                      const SeriesPolicy& pol = {});

// int_0^u t^(a-1) (1-t)^(b-1) dt, u in [0,1].
double incomplete_beta(double a, double b, double u, const SeriesPolicy& pol = {});

// log G(z; tau) normalised by G(1; tau) = 1, with
//   G(z+1) = Gamma(z/tau) G(z),
//   G(z+tau) = (2 pi)^((tau-1)/2) tau^(1/2-z) Gamma(z) G(z).
// Evaluated by shifting z to the right and summing the asymptotic expansion.
class DoubleGamma {
public:
    explicit DoubleGamma(double tau);
    double tau() const { return tau_; }
    cplx log(cplx z) const;
    bool is_lattice_point(cplx z) const;

private:
    cplx raw(cplx z) const;
    cplx asymptotic(cplx w) const;

    double tau_;
    double radius_;
    double b1_, b2_;
    std::vector<double> c_;
    cplx raw_at_one_;
};

cplx log_double_gamma(cplx z, double tau);

} // namespace hyperlevy
