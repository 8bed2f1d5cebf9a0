#pragma once

#include "hyperlevy/params.hpp"
#include "hyperlevy/specfun.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hyperlevy {

// scale * prod(a+z) / prod(b+z) * prod Gamma(c+z) / prod Gamma(d+z) + offset
struct BernsteinExpr {
    double scale = 1.0;
    std::vector<double> lin_num, lin_den;
    std::vector<double> gamma_num, gamma_den;
    double offset = 0.0;

    static BernsteinExpr identity();  // z
    static BernsteinExpr gamma_quotient(double num_shift, double den_shift);

    cplx operator()(cplx z) const;
    double operator()(double z) const;
    std::string to_string() const;
    // Cancels equal shifts between numerator and denominator lists.
    BernsteinExpr simplified() const;
};

struct LaplaceExponent {
    HGParams params;
    ClassTag cls;

    LaplaceExponent(const HGParams& p, ClassTag t);
    // First admissible class of p.
    explicit LaplaceExponent(const HGParams& p);
    cplx operator()(cplx z) const;
};

cplx psi_eval(const LaplaceExponent& le, cplx z);

struct WhFactors {
    BernsteinExpr ascending;   // kappa
    BernsteinExpr descending;  // kappa hat
};

// psi(z) = -kappa(-z) kappah(z)
WhFactors wh_factors(const LaplaceExponent& le);

// q = -psi(0)
double killing_rate(const HGParams& p);
double killing_rate(const LaplaceExponent& le);

// Forward differences of order 1..4 on a log grid have the signs of a
// Bernstein function (nonnegative, nondecreasing, concave, ...).
bool looks_bernstein(const BernsteinExpr& b);

BernsteinExpr conjugate(const BernsteinExpr& b);              // z / b(z)
BernsteinExpr t_transform(const BernsteinExpr& b, double c);  // z/(z+c) b(z+c)
BernsteinExpr esscher(const BernsteinExpr& b, double c);      // b(z+c) - b(c)

} // namespace hyperlevy
