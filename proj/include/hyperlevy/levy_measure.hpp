#pragma once

#include "hyperlevy/params.hpp"
#include "hyperlevy/specfun.hpp"

#include <vector>

namespace hyperlevy {

// Zeros and poles of psi: zeta_n, rho_n on the right and -zetah_n, -rhoh_n on
// the left of the origin.
struct PoleZeroGrid {
    std::vector<double> zeta, rho, zetah, rhoh;
    bool cancelled_right = false;  // zeta_1 == rho_1
    bool cancelled_left = false;   // zetah_1 == rhoh_1
    int count = 0;
};

PoleZeroGrid pole_zero_sequences(const HGParams& p, int n);
bool interlaced(const PoleZeroGrid& g);

enum class DensityRoute { ClosedForm, ResidueSeries };

struct DensityEvaluation {
    double x = 0;
    double value = 0;
    DensityRoute route = DensityRoute::ClosedForm;
    int terms_used = 0;
};

// Levy density via the Gauss hypergeometric closed form.
DensityEvaluation density_closed_form(const HGParams& p, double x);
// Partial sum of sum a_n rho_n exp(-rho_n |x|), stopped by a geometric tail
// bound at rel_tol; NonConvergence if n_terms is not enough.
DensityEvaluation density_series(const HGParams& p, double x, int n_terms, double rel_tol = 1e-13);
// Series coefficient a_n rho_n (right = true) or ah_n rhoh_n.
double residue_coefficient(const HGParams& p, int n, bool right);

// -q + int (e^{i theta x} - 1) pi(x) dx by quadrature; needs gamma + gammah < 1.
cplx lk_reconstruct(const HGParams& p, double theta);

struct LampertiStableTriple {
    double alpha, beta, delta;
};

double ehl_density(double beta, double gamma, double gammah, double x);
LampertiStableTriple ehl_lamperti_stable(double beta, double gamma, double gammah);

} // namespace hyperlevy
