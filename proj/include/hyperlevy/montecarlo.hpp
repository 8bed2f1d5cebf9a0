#pragma once

#include "hyperlevy/stable.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace hyperlevy {

struct SimConfig {
    StableParams sp;
    double dt = 1e-4;          // fixed grid step for simulate_path / simulate_endpoints
    double horizon = 1e12;     // time cap for the hitting estimators
    double eps_hit = 1e-3;     // absorption radius; the estimators also run eps_hit/2
    std::int64_t n_paths = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    // Hitting estimators step by rel_step * |X|^alpha in time.
    double rel_step = 2e-3;
    std::int64_t max_steps = 200000000;  // per path
    // Hitting functionals above this are replaced by their conditional mean
    // under the Pareto tail P(F > t) ~ c t^(-(1-1/alpha)); the path stops
    // there. Infinity keeps raw values up to the horizon.
    double tail_threshold = 1e3;
};

struct EstimateWithCI {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n_effective = 0;

    double lo() const { return mean - 3.0 * std_error; }
    double hi() const { return mean + 3.0 * std_error; }
    bool contains(double v) const { return v >= lo() && v <= hi(); }
};

// Two absorption levels and the per-path Richardson combination
// fine + (fine - coarse) / (2^order - 1).
struct ExtrapolatedEstimate {
    EstimateWithCI value;
    EstimateWithCI coarse;   // eps_hit
    EstimateWithCI fine;     // eps_hit / 2
    double order = 0.0;
    double correction = 0.0; // value.mean - fine.mean
    double unabsorbed_fraction = 0.0;
    double tail_fraction = 0.0;  // paths beyond tail_threshold
    double tail_index = 0.0;
    double mean_steps = 0.0;
};

using Rng = std::mt19937_64;

// Independent stream for path `index`.
Rng path_rng(std::uint64_t seed, std::uint64_t index);
double uniform01(Rng& g);  // in (0, 1)

// Chambers-Mallows-Stuck draw of X_1 with E exp(i theta X_1) = exp(-Psi(theta)).
class StableSampler {
public:
    explicit StableSampler(const StableParams& sp);
    double operator()(Rng& g) const;

private:
    double alpha_, shift_;
};

// Positions x0, X_dt, ..., X_{n dt} of path `index`.
std::vector<double> simulate_path(const SimConfig& cfg, std::uint64_t index, double x0, std::int64_t n_steps);
// X_t of every path as a sum of round(t/dt) increments.
std::vector<double> simulate_endpoints(const SimConfig& cfg, double t, double x0 = 0.0);

// E_1[T_0^(s-1)], alpha in (1,2). s - 1 < 1 - 1/alpha bounds the tail model.
ExtrapolatedEstimate estimate_t0_moment(double s, const SimConfig& cfg);
std::vector<ExtrapolatedEstimate> estimate_t0_moments(const std::vector<double>& s, const SimConfig& cfg);

// E_1[(int_0^T_0 1{X_t > 0} dt)^(s-1)], alpha in (1,2).
ExtrapolatedEstimate estimate_occupation_moment(double s, const SimConfig& cfg);
std::vector<ExtrapolatedEstimate> estimate_occupation_moments(const std::vector<double>& s, const SimConfig& cfg);

struct ExitLawEstimate {
    ExtrapolatedEstimate prob_hit_zero;
    std::vector<double> bin_edges;     // 21 edges on [1, 5]
    std::vector<std::int64_t> counts;  // |X_sigma| per bin on {sigma < T_0}
    std::int64_t overflow = 0;         // |X_sigma| > 5
    std::int64_t hits = 0;             // absorbed at eps_hit / 2
    std::int64_t n_paths = 0;
    double mean_steps = 0.0;
};

// Walk-on-spheres for the symmetric process from x, |x| < 1, alpha in (1,2).
ExitLawEstimate estimate_exit_law(double x, const SimConfig& cfg, int bins = 20, double y_max = 5.0);

struct ChiSquare {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 0.0;
    std::vector<double> expected;  // bins, overflow, hits
};

// Pearson test of all cells (bins, overflow, hits) against
// exit_before_zero_density and hit_zero_before_exit_prob.
ChiSquare exit_law_chi_square(const ExitLawEstimate& e, double x, double alpha);

// Summary statistics of per-path samples.
EstimateWithCI summarize(const std::vector<double>& v);

} // namespace hyperlevy
