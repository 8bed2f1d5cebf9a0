#include "hyperlevy/montecarlo.hpp"

#include "hyperlevy/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

namespace hyperlevy {

namespace {

constexpr double pi = std::numbers::pi;

template <class F>
void parallel_for(std::int64_t n, unsigned threads, F&& f)
{
    unsigned nt = std::max(1u, threads);
    if (nt == 1 || n < 2) {
        for (std::int64_t i = 0; i < n; ++i) f(i);
        return;
    }
    nt = static_cast<unsigned>(std::min<std::int64_t>(nt, n));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(nt);
    for (unsigned w = 0; w < nt; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::int64_t i = w; i < n; i += nt) f(i);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

void check_config(const SimConfig& cfg)
{
    if (!admissible_stable(cfg.sp.alpha, cfg.sp.rho))
        throw InadmissibleParameters("SimConfig: inadmissible (alpha, rho)");
    if (!(cfg.dt > 0) || !(cfg.eps_hit > 0 && cfg.eps_hit < 1) || cfg.n_paths < 1 || !(cfg.horizon > 0)
        || !(cfg.rel_step > 0) || cfg.max_steps < 1)
        throw DomainError("SimConfig: need dt > 0, 0 < eps_hit < 1, n_paths >= 1, horizon > 0, rel_step > 0");
}

void check_alpha_gt1(const SimConfig& cfg, const char* who)
{
    if (!(cfg.sp.alpha > 1 && cfg.sp.alpha < 2)) throw DomainError(std::string(who) + ": need alpha in (1,2)");
}

struct Chain {
    double t[2] = {0, 0};  // time at eps_hit and eps_hit/2
    double a[2] = {0, 0};  // occupation of (0, inf) at the same times
    bool absorbed = false;
    std::int64_t steps = 0;
};

// Adaptive skeleton from x = 1; stops once the tracked functional (T or the
// occupation A) passes tail_threshold. From x the increment over tau = rel |x|^alpha is
// tau^(1/alpha) S = rel^(1/alpha) |x| S, so the visited points are exact.
Chain run_chain(const SimConfig& cfg, std::uint64_t index, bool occupation)
{
    const StableSampler S(cfg.sp);
    Rng g = path_rng(cfg.seed, index);
    const double alpha = cfg.sp.alpha, h = std::pow(cfg.rel_step, 1 / alpha);
    const double eps[2] = {cfg.eps_hit, cfg.eps_hit / 2};
    Chain c;
    double x = 1, T = 0, A = 0;
    int level = 0;
    while (true) {
        double ax = std::fabs(x);
        while (level < 2 && ax <= eps[level]) {
            c.t[level] = T;
            c.a[level] = A;
            ++level;
        }
        if (level == 2) {
            c.absorbed = true;
            break;
        }
        bool tail = (occupation ? A : T) > cfg.tail_threshold;
        if (tail || T >= cfg.horizon || c.steps >= cfg.max_steps) {
            for (; level < 2; ++level) {
                c.t[level] = T;
                c.a[level] = A;
            }
            c.absorbed = tail;
            break;
        }
        double tau = cfg.rel_step * std::pow(ax, alpha);
        T += tau;
        if (x > 0) A += tau;
        x += h * ax * S(g);
        ++c.steps;
    }
    return c;
}

std::vector<Chain> run_chains(const SimConfig& cfg, bool occupation)
{
    std::vector<Chain> out(cfg.n_paths);
    parallel_for(cfg.n_paths, cfg.threads, [&](std::int64_t i) { out[i] = run_chain(cfg, i, occupation); });
    return out;
}

ExtrapolatedEstimate extrapolate(const std::vector<Chain>& chains, bool occupation, double s, double order,
                                 double u, double kappa)
{
    const std::int64_t n = static_cast<std::int64_t>(chains.size());
    const double q = 1 / (std::pow(2.0, order) - 1), a = s - 1;
    // E[F^a | F > u] = u^a kappa / (kappa - a) for a Pareto(kappa) tail
    const double tail_mean = std::isfinite(u) ? std::pow(u, a) * kappa / (kappa - a) : 0.0;
    auto g = [&](double v) { return s == 1 ? 1.0 : v > u ? tail_mean : std::pow(v, a); };
    std::vector<double> c(n), f(n), r(n);
    std::int64_t open = 0, tail = 0;
    double steps = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        const Chain& ch = chains[i];
        const double* v = occupation ? ch.a : ch.t;
        c[i] = g(v[0]);
        f[i] = g(v[1]);
        r[i] = f[i] + (f[i] - c[i]) * q;
        open += !ch.absorbed;
        tail += v[1] > u;
        steps += static_cast<double>(ch.steps);
    }
    ExtrapolatedEstimate e;
    e.value = summarize(r);
    e.coarse = summarize(c);
    e.fine = summarize(f);
    e.order = order;
    e.correction = e.value.mean - e.fine.mean;
    e.unabsorbed_fraction = static_cast<double>(open) / static_cast<double>(n);
    e.tail_fraction = static_cast<double>(tail) / static_cast<double>(n);
    e.tail_index = kappa;
    e.mean_steps = steps / static_cast<double>(n);
    return e;
}

void check_horizon(const ExtrapolatedEstimate& e, const char* who)
{
    if (e.unabsorbed_fraction > 1e-3)
        throw HorizonTooShort(std::string(who) + ": " + std::to_string(100 * e.unabsorbed_fraction)
                              + "% of paths not absorbed; raise horizon or max_steps");
}

std::vector<ExtrapolatedEstimate> chain_moments(const std::vector<double>& s, const SimConfig& cfg,
                                                bool occupation, const char* who)
{
    check_config(cfg);
    check_alpha_gt1(cfg, who);
    const double alpha = cfg.sp.alpha;
    const double lo = occupation ? cfg.sp.rho - 1 / alpha : -1 / alpha, hi = 2 - 1 / alpha;
    for (double si : s)
        if (!(si > lo && si < hi))
            throw OutOfStrip(std::string(who) + ": s = " + std::to_string(si) + " outside (" + std::to_string(lo)
                             + ", " + std::to_string(hi) + ")");
    const double kappa = 1 - 1 / alpha, u = cfg.tail_threshold;
    if (!(u > 0)) throw DomainError(std::string(who) + ": tail_threshold must be positive");
    auto chains = run_chains(cfg, occupation);
    std::vector<ExtrapolatedEstimate> out;
    for (double si : s) {
        out.push_back(extrapolate(chains, occupation, si, alpha - 1, u, kappa));
        check_horizon(out.back(), who);
    }
    return out;
}

} // namespace

Rng path_rng(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(sq);
}

double uniform01(Rng& g)
{
    // 53 random bits, shifted off 0
    return (static_cast<double>(g() >> 11) + 0.5) * 0x1p-53;
}

StableSampler::StableSampler(const StableParams& sp)
    : alpha_(sp.alpha), shift_(pi * sp.alpha * (sp.rho - 0.5))
{
    if (!admissible_stable(sp.alpha, sp.rho)) throw InadmissibleParameters("StableSampler: inadmissible (alpha, rho)");
}

double StableSampler::operator()(Rng& g) const
{
    const double V = pi * (uniform01(g) - 0.5);
    const double W = -std::log(uniform01(g));
    const double a = alpha_;
    if (a == 1.0) return std::tan(V);
    const double arg = a * V + shift_;
    return std::sin(arg) / std::pow(std::cos(V), 1 / a) * std::pow(std::cos(V - arg) / W, (1 - a) / a);
}

std::vector<double> simulate_path(const SimConfig& cfg, std::uint64_t index, double x0, std::int64_t n_steps)
{
    check_config(cfg);
    if (n_steps < 0) throw DomainError("simulate_path: n_steps < 0");
    const StableSampler S(cfg.sp);
    Rng g = path_rng(cfg.seed, index);
    const double h = std::pow(cfg.dt, 1 / cfg.sp.alpha);
    std::vector<double> xs(n_steps + 1);
    xs[0] = x0;
    for (std::int64_t k = 1; k <= n_steps; ++k) xs[k] = xs[k - 1] + h * S(g);
    return xs;
}

std::vector<double> simulate_endpoints(const SimConfig& cfg, double t, double x0)
{
    check_config(cfg);
    if (!(t > 0)) throw DomainError("simulate_endpoints: need t > 0");
    const std::int64_t n_steps = std::max<std::int64_t>(1, std::llround(t / cfg.dt));
    const double h = std::pow(t / static_cast<double>(n_steps), 1 / cfg.sp.alpha);
    const StableSampler S(cfg.sp);
    std::vector<double> out(cfg.n_paths);
    parallel_for(cfg.n_paths, cfg.threads, [&](std::int64_t i) {
        Rng g = path_rng(cfg.seed, i);
        double x = x0;
        for (std::int64_t k = 0; k < n_steps; ++k) x += h * S(g);
        out[i] = x;
    });
    return out;
}

EstimateWithCI summarize(const std::vector<double>& v)
{
    EstimateWithCI e;
    e.n_effective = static_cast<std::int64_t>(v.size());
    if (v.empty()) return e;
    const double n = static_cast<double>(v.size());
    double m = 0;
    for (double x : v) m += x;
    m /= n;
    double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    e.mean = m;
    e.std_error = v.size() > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
    return e;
}

ExtrapolatedEstimate estimate_t0_moment(double s, const SimConfig& cfg)
{
    return estimate_t0_moments({s}, cfg).front();
}

std::vector<ExtrapolatedEstimate> estimate_t0_moments(const std::vector<double>& s, const SimConfig& cfg)
{
    return chain_moments(s, cfg, false, "estimate_t0_moment");
}

ExtrapolatedEstimate estimate_occupation_moment(double s, const SimConfig& cfg)
{
    return estimate_occupation_moments({s}, cfg).front();
}

std::vector<ExtrapolatedEstimate> estimate_occupation_moments(const std::vector<double>& s, const SimConfig& cfg)
{
    return chain_moments(s, cfg, true, "estimate_occupation_moment");
}

namespace {

struct Walk {
    int hit[2] = {0, 0};
    bool exited = false;
    double y = 0;  // |X_sigma| when exited before the fine level
    std::int64_t steps = 0;
};

// One-ball harmonic measure of the symmetric process: from the centre of a ball
// of radius r the exit point is at distance r V^(-1/2), V ~ Beta(a/2, 1-a/2),
// on either side with probability 1/2.
Walk run_walk(double x0, const SimConfig& cfg, std::uint64_t index)
{
    Rng g = path_rng(cfg.seed, index);
    const double alpha = cfg.sp.alpha;
    std::gamma_distribution<double> G1(alpha / 2), G2(1 - alpha / 2);
    const double eps[2] = {cfg.eps_hit, cfg.eps_hit / 2};
    Walk w;
    double x = x0;
    int level = 0;
    while (true) {
        double ax = std::fabs(x);
        while (level < 2 && ax <= eps[level]) w.hit[level++] = 1;
        if (level == 2) break;
        if (w.steps >= cfg.max_steps) break;
        double r = std::min(ax, 1 - ax);
        double g1 = G1(g), g2 = G2(g);
        double v = g1 / (g1 + g2);
        double jump = r / std::sqrt(v);
        x += uniform01(g) < 0.5 ? -jump : jump;
        ++w.steps;
        if (std::fabs(x) >= 1) {
            w.exited = true;
            w.y = std::fabs(x);
            break;
        }
    }
    return w;
}

} // namespace

ExitLawEstimate estimate_exit_law(double x, const SimConfig& cfg, int bins, double y_max)
{
    check_config(cfg);
    check_alpha_gt1(cfg, "estimate_exit_law");
    if (cfg.sp.rho != 0.5) throw UnsupportedCase("estimate_exit_law: symmetric process only");
    if (!(std::fabs(x) < 1)) throw DomainError("estimate_exit_law: need |x| < 1");
    if (bins < 1 || !(y_max > 1)) throw DomainError("estimate_exit_law: need bins >= 1 and y_max > 1");
    std::vector<Walk> walks(cfg.n_paths);
    parallel_for(cfg.n_paths, cfg.threads, [&](std::int64_t i) { walks[i] = run_walk(x, cfg, i); });

    const double order = cfg.sp.alpha - 1, q = 1 / (std::pow(2.0, order) - 1);
    ExitLawEstimate e;
    e.n_paths = cfg.n_paths;
    e.counts.assign(bins, 0);
    for (int k = 0; k <= bins; ++k) e.bin_edges.push_back(1 + (y_max - 1) * k / bins);
    std::vector<double> c(cfg.n_paths), f(cfg.n_paths), r(cfg.n_paths);
    std::int64_t open = 0;
    double steps = 0;
    for (std::int64_t i = 0; i < cfg.n_paths; ++i) {
        const Walk& w = walks[i];
        c[i] = w.hit[0];
        f[i] = w.hit[1];
        r[i] = f[i] + (f[i] - c[i]) * q;
        steps += static_cast<double>(w.steps);
        if (w.hit[1]) {
            ++e.hits;
        } else if (w.exited) {
            if (w.y > y_max) {
                ++e.overflow;
            } else {
                int k = static_cast<int>((w.y - 1) / (y_max - 1) * bins);
                ++e.counts[std::clamp(k, 0, bins - 1)];
            }
        } else {
            ++open;
        }
    }
    auto& p = e.prob_hit_zero;
    p.value = summarize(r);
    p.coarse = summarize(c);
    p.fine = summarize(f);
    p.order = order;
    p.correction = p.value.mean - p.fine.mean;
    p.unabsorbed_fraction = static_cast<double>(open) / static_cast<double>(cfg.n_paths);
    p.mean_steps = e.mean_steps = steps / static_cast<double>(cfg.n_paths);
    check_horizon(p, "estimate_exit_law");
    return e;
}

ChiSquare exit_law_chi_square(const ExitLawEstimate& e, double x, double alpha)
{
    const int bins = static_cast<int>(e.counts.size());
    if (bins < 1 || e.bin_edges.size() != e.counts.size() + 1) throw DomainError("exit_law_chi_square: bad histogram");
    ExitIntegrand dens = [&](double y, double ym1) { return exit_before_zero_density(x, y, ym1, alpha); };
    const double n = static_cast<double>(e.n_paths);
    ChiSquare cs;
    std::vector<double> obs;
    for (int k = 0; k < bins; ++k) {
        cs.expected.push_back(n * integrate_exit_range(dens, alpha, e.bin_edges[k], e.bin_edges[k + 1], 1e-10));
        obs.push_back(static_cast<double>(e.counts[k]));
    }
    cs.expected.push_back(n * integrate_exit_range(dens, alpha, e.bin_edges.back(), INFINITY, 1e-10));
    obs.push_back(static_cast<double>(e.overflow));
    cs.expected.push_back(n * hit_zero_before_exit_prob(x, alpha));
    obs.push_back(static_cast<double>(e.hits));
    int cells = 0;
    for (std::size_t k = 0; k < obs.size(); ++k) {
        if (!(cs.expected[k] > 0)) continue;
        double d = obs[k] - cs.expected[k];
        cs.statistic += d * d / cs.expected[k];
        ++cells;
    }
    cs.dof = cells - 1;
    cs.p_value = cs.dof > 0 ? boost::math::gamma_q(0.5 * cs.dof, 0.5 * cs.statistic) : 1.0;
    return cs;
}

} // namespace hyperlevy
