#include "hyperlevy/acceptance.hpp"

#include "hyperlevy/errors.hpp"
#include "hyperlevy/expfun.hpp"
#include "hyperlevy/exponents.hpp"
#include "hyperlevy/levy_measure.hpp"
#include "hyperlevy/specfun.hpp"
#include "hyperlevy/stable.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

namespace hyperlevy {

namespace {

constexpr double pi = std::numbers::pi;

// Dyadic values keep the gap equalities exact.
double draw(Rng& g, double lo, double hi)
{
    double v = lo + (hi - lo) * uniform01(g);
    return std::round(v * 1024.0) / 1024.0;
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string fix(double v, int digits = 6)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

// 1. psi(i theta) + kappa(-i theta) kappah(i theta)
CheckResult wiener_hopf(const AcceptanceOptions& opt)
{
    const int per_class = opt.quick ? 25 : 250;
    const ClassTag tags[] = {ClassTag::HG, ClassTag::EHG, ClassTag::EHG_BETA_ONLY, ClassTag::EHL};
    Rng g = path_rng(opt.seed, 1);
    double worst = 0;
    int draws = 0, nonfinite = 0;
    for (ClassTag t : tags) {
        for (int k = 0; k < per_class; ++k) {
            HGParams p = random_params(t, g);
            LaplaceExponent le(p, t);
            WhFactors f = wh_factors(le);
            for (int j = 0; j < 200; ++j) {
                double th = -50 + 100.0 * j / 199;
                cplx z(0, th);
                cplx psi = le(z);
                double r = std::abs(psi + f.ascending(-z) * f.descending(z)) / (1 + std::abs(psi));
                if (!std::isfinite(r)) ++nonfinite;
                else worst = std::max(worst, r);
            }
            ++draws;
        }
    }
    CheckResult c{1, "Wiener-Hopf identity", nonfinite == 0 && worst <= 1e-10, "", 0};
    c.detail = "max residual " + sci(worst) + " (tol 1e-10) over " + std::to_string(draws)
               + " draws x 200 theta in [-50,50], " + std::to_string(nonfinite) + " non-finite";
    return c;
}

// 2. closed form vs residue series of the Levy density
CheckResult density_routes(const AcceptanceOptions& opt)
{
    const int n = opt.quick ? 20 : 100;
    Rng g = path_rng(opt.seed, 2);
    double worst = 0;
    int degenerate = 0;
    for (int k = 0; k < n; ++k) {
        bool deg = k % 4 == 0;
        HGParams p = random_params(ClassTag::EHG, g, deg);
        auto pz = pole_zero_sequences(p, 1);
        degenerate += pz.cancelled_right || pz.cancelled_left;
        for (int j = 0; j < 20; ++j) {
            double ax = 0.05 * std::pow(100.0, j / 19.0);
            for (double x : {ax, -ax}) {
                double cf = density_closed_form(p, x).value;
                double se = density_series(p, x, 200000, 1e-13).value;
                worst = std::max(worst, std::fabs(cf - se) / std::fabs(cf));
            }
        }
    }
    CheckResult c{2, "Levy density closed form vs residue series", worst <= 1e-8, "", 0};
    c.detail = "max rel diff " + sci(worst) + " (tol 1e-8), " + std::to_string(n) + " EHG draws ("
               + std::to_string(degenerate) + " with a cancelled pair), 40 x in +-[0.05,5]";
    return c;
}

// 3. Levy-Khintchine quadrature vs psi
CheckResult levy_khintchine(const AcceptanceOptions& opt)
{
    const int n = opt.quick ? 3 : 10;
    Rng g = path_rng(opt.seed, 3);
    double worst = 0;
    for (int k = 0; k < n; ++k) {
        HGParams p;
        do p = random_params(ClassTag::EHG, g);
        while (!(p.gamma + p.gammah < 0.9));
        LaplaceExponent le(p, ClassTag::EHG);
        for (double th : {0.5, 1.0, 5.0, 10.0}) worst = std::max(worst, std::abs(lk_reconstruct(p, th) - le(cplx(0, th))));
    }
    CheckResult c{3, "Levy-Khintchine reconstruction", worst <= 1e-6, "", 0};
    c.detail = "max abs diff " + sci(worst) + " (tol 1e-6), " + std::to_string(n)
               + " bounded-variation EHG draws, theta in {0.5,1,5,10}";
    return c;
}

// 4. f(s+1) = -s f(s) / psi_delta(-s) and M(1) = 1
CheckResult functional_equation(const AcceptanceOptions&)
{
    std::vector<std::pair<std::string, MellinSpec>> specs;
    specs.emplace_back("HG(0.5,0.5,0.5,0.5) delta=1", make_hg_spec({0.5, 0.5, 0.5, 0.5}, 1.0));
    specs.emplace_back("HG(-0.3,0.4,1.2,0.7) delta=2", make_hg_spec({-0.3, 0.4, 1.2, 0.7}, 2.0));
    specs.emplace_back("EHG(1.25,0.75,0,0.75) delta=4/3", make_ehg_spec({1.25, 0.75, 0, 0.75}, 4.0 / 3));
    specs.emplace_back("EHG(1.4,0.6,-0.1,0.8) delta=2", make_ehg_spec({1.4, 0.6, -0.1, 0.8}, 2.0));
    specs.emplace_back("radial alpha=1.5", make_radial_spec(1.5));
    double worst = 0, worst_m1 = 0;
    for (auto& [name, sp] : specs) {
        double lo = sp.strip_lo, hi = sp.strip_hi - 1;
        for (int k = 0; k < 50; ++k) {
            double s = lo + (hi - lo) * (k + 0.5) / 50;
            worst = std::max(worst, functional_equation_residual(sp, s));
        }
        worst_m1 = std::max(worst_m1, std::abs(mellin(sp, 1.0) - 1.0));
    }
    CheckResult c{4, "Mellin functional equation", worst <= 1e-9 && worst_m1 <= 1e-12, "", 0};
    c.detail = "max residual " + sci(worst) + " (tol 1e-9) on 50 s per spec, " + std::to_string(specs.size())
               + " specs; max |M(1)-1| " + sci(worst_m1) + " (tol 1e-12)";
    return c;
}

// 5. double-gamma Mellin transform vs the C_{1,2} gamma/sine form
CheckResult ckl_check(const AcceptanceOptions&)
{
    StableParams sp = make_stable(4.0 / 3, 0.5);
    double lo = sp.rho - 1 / sp.alpha, hi = 2 - 1 / sp.alpha;
    double worst = 0;
    bool member = in_ckl(sp, 1, 2);
    for (int k = 0; k < 20; ++k) {
        double s = lo + (hi - lo) * (k + 0.5) / 20;
        worst = std::max(worst, rel_err(ckl_closed_form(sp, 1, 2, s), censored_occupation_mellin(sp, s)));
    }
    CheckResult c{5, "D_{k,l} cross-check", member && worst <= 1e-8, "", 0};
    c.detail = "alpha=4/3 rho=1/2 (k,l)=(1,2): max rel diff " + sci(worst) + " (tol 1e-8) on 20 points of ("
               + fix(lo, 4) + ", " + fix(hi, 4) + ")";
    return c;
}

// 6. C' and t0_mellin(1.5, 1)
CheckResult radial_constant_check(const AcceptanceOptions&)
{
    MellinSpec r = make_radial_spec(1.5);
    double closed = std::sqrt(pi) / (std::tgamma(2.0 / 3) * std::tgamma(1.0 / 3));
    double d = std::fabs(r.norm_constant - closed) / closed;
    double lib = std::fabs(radial_constant(1.5) - closed) / closed;
    cplx m1 = t0_mellin(1.5, 1.0);
    bool exact = m1 == cplx(1.0, 0.0);
    CheckResult c{6, "Radial constant", d <= 1e-12 && lib <= 1e-12 && exact, "", 0};
    c.detail = "numerical C' = " + fix(r.norm_constant, 16) + ", closed form " + fix(closed, 16) + ", rel diff "
               + sci(d) + " (tol 1e-12); t0_mellin(1.5,1) " + (exact ? "== 1" : "!= 1");
    return c;
}

// 7. Monte Carlo T_0 moments
CheckResult t0_monte_carlo(const AcceptanceOptions& opt, std::ostream& out)
{
    SimConfig cfg;
    cfg.sp = make_stable(1.5, 0.5);
    cfg.n_paths = opt.quick ? 20000 : 100000;
    cfg.eps_hit = 1e-3;
    cfg.seed = opt.seed;
    cfg.threads = opt.threads;
    const std::vector<double> s = {0.5, 1.2};
    auto est = estimate_t0_moments(s, cfg);
    bool pass = true;
    std::ostringstream d;
    d << "n=" << cfg.n_paths << ", eps_hit in {1e-3, 5e-4}, rel_step " << cfg.rel_step;
    for (std::size_t k = 0; k < s.size(); ++k) {
        double target = t0_mellin(1.5, s[k]).real();
        const auto& e = est[k];
        double gap = std::fabs(e.value.mean - target) / target;
        bool ok = e.value.contains(target) && gap <= 0.02;
        pass = pass && ok;
        d << "; s=" << s[k] << ": " << fix(e.value.mean, 5) << " +- " << fix(3 * e.value.std_error, 5)
          << " vs " << fix(target, 5) << ", gap " << fix(100 * gap, 2) << "% (tol 2%)";
        out << "    s=" << s[k] << " coarse " << fix(e.coarse.mean, 5) << " fine " << fix(e.fine.mean, 5)
            << " extrapolated " << fix(e.value.mean, 5) << " (order " << e.order << ", |fine-coarse| "
            << sci(std::fabs(e.fine.mean - e.coarse.mean)) << " < correction " << sci(std::fabs(e.correction))
            << ")\n";
    }
    out << "    mean steps/path " << fix(est[0].mean_steps, 0) << ", unabsorbed " << est[0].unabsorbed_fraction
        << ", beyond tail threshold " << cfg.tail_threshold << ": " << est[0].tail_fraction << " (Pareto index "
        << fix(est[0].tail_index, 4) << ")\n";
    return {7, "Monte Carlo T_0 moments", pass, d.str(), 0};
}

// 8. exit laws at (x, alpha) = (0.5, 1.5)
CheckResult exit_laws(const AcceptanceOptions& opt, std::ostream& out)
{
    const double x = 0.5, alpha = 1.5;
    SimConfig cfg;
    cfg.sp = make_stable(alpha, 0.5);
    cfg.n_paths = opt.quick ? 20000 : 100000;
    cfg.eps_hit = 1e-6;
    cfg.seed = opt.seed + 8;
    cfg.threads = opt.threads;
    auto e = estimate_exit_law(x, cfg);
    auto cs = exit_law_chi_square(e, x, alpha);
    double P = hit_zero_before_exit_prob(x, alpha);
    ExitIntegrand dens = [&](double y, double ym1) { return exit_before_zero_density(x, y, ym1, alpha); };
    double mass = integrate_exit_tail(dens, alpha, 1e-12);
    double consist = std::fabs(mass - (1 - P));
    const auto& pe = e.prob_hit_zero.value;
    bool ok_p = pe.contains(P), ok_chi = cs.p_value > 0.01, ok_mass = consist <= 1e-6;
    std::ostringstream d;
    d << "P_hat " << fix(pe.mean, 5) << " +- " << fix(3 * pe.std_error, 5) << " vs " << fix(P, 6)
      << (ok_p ? " (within 3 SE)" : " (outside 3 SE)") << "; chi2 " << fix(cs.statistic, 2) << " dof " << cs.dof
      << " p " << fix(cs.p_value, 4) << " (need > 0.01); |int density - (1-P)| " << sci(consist) << " (tol 1e-6); n="
      << cfg.n_paths;
    double sq = hit_zero_before_exit_prob_squared_form(x, alpha);
    out << "    info: squared-process form gives P = " << fix(sq, 6) << ", "
        << fix(std::fabs(pe.mean - sq) / pe.std_error, 1) << " SE from the simulation\n";
    return {8, "Exit laws", ok_p && ok_chi && ok_mass, d.str(), 0};
}

// 9. inversion round trip for the radial spec
CheckResult inversion(const AcceptanceOptions& opt)
{
    MellinSpec r = make_radial_spec(1.5);
    InversionOptions io;
    io.threads = opt.threads;
    auto d = invert_density(r, log_grid(1e-8, 1e8, 40), io);
    double mass = density_moment(r, d, 1.0);
    double worst = 0;
    for (double s : {0.8, 1.0, 1.2}) {
        double m = mellin(r, s).real();
        worst = std::max(worst, std::fabs(density_moment(r, d, s) - m) / m);
    }
    bool nonneg = d.raw_min >= -io.clip_tol;
    CheckResult c{9, "Mellin inversion round-trip", nonneg && std::fabs(mass - 1) <= 1e-4 && worst <= 1e-4, "", 0};
    c.detail = "min p before clipping " + sci(d.raw_min) + ", mass " + fix(mass, 8) + " (tol 1e-4), max rel moment error "
               + sci(worst) + " at s in {0.8,1,1.2} (tol 1e-4)";
    return c;
}

// 10. special functions
CheckResult special_functions(const AcceptanceOptions& opt)
{
    double fe = 0;
    for (double tau : {0.5, 1.0, 4.0 / 3, 2.0}) {
        DoubleGamma G(tau);
        for (int k = 2; k <= 30; ++k) {
            double z = k / 10.0;
            cplx g0 = G.log(z);
            cplx r1 = std::exp(G.log(z + 1) - log_gamma(z / tau) - g0) - 1.0;
            cplx r2 = std::exp(G.log(z + tau) - (0.5 * (tau - 1)) * std::log(2 * pi) - (0.5 - z) * std::log(tau)
                               - log_gamma(z) - g0)
                      - 1.0;
            fe = std::max({fe, std::abs(r1), std::abs(r2)});
        }
    }
    Rng g = path_rng(opt.seed, 10);
    double refl = 0;
    for (int k = 0; k < 1000; ++k) {
        cplx z(5 * uniform01(g), 10 * uniform01(g) - 5);
        cplx lhs = std::exp(log_gamma(z) + log_gamma(1.0 - z));
        cplx rhs = pi / std::sin(pi * z);
        refl = std::max(refl, std::abs(lhs - rhs) / std::abs(rhs));
    }
    double f21 = 0;
    const int n21 = opt.quick ? 200 : 1000;
    for (int k = 0; k < n21; ++k) {
        double a = 5 * uniform01(g) - 2, b = 5 * uniform01(g) - 2, c;
        do c = 5 * uniform01(g) - 2;
        while (c < 0.05 && std::fabs(c - std::round(c)) < 0.05);
        double z = 0.5 * uniform01(g);
        double t = 1, sum = 1;
        for (int n = 0; n < 100000; ++n) {
            t *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z;
            sum += t;
            if (t == 0) break;
        }
        f21 = std::max(f21, std::fabs(gauss_2f1(a, b, c, z) - sum) / std::fabs(sum));
    }
    CheckResult c{10, "Special-function suite", fe <= 1e-10 && refl <= 1e-10 && f21 <= 1e-10, "", 0};
    c.detail = "double gamma FE max rel " + sci(fe) + " (z in 0.2..3.0, tau in {0.5,1,4/3,2}); reflection max rel "
               + sci(refl) + " (1000 z); 2F1 vs series max rel " + sci(f21) + " (" + std::to_string(n21)
               + " cases, z in [0,0.5]); tol 1e-10";
    return c;
}

} // namespace

HGParams random_params(ClassTag t, Rng& g, bool degenerate)
{
    for (int attempt = 0; attempt < 100000; ++attempt) {
        HGParams p;
        switch (t) {
        case ClassTag::HG:
            p = {draw(g, -2, 1), draw(g, 0.05, 0.95), draw(g, 0.05, 3), draw(g, 0.05, 0.95)};
            break;
        case ClassTag::EHG:
            p = {draw(g, 1.05, 1.95), draw(g, 0.05, 0.95), draw(g, -0.95, -0.05), draw(g, 0.05, 0.95)};
            if (degenerate) {
                // zeta_1 = rho_1 on the right, or zetah_1 = rhoh_1 on the left
                if (uniform01(g) < 0.5)
                    p.gamma = p.beta - 1 - p.betah;
                else
                    p.gammah = p.beta - 1 - p.betah;
            }
            break;
        case ClassTag::EHG_BETA_ONLY:
            p = {draw(g, 1.05, 1.95), draw(g, 0.05, 0.95), draw(g, 0.0, 0.9), draw(g, 0.05, 0.95)};
            break;
        case ClassTag::EHG_BETAH_ONLY:
            p = {draw(g, -0.9, 1.0), draw(g, 0.05, 0.95), draw(g, -0.95, -0.05), draw(g, 0.05, 0.95)};
            break;
        case ClassTag::EHL: {
            double b = draw(g, 1.05, 1.95);
            p = {b, draw(g, 1.05, 1.95), b, draw(g, -0.95, -0.05)};
            break;
        }
        }
        if (!in_class(p, t)) continue;
        if (t == ClassTag::EHG && !(p.gamma > 0.01 && p.gamma < 0.99 && p.gammah > 0.01 && p.gammah < 0.99)) continue;
        return p;
    }
    throw NonConvergence("random_params: rejection sampling failed");
}

std::vector<CheckResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& out)
{
    using Check = std::function<CheckResult()>;
    const std::vector<std::pair<int, Check>> checks = {
        {1, [&] { return wiener_hopf(opt); }},
        {2, [&] { return density_routes(opt); }},
        {3, [&] { return levy_khintchine(opt); }},
        {4, [&] { return functional_equation(opt); }},
        {5, [&] { return ckl_check(opt); }},
        {6, [&] { return radial_constant_check(opt); }},
        {7, [&] { return t0_monte_carlo(opt, out); }},
        {8, [&] { return exit_laws(opt, out); }},
        {9, [&] { return inversion(opt); }},
        {10, [&] { return special_functions(opt); }},
    };
    const double limits[] = {0, 30, 60, 60, 1e300, 10, 1e300, 300, 300, 60, 1e300};
    std::vector<CheckResult> res;
    for (auto& [id, fn] : checks) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
        Timer tm;
        CheckResult c;
        try {
            c = fn();
        } catch (const std::exception& e) {
            c = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0};
        }
        c.seconds = tm.seconds();
        std::string timing = fix(c.seconds, 1) + " s";
        if (c.seconds > limits[id]) {
            c.pass = false;
            timing += " (limit " + fix(limits[id], 0) + " s exceeded)";
        }
        out << (c.pass ? "PASS" : "FAIL") << " [" << id << "] " << c.name << ": " << c.detail << "; " << timing
            << "\n";
        out.flush();
        res.push_back(c);
    }
    return res;
}

} // namespace hyperlevy
