#include "hyperlevy/cli.hpp"

#include "hyperlevy/acceptance.hpp"
#include "hyperlevy/errors.hpp"
#include "hyperlevy/expfun.hpp"
#include "hyperlevy/exponents.hpp"
#include "hyperlevy/levy_measure.hpp"
#include "hyperlevy/montecarlo.hpp"
#include "hyperlevy/params.hpp"
#include "hyperlevy/stable.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

namespace hyperlevy {

namespace {

using nlohmann::json;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string num17(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const Table& t)
{
    for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << t.columns[k];
    os << "\n";
    for (auto& r : t.rows) {
        for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << num17(r[k]);
        os << "\n";
    }
}

json table_json(const Table& t)
{
    json rows = json::array();
    for (auto& r : t.rows) rows.push_back(r);
    return {{"columns", t.columns}, {"rows", rows}};
}

// A numerical check failed; exit code 1 with the check's name.
struct CheckFailed {
    std::string name;
};

struct Common {
    std::string format = "json";
    std::string output;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t seed = 1;
};

struct Emitter {
    std::ostream& out;
    const Common& common;

    // Writes the table (to --output if given) and the JSON summary.
    void operator()(const std::string& command, const json& config, const Table& t, json summary = json::object())
    {
        json doc = {{"command", command}, {"config", config}};
        if (!summary.empty()) doc["summary"] = summary;
        if (!common.output.empty()) {
            std::ofstream f(common.output, std::ios::binary);
            if (!f) throw DomainError("cannot open output file " + common.output);
            if (common.format == "csv") write_csv(f, t);
            else f << table_json(t).dump(2) << "\n";
            doc["artifacts"] = json::array({common.output});
            out << doc.dump(2) << "\n";
            return;
        }
        if (common.format == "csv") {
            write_csv(out, t);
            return;
        }
        doc["table"] = table_json(t);
        out << doc.dump(2) << "\n";
    }
};

std::vector<double> linspace(const std::vector<double>& g)
{
    int n = static_cast<int>(std::lround(g[2]));
    if (n < 1 || g[2] != n) throw CLI::ValidationError("grid", "grid count must be a positive integer");
    std::vector<double> v;
    for (int k = 0; k < n; ++k) v.push_back(n == 1 ? g[0] : g[0] + (g[1] - g[0]) * k / (n - 1));
    return v;
}

std::vector<double> points(const std::vector<double>& list, const std::vector<double>& grid,
                           const std::vector<double>& fallback)
{
    if (!list.empty()) return list;
    if (!grid.empty()) return linspace(grid);
    return fallback;
}

struct ParamOpts {
    HGParams p;
    std::string cls;

    void add(CLI::App* sub)
    {
        sub->add_option("--beta", p.beta)->required();
        sub->add_option("--gamma", p.gamma)->required();
        sub->add_option("--betah", p.betah)->required();
        sub->add_option("--gammah", p.gammah)->required();
        sub->add_option("--class", cls, "HG, EHG, EHG_BETA_ONLY, EHG_BETAH_ONLY or EHL; default: first admissible");
    }
    LaplaceExponent exponent() const
    {
        return cls.empty() ? LaplaceExponent(p) : LaplaceExponent(p, class_tag_from_string(cls));
    }
    json config() const
    {
        json j = p;
        j["class"] = to_string(exponent().cls);
        return j;
    }
};

void add_grid(CLI::App* sub, const std::string& name, std::vector<double>& g, const std::string& what)
{
    sub->add_option(name, g, what + ": lo hi n")->expected(3);
}

std::uint64_t resolve_seed(std::uint64_t flag)
{
    if (const char* s = std::getenv("LEVY_HG_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (!*s || *end) throw CLI::ValidationError("LEVY_HG_SEED", "not an unsigned integer");
        return v;
    }
    return flag;
}

json estimate_json(const EstimateWithCI& e)
{
    return {{"mean", e.mean}, {"std_error", e.std_error}, {"ci_lo", e.lo()}, {"ci_hi", e.hi()},
            {"n_effective", e.n_effective}};
}

json sim_config_json(const SimConfig& c)
{
    return {{"alpha", c.sp.alpha}, {"rho", c.sp.rho},           {"dt", c.dt},
            {"horizon", c.horizon}, {"eps_hit", c.eps_hit},     {"n_paths", c.n_paths},
            {"seed", c.seed},       {"threads", c.threads},     {"rel_step", c.rel_step},
            {"max_steps", c.max_steps}, {"tail_threshold", c.tail_threshold}};
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Hypergeometric Levy processes: exponents, densities, exponential functionals, stable laws",
                 "levy_hg"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--output", common.output, "write the table here; the summary goes to stdout");
    app.add_option("--threads", common.threads)->check(CLI::PositiveNumber);
    app.add_option("--seed", common.seed, "overridden by LEVY_HG_SEED");
    Emitter emit{out, common};
    std::function<void()> action;

    // classify
    ParamOpts cp;
    auto* classify_cmd = app.add_subcommand("classify", "admissible classes and large-time regime");
    cp.add(classify_cmd);
    classify_cmd->callback([&] {
        action = [&] {
            Classification c = classify(cp.p);
            std::vector<std::string> names;
            for (auto t : c.classes) names.push_back(to_string(t));
            if (common.format == "csv") {
                std::string joined;
                for (auto& n : names) joined += (joined.empty() ? "" : ";") + n;
                out << "classes,regime\n" << joined << "," << to_string(c.regime) << "\n";
                return;
            }
            json doc = {{"command", "classify"}, {"config", json(cp.p)}, {"classes", names},
                        {"regime", to_string(c.regime)}};
            out << doc.dump(2) << "\n";
        };
    });

    // psi
    ParamOpts pp;
    std::vector<double> psi_theta, psi_z;
    auto* psi_cmd = app.add_subcommand("psi", "Laplace exponent at real z or at i theta");
    pp.add(psi_cmd);
    add_grid(psi_cmd, "--theta-grid", psi_theta, "evaluate at i theta");
    psi_cmd->add_option("--z", psi_z, "real points");
    psi_cmd->callback([&] {
        action = [&] {
            LaplaceExponent le = pp.exponent();
            Table t{{"z_re", "z_im", "psi_re", "psi_im"}, {}};
            for (double z : psi_z) {
                cplx v = le(cplx(z, 0));
                t.rows.push_back({z, 0, v.real(), v.imag()});
            }
            for (double th : linspace(psi_theta.empty() ? std::vector<double>{-10, 10, 21} : psi_theta)) {
                if (!psi_z.empty() && psi_theta.empty()) break;
                cplx v = le(cplx(0, th));
                t.rows.push_back({0, th, v.real(), v.imag()});
            }
            emit("psi", pp.config(), t);
        };
    });

    // whf
    ParamOpts wp;
    int check_grid = 0;
    auto* whf_cmd = app.add_subcommand("whf", "Wiener-Hopf factors and the factorisation residual");
    wp.add(whf_cmd);
    whf_cmd->add_option("--check-grid", check_grid, "number of theta points in [-50, 50]")->check(CLI::NonNegativeNumber);
    whf_cmd->callback([&] {
        action = [&] {
            LaplaceExponent le = wp.exponent();
            WhFactors f = wh_factors(le);
            Table t{{"theta", "psi_re", "psi_im", "residual"}, {}};
            double worst = 0;
            for (int k = 0; k < check_grid; ++k) {
                double th = check_grid == 1 ? 0.0 : -50 + 100.0 * k / (check_grid - 1);
                cplx z(0, th), psi = le(z);
                double r = std::abs(psi + f.ascending(-z) * f.descending(z)) / (1 + std::abs(psi));
                worst = std::isnan(r) ? r : std::max(worst, r);
                t.rows.push_back({th, psi.real(), psi.imag(), r});
            }
            json cfg = wp.config();
            cfg["check_grid"] = check_grid;
            emit("whf", cfg, t,
                 {{"ascending", f.ascending.to_string()},
                  {"descending", f.descending.to_string()},
                  {"killing_rate", killing_rate(le)},
                  {"max_residual", worst},
                  {"tolerance", 1e-10}});
            if (!(worst <= 1e-10)) throw CheckFailed{"whf factorisation residual " + num17(worst) + " > 1e-10"};
        };
    });

    // density
    ParamOpts dp;
    std::vector<double> dens_x, dens_grid;
    int dens_terms = 200000;
    auto* density_cmd = app.add_subcommand("density", "Levy density by the closed form and the residue series");
    dp.add(density_cmd);
    density_cmd->add_option("--x", dens_x);
    add_grid(density_cmd, "--x-grid", dens_grid, "x grid");
    density_cmd->add_option("--terms", dens_terms, "maximum series terms")->check(CLI::PositiveNumber);
    density_cmd->callback([&] {
        action = [&] {
            Table t{{"x", "closed_form", "series", "rel_diff", "terms"}, {}};
            for (double x : points(dens_x, dens_grid, {-2, -1, -0.5, -0.1, 0.1, 0.5, 1, 2})) {
                double cf = density_closed_form(dp.p, x).value;
                auto se = density_series(dp.p, x, dens_terms);
                t.rows.push_back({x, cf, se.value, std::fabs(cf - se.value) / std::fabs(cf),
                                  static_cast<double>(se.terms_used)});
            }
            json cfg = dp.p;
            cfg["terms"] = dens_terms;
            emit("density", cfg, t);
        };
    });

    // mellin / invert share the MellinSpec options
    struct SpecOpts {
        HGParams p;
        bool have_params = false;
        double radial = NAN;
        double delta = 1.0;

        void add(CLI::App* sub)
        {
            auto* b = sub->add_option("--beta", p.beta);
            sub->add_option("--gamma", p.gamma)->needs(b);
            sub->add_option("--betah", p.betah)->needs(b);
            sub->add_option("--gammah", p.gammah)->needs(b);
            sub->add_option("--delta", delta)->check(CLI::PositiveNumber);
            sub->add_option("--radial", radial, "alpha of the radial spec, in (1,2)")->excludes(b);
        }
        MellinSpec make(const CLI::App* sub) const
        {
            if (!std::isnan(radial)) return make_radial_spec(radial);
            if (sub->count("--beta") == 0 || sub->count("--gamma") == 0 || sub->count("--betah") == 0
                || sub->count("--gammah") == 0)
                throw CLI::ValidationError("spec", "give --beta --gamma --betah --gammah or --radial");
            return in_class(p, ClassTag::HG) ? make_hg_spec(p, delta) : make_ehg_spec(p, delta);
        }
        json config(const MellinSpec& s) const
        {
            json j = {{"kind", s.kind == MellinKind::HG ? "HG" : s.kind == MellinKind::EHG ? "EHG" : "Radial"},
                      {"params", s.params},
                      {"delta", s.delta},
                      {"strip", {s.strip_lo, s.strip_hi}},
                      {"norm_constant", s.norm_constant}};
            if (s.kind == MellinKind::Radial) j["alpha"] = s.alpha;
            return j;
        }
    };

    SpecOpts mp;
    std::vector<double> mel_s, mel_grid;
    double mel_im = 0;
    auto* mellin_cmd = app.add_subcommand("mellin", "Mellin transform of the exponential functional");
    mp.add(mellin_cmd);
    mellin_cmd->add_option("--s", mel_s, "real parts");
    add_grid(mellin_cmd, "--s-grid", mel_grid, "real parts");
    mellin_cmd->add_option("--im", mel_im, "common imaginary part");
    mellin_cmd->callback([&] {
        action = [&] {
            MellinSpec s = mp.make(mellin_cmd);
            double lo = s.strip_lo, hi = s.strip_hi;
            std::vector<double> fb;
            for (int k = 1; k <= 9; ++k) fb.push_back(lo + (hi - lo) * k / 10);
            Table t{{"s_re", "s_im", "M_re", "M_im"}, {}};
            for (double re : points(mel_s, mel_grid, fb)) {
                cplx m = mellin(s, cplx(re, mel_im));
                t.rows.push_back({re, mel_im, m.real(), m.imag()});
            }
            emit("mellin", mp.config(s), t);
        };
    });

    SpecOpts ip;
    std::vector<double> inv_grid = {1e-8, 1e8, 40};
    InversionOptions iopt;
    auto* invert_cmd = app.add_subcommand("invert", "density of the exponential functional by Mellin inversion");
    ip.add(invert_cmd);
    invert_cmd->add_option("--u-grid", inv_grid, "lo hi points_per_decade")->expected(3);
    invert_cmd->add_option("--contour", iopt.contour, "Re s of a single contour; default: per-point choice");
    invert_cmd->add_option("--step", iopt.step)->check(CLI::PositiveNumber);
    invert_cmd->add_option("--max-height", iopt.max_height)->check(CLI::PositiveNumber);
    invert_cmd->callback([&] {
        action = [&] {
            MellinSpec s = ip.make(invert_cmd);
            if (!(inv_grid[0] > 0 && inv_grid[1] > inv_grid[0] && inv_grid[2] >= 1))
                throw CLI::ValidationError("--u-grid", "need 0 < lo < hi and points_per_decade >= 1");
            iopt.threads = common.threads;
            auto d = invert_density(s, log_grid(inv_grid[0], inv_grid[1], static_cast<int>(inv_grid[2])), iopt);
            Table t{{"u", "p", "contour"}, {}};
            for (std::size_t k = 0; k < d.grid.size(); ++k) t.rows.push_back({d.grid[k], d.values[k], d.contours[k]});
            json cfg = ip.config(s);
            cfg["u_grid"] = inv_grid;
            cfg["step"] = iopt.step;
            cfg["tail_tol"] = iopt.tail_tol;
            cfg["max_height"] = iopt.max_height;
            cfg["clip_tol"] = iopt.clip_tol;
            if (!std::isnan(iopt.contour)) cfg["contour"] = iopt.contour;
            emit("invert", cfg, t,
                 {{"mass", density_moment(s, d, 1.0)},
                  {"raw_min", d.raw_min},
                  {"truncation_height", d.truncation_height},
                  {"contour_re", d.contour_re}});
        };
    });

    // stable
    auto* stable_cmd = app.add_subcommand("stable", "stable processes via Lamperti-stable transforms");
    stable_cmd->require_subcommand(1);
    double st_alpha = 1.5, st_rho = 0.5, st_x = 0.5;
    std::vector<double> st_grid, st_list;
    std::string st_which = "t0";
    int st_k = 1, st_l = 2;

    auto* st_exp = stable_cmd->add_subcommand("exponent", "characteristic exponent Psi(theta)");
    st_exp->add_option("--alpha", st_alpha)->required();
    st_exp->add_option("--rho", st_rho);
    add_grid(st_exp, "--theta-grid", st_grid, "theta");
    st_exp->callback([&] {
        action = [&] {
            StableParams sp = make_stable(st_alpha, st_rho);
            Table t{{"theta", "Psi_re", "Psi_im"}, {}};
            for (double th : points({}, st_grid, linspace({-5, 5, 11}))) {
                cplx v = stable_char_exponent(sp, th);
                t.rows.push_back({th, v.real(), v.imag()});
            }
            emit("stable exponent", {{"alpha", st_alpha}, {"rho", st_rho}}, t);
        };
    });

    auto* st_mel = stable_cmd->add_subcommand("mellin", "Mellin transforms of T_0 and the occupation time");
    st_mel->add_option("--alpha", st_alpha)->required();
    st_mel->add_option("--rho", st_rho);
    st_mel->add_option("--which", st_which, "t0, radial, censored or ckl")
        ->check(CLI::IsMember({"t0", "radial", "censored", "ckl"}));
    st_mel->add_option("--k", st_k);
    st_mel->add_option("--l", st_l);
    st_mel->add_option("--s", st_list);
    add_grid(st_mel, "--s-grid", st_grid, "s");
    st_mel->callback([&] {
        action = [&] {
            StableParams sp = make_stable(st_alpha, st_rho);
            if (st_which == "ckl" && st_mel->count("--rho") == 0) sp = make_stable(st_alpha, ckl_rho(st_alpha, st_k, st_l));
            std::function<cplx(double)> f;
            double lo = -1 / st_alpha, hi = 2 - 1 / st_alpha;
            if (st_which == "t0") f = [&](double s) { return t0_mellin(st_alpha, s); };
            else if (st_which == "radial") f = [&](double s) { return radial_mellin(st_alpha, s); };
            else {
                lo = sp.rho - 1 / st_alpha;
                if (st_which == "censored") f = [&](double s) { return censored_occupation_mellin(sp, s); };
                else f = [&](double s) { return ckl_closed_form(sp, st_k, st_l, s); };
            }
            std::vector<double> fb;
            for (int k = 1; k <= 9; ++k) fb.push_back(lo + (hi - lo) * k / 10);
            Table t{{"s", "re", "im"}, {}};
            for (double s : points(st_list, st_grid, fb)) {
                cplx v = f(s);
                t.rows.push_back({s, v.real(), v.imag()});
            }
            json cfg = {{"alpha", sp.alpha}, {"rho", sp.rho}, {"which", st_which}, {"strip", {lo, hi}}};
            if (st_which == "ckl") {
                cfg["k"] = st_k;
                cfg["l"] = st_l;
            }
            emit("stable mellin", cfg, t);
        };
    });

    auto* st_exit = stable_cmd->add_subcommand("exit-law", "exit law of [-1,1] for the symmetric process");
    st_exit->add_option("--alpha", st_alpha)->required();
    st_exit->add_option("--x", st_x)->required();
    st_exit->add_option("--y", st_list);
    add_grid(st_exit, "--y-grid", st_grid, "y");
    st_exit->callback([&] {
        action = [&] {
            Table t{{"y", "two_sided", "two_sided_avoid_zero", "abs_exit_before_zero", "abs_exit_before_zero_squared_form"},
                    {}};
            for (double y : points(st_list, st_grid, {-3, -2, -1.5, -1.1, 1.1, 1.5, 2, 3})) {
                double ay = std::fabs(y);
                if (!(ay > 1)) throw DomainError("exit-law: need |y| > 1");
                double before = st_alpha > 1 || st_x != 0 ? exit_before_zero_density(st_x, ay, st_alpha) : NAN;
                double sq = st_alpha > 1 ? exit_before_zero_density_squared_form(st_x, ay, st_alpha) : NAN;
                double avoid = st_alpha > 1 ? two_sided_exit_avoid_zero_density(st_x, y, st_alpha) : NAN;
                t.rows.push_back({y, two_sided_exit_density(st_x, y, st_alpha), avoid, before, sq});
            }
            emit("stable exit-law", {{"alpha", st_alpha}, {"rho", 0.5}, {"x", st_x}}, t);
        };
    });

    auto* st_hit = stable_cmd->add_subcommand("hit-prob", "P_x(T_0 < exit of [-1,1]) for the symmetric process");
    st_hit->add_option("--alpha", st_alpha)->required();
    st_hit->add_option("--x", st_list);
    add_grid(st_hit, "--x-grid", st_grid, "x");
    st_hit->callback([&] {
        action = [&] {
            Table t{{"x", "prob", "prob_squared_form"}, {}};
            for (double x : points(st_list, st_grid, {0.1, 0.3, 0.5, 0.7, 0.9})) {
                double pr = st_alpha > 1 ? hit_zero_before_exit_prob_squared_form(x, st_alpha) : 0.0;
                t.rows.push_back({x, hit_zero_before_exit_prob(x, st_alpha), pr});
            }
            emit("stable hit-prob", {{"alpha", st_alpha}, {"rho", 0.5}}, t);
        };
    });

    // simulate
    SimConfig sim;
    std::string sim_what = "t0", per_path;
    std::vector<double> sim_s = {0.5, 1.2};
    double sim_x = 0.5, sim_t = 1.0, sim_alpha = 1.5, sim_rho = 0.5;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimators for the stable process");
    sim_cmd->add_option("--what", sim_what, "t0, occupation, exit-law or endpoints")
        ->check(CLI::IsMember({"t0", "occupation", "exit-law", "endpoints"}));
    sim_cmd->add_option("--alpha", sim_alpha);
    sim_cmd->add_option("--rho", sim_rho);
    sim_cmd->add_option("--s", sim_s, "moment orders");
    sim_cmd->add_option("--x", sim_x, "start point for exit-law, in (-1,1)");
    sim_cmd->add_option("--t", sim_t, "time for endpoints")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--n-paths", sim.n_paths)->check(CLI::PositiveNumber);
    sim_cmd->add_option("--dt", sim.dt)->check(CLI::PositiveNumber);
    sim_cmd->add_option("--eps-hit", sim.eps_hit)->check(CLI::PositiveNumber);
    sim_cmd->add_option("--rel-step", sim.rel_step)->check(CLI::PositiveNumber);
    sim_cmd->add_option("--horizon", sim.horizon)->check(CLI::PositiveNumber);
    sim_cmd->add_option("--max-steps", sim.max_steps)->check(CLI::PositiveNumber);
    sim_cmd->add_option("--tail-threshold", sim.tail_threshold, "Pareto tail model above this; inf disables");
    sim_cmd->add_option("--per-path", per_path, "CSV of per-path endpoints (endpoints only)");
    sim_cmd->callback([&] {
        action = [&] {
            sim.sp = make_stable(sim_alpha, sim_rho);
            sim.seed = resolve_seed(common.seed);
            sim.threads = common.threads;
            json cfg = sim_config_json(sim);
            cfg["what"] = sim_what;
            if (sim_what == "t0" || sim_what == "occupation") {
                bool occ = sim_what == "occupation";
                auto est = occ ? estimate_occupation_moments(sim_s, sim) : estimate_t0_moments(sim_s, sim);
                cfg["s"] = sim_s;
                Table t{{"s", "estimate", "std_error", "ci_lo", "ci_hi", "coarse", "fine", "correction", "analytic"},
                        {}};
                json ests = json::array(), diags = json::array();
                for (std::size_t k = 0; k < sim_s.size(); ++k) {
                    const auto& e = est[k];
                    double target = occ ? censored_occupation_mellin(sim.sp, sim_s[k]).real()
                                        : (sim.sp.rho == 0.5 ? t0_mellin(sim_alpha, sim_s[k]).real() : NAN);
                    t.rows.push_back({sim_s[k], e.value.mean, e.value.std_error, e.value.lo(), e.value.hi(),
                                      e.coarse.mean, e.fine.mean, e.correction, target});
                    ests.push_back(estimate_json(e.value));
                    diags.push_back({{"s", sim_s[k]},
                                     {"coarse", estimate_json(e.coarse)},
                                     {"fine", estimate_json(e.fine)},
                                     {"order", e.order},
                                     {"correction", e.correction},
                                     {"fine_minus_coarse", e.fine.mean - e.coarse.mean},
                                     {"unabsorbed_fraction", e.unabsorbed_fraction},
                                     {"tail_fraction", e.tail_fraction},
                                     {"tail_index", e.tail_index},
                                     {"mean_steps", e.mean_steps},
                                     {"analytic", target}});
                }
                emit("simulate", cfg, t, {{"estimate", ests}, {"diagnostics", diags}});
            } else if (sim_what == "exit-law") {
                cfg["x"] = sim_x;
                auto e = estimate_exit_law(sim_x, sim);
                auto cs = exit_law_chi_square(e, sim_x, sim_alpha);
                Table t{{"y_lo", "y_hi", "count", "expected"}, {}};
                for (std::size_t k = 0; k < e.counts.size(); ++k)
                    t.rows.push_back({e.bin_edges[k], e.bin_edges[k + 1], static_cast<double>(e.counts[k]),
                                      cs.expected[k]});
                t.rows.push_back({e.bin_edges.back(), INFINITY, static_cast<double>(e.overflow),
                                  cs.expected[e.counts.size()]});
                const auto& p = e.prob_hit_zero;
                emit("simulate", cfg, t,
                     {{"estimate", estimate_json(p.value)},
                      {"analytic", hit_zero_before_exit_prob(sim_x, sim_alpha)},
                      {"diagnostics",
                       {{"coarse", estimate_json(p.coarse)},
                        {"fine", estimate_json(p.fine)},
                        {"order", p.order},
                        {"correction", p.correction},
                        {"hits", e.hits},
                        {"overflow", e.overflow},
                        {"mean_steps", e.mean_steps},
                        {"chi2", cs.statistic},
                        {"dof", cs.dof},
                        {"p_value", cs.p_value}}}});
            } else {
                cfg["t"] = sim_t;
                auto xs = simulate_endpoints(sim, sim_t);
                EstimateWithCI pos = summarize([&] {
                    std::vector<double> v;
                    for (double x : xs) v.push_back(x > 0);
                    return v;
                }());
                Table t{{"path", "x"}, {}};
                if (!per_path.empty()) {
                    std::ofstream f(per_path, std::ios::binary);
                    if (!f) throw DomainError("cannot open " + per_path);
                    for (std::size_t k = 0; k < xs.size(); ++k) t.rows.push_back({static_cast<double>(k), xs[k]});
                    write_csv(f, t);
                    t.rows.clear();
                }
                std::vector<double> cosv;
                for (double x : xs) cosv.push_back(std::cos(x));
                cplx target = std::exp(-stable_char_exponent(sim.sp, 1.0) * sim_t);
                json summary = {{"estimate", estimate_json(pos)},
                                {"diagnostics",
                                 {{"what", "P(X_t > 0)"},
                                  {"analytic", sim_rho},
                                  {"re_char_fn_at_1", estimate_json(summarize(cosv))},
                                  {"re_char_fn_at_1_analytic", target.real()}}}};
                if (!per_path.empty()) summary["artifacts"] = json::array({per_path});
                EstimateWithCI cf = summarize(cosv);
                Table row{{"estimate", "std_error", "ci_lo", "ci_hi", "analytic", "re_char_fn_at_1",
                           "re_char_fn_at_1_analytic"},
                          {{pos.mean, pos.std_error, pos.lo(), pos.hi(), sim_rho, cf.mean, target.real()}}};
                emit("simulate", cfg, row, summary);
            }
        };
    });

    // verify
    bool quick = false;
    std::vector<int> only;
    auto* verify_cmd = app.add_subcommand("verify", "acceptance suite; exit 0 iff every check passes");
    verify_cmd->add_flag("--quick", quick, "smaller draw and path counts");
    verify_cmd->add_option("--only", only, "criterion numbers")->check(CLI::Range(1, 10));
    verify_cmd->callback([&] {
        action = [&] {
            AcceptanceOptions opt;
            opt.quick = quick;
            opt.threads = common.threads;
            opt.only = only;
            if (std::getenv("LEVY_HG_SEED") || app.count("--seed")) opt.seed = resolve_seed(common.seed);
            std::ostringstream lines;
            auto res = run_acceptance(opt, common.format == "json" ? lines : out);
            std::vector<std::string> failed;
            for (auto& r : res)
                if (!r.pass) failed.push_back(std::to_string(r.id) + " " + r.name);
            if (common.format == "json") {
                json checks = json::array();
                for (auto& r : res)
                    checks.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail},
                                      {"seconds", r.seconds}});
                json doc = {{"command", "verify"},
                            {"config", {{"quick", quick}, {"seed", opt.seed}, {"threads", opt.threads}}},
                            {"checks", checks},
                            {"log", lines.str()}};
                out << doc.dump(2) << "\n";
            }
            if (!failed.empty()) {
                std::string names;
                for (auto& f : failed) names += (names.empty() ? "" : "; ") + f;
                throw CheckFailed{names};
            }
        };
    });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    // verify prints text lines by default
    if (verify_cmd->parsed() && app.count("--format") == 0) common.format = "text";
    if (common.format == "text" && !verify_cmd->parsed()) {
        err << "usage error: --format text is only for verify\n";
        return 2;
    }
    try {
        if (action) action();
    } catch (const CheckFailed& f) {
        err << "check failed: " << f.name << "\n";
        return 1;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << "\n";
        json doc = {{"error", e.kind()}, {"message", e.what()}};
        err << doc.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace hyperlevy
