// Command-line front end: tabulate the correlation kernel, solve for the
// jump-measure tail by any of three methods, run the Brownian simulator,
// execute the verification suite, and emit plots.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxproc/brownian.hpp"
#include "maxproc/correlation.hpp"
#include "maxproc/detect.hpp"
#include "maxproc/errors.hpp"
#include "maxproc/estimators.hpp"
#include "maxproc/gap_density.hpp"
#include "maxproc/grid_function.hpp"
#include "maxproc/grid_io.hpp"
#include "maxproc/kummer.hpp"
#include "maxproc/laplace.hpp"
#include "maxproc/levy_tail.hpp"
#include "maxproc/report.hpp"
#include "maxproc/svg.hpp"
#include "maxproc/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitVerifyFailed = 3;
constexpr int kExitIo = 4;

void write_json(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw maxproc::Error("cannot open " + path);
    out << j.dump(2) << "\n";
    if (!out) throw maxproc::Error("write failed for " + path);
}

std::vector<double> parse_theta_list(const std::string& s) {
    std::vector<double> out;
    std::string cur;
    auto push = [&out](const std::string& tok) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw maxproc::InvalidParams("bad theta value: " + tok);
        }
        if (used != tok.size()) throw maxproc::InvalidParams("bad theta value: " + tok);
        out.push_back(v);
    };
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) push(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) push(cur);
    if (out.empty()) throw maxproc::InvalidParams("empty theta list");
    return out;
}

struct CommonOpts {
    double a = 1.0;
    double b = 1.0;
    double dx = 1.0 / 400.0;
    double r_max = 8.0;
    double dt = 1.0 / 512.0;
    double horizon = 100.0;
    int paths = 60;
    std::uint64_t seed = 8211;
    std::string method = "all";
    std::string profile = "fast";
    std::string out;
    std::string thetas = "0.5,1,2,5";
    std::string gaps_csv;
    std::string target = "G1";
};

int cmd_tabulate_h(const CommonOpts& o) {
    const maxproc::ProcessParams p{o.a, o.b};
    maxproc::validate(p);
    if (!(o.dx > 0.0) || !(o.r_max > o.dx)) throw maxproc::InvalidParams("need 0 < dx < rmax");
    const auto n = static_cast<std::size_t>(std::llround(o.r_max / o.dx)) + 1;
    maxproc::GridFunction g = maxproc::make_grid(o.dx, n);
    for (std::size_t k = 0; k < n; ++k) g.values[k] = maxproc::correlation_kernel(p, g.x(k));
    maxproc::write_grid_csv(g, o.out, "h");
    return kExitOk;
}

maxproc::LevyTail solve_one(const std::string& method, double a, double dx, double r_max) {
    if (method == "series") return maxproc::levy_tail_series(a, dx, r_max);
    if (method == "volterra") return maxproc::levy_tail_volterra_abel(a, dx, r_max);
    if (method == "recursion")
        return maxproc::levy_tail_recursion(maxproc::ProcessParams{a, a}, dx, r_max);
    throw maxproc::InvalidParams("unknown method: " + method);
}

int cmd_solve_g(const CommonOpts& o) {
    if (!(o.a > 0.0)) throw maxproc::InvalidParams("a must be positive");
    nlohmann::json meta;
    meta["a"] = o.a;
    meta["dx"] = o.dx;
    meta["r_max"] = o.r_max;

    if (o.method != "all") {
        const maxproc::LevyTail t = solve_one(o.method, o.a, o.dx, o.r_max);
        const auto res = maxproc::abel_residual(t);
        double rmax_abs = 0.0;
        for (double r : res) rmax_abs = std::max(rmax_abs, std::abs(r));

        std::ofstream out(o.out);
        if (!out) throw maxproc::Error("cannot open " + o.out);
        out << "r,G\n";
        out.precision(12);
        for (std::size_t k = 0; k < t.grid.size(); ++k) {
            const double r = t.grid.x(k);
            out << r << "," << ((r > 0.0) ? t.value_at(r) : t.grid.values[k]) << "\n";
        }
        if (!out) throw maxproc::Error("write failed for " + o.out);

        meta["method"] = o.method;
        meta["n"] = t.grid.size();
        meta["max_abel_residual"] = rmax_abs;
        meta["singular_coeff"] = t.grid.singular_coeff;
        write_json(meta, maxproc::meta_path_for(o.out));
        return kExitOk;
    }

    const maxproc::LevyTail ts = solve_one("series", o.a, o.dx, o.r_max);
    const maxproc::LevyTail tv = solve_one("volterra", o.a, o.dx, o.r_max);
    const maxproc::LevyTail tr = solve_one("recursion", o.a, o.dx, o.r_max);
    const auto rs = maxproc::abel_residual(ts);
    const auto rv = maxproc::abel_residual(tv);
    const auto rr = maxproc::abel_residual(tr);

    double d_sv = 0.0, d_sr = 0.0, d_vr = 0.0, res_max = 0.0;
    const auto& grid = ts.grid;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const double r = grid.x(k);
        d_sv = std::max(d_sv, std::abs(ts.value_at(r) - tv.value_at(r)));
        d_sr = std::max(d_sr, std::abs(ts.value_at(r) - tr.value_at(r)));
        d_vr = std::max(d_vr, std::abs(tv.value_at(r) - tr.value_at(r)));
        res_max = std::max({res_max, std::abs(rs[k]), std::abs(rv[k]), std::abs(rr[k])});
    }

    std::ofstream out(o.out);
    if (!out) throw maxproc::Error("cannot open " + o.out);
    out << "r,G_series,G_volterra,G_recursion,residual_series,residual_volterra,residual_recursion\n";
    out.precision(12);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double r = grid.x(k);
        const double gs = (r > 0.0) ? ts.value_at(r) : ts.grid.values[k];
        const double gv = (r > 0.0) ? tv.value_at(r) : tv.grid.values[k];
        const double gr = (r > 0.0) ? tr.value_at(r) : tr.grid.values[k];
        out << r << "," << gs << "," << gv << "," << gr << "," << rs[k] << "," << rv[k] << ","
            << rr[k] << "\n";
    }
    if (!out) throw maxproc::Error("write failed for " + o.out);

    meta["method"] = "all";
    meta["max_discrepancy"] = {{"series_volterra", d_sv},
                               {"series_recursion", d_sr},
                               {"volterra_recursion", d_vr}};
    meta["max_abel_residual"] = res_max;
    meta["pairwise_within_2e-3"] = std::max({d_sv, d_sr, d_vr}) <= 2e-3;

    if (o.a != 1.0) {
        // G_a(r) = G_1(r/a)/sqrt(a)
        const maxproc::LevyTail ref = maxproc::levy_tail_series(1.0, o.dx / o.a, o.r_max / o.a);
        double scal = 0.0;
        for (std::size_t k = 1; k < grid.size(); ++k) {
            const double r = grid.x(k);
            if (r > 5.0 * o.a) break;
            scal = std::max(scal,
                            std::abs(ts.value_at(r) - ref.value_at(r / o.a) / std::sqrt(o.a)));
        }
        meta["scaling_vs_a1_max_err"] = scal;
        meta["scaling_check_pass"] = scal <= 1e-3;
    }
    write_json(meta, maxproc::meta_path_for(o.out));
    return kExitOk;
}

int cmd_gap_density(const CommonOpts& o) {
    const maxproc::ProcessParams p{o.a, o.b};
    maxproc::validate(p);
    const maxproc::GridFunction g = maxproc::gap_density(p, o.dx, o.r_max);
    maxproc::write_grid_csv(g, o.out, "g");
    return kExitOk;
}

int cmd_laplace_check(const CommonOpts& o) {
    if (!(o.a > 0.0)) throw maxproc::InvalidParams("a must be positive");
    const auto thetas = parse_theta_list(o.thetas);
    const maxproc::LevyTail t = maxproc::levy_tail_series(o.a, o.dx, o.r_max);
    const maxproc::TailConstants tc = maxproc::tail_constants();

    nlohmann::json j;
    j["a"] = o.a;
    j["dx"] = o.dx;
    j["r_max"] = o.r_max;
    j["checks"] = nlohmann::json::array();
    bool all = true;
    for (double theta : thetas) {
        const double numeric = maxproc::laplace_numeric(
            t.grid, theta, maxproc::TailCompletion::exponential(tc.rate_for_a(o.a)));
        const double closed = maxproc::levy_tail_laplace(o.a, theta);
        const double rel = std::abs(numeric - closed) / closed;
        const bool pass = rel <= 5e-3;
        all = all && pass;
        j["checks"].push_back({{"theta", theta},
                               {"numeric", numeric},
                               {"closed_form", closed},
                               {"rel_error", rel},
                               {"pass", pass}});
    }
    j["all_pass"] = all;
    if (o.out.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json(j, o.out);
    return all ? kExitOk : kExitVerifyFailed;
}

int cmd_rho(const CommonOpts& o, double tol) {
    const double rho = maxproc::find_rho(tol);
    const double lambda = maxproc::kummer_m(0.5, 1.5, rho);
    nlohmann::json j;
    j["rho"] = rho;
    j["lambda"] = lambda;
    j["tol"] = tol;
    j["tail_amplitude_a1"] = std::sqrt(2.0 * M_PI) / lambda;
    j["tail_rate_a1"] = rho;
    if (o.out.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json(j, o.out);
    return kExitOk;
}

int cmd_simulate(const CommonOpts& o) {
    const maxproc::ProcessParams p{o.a, o.b};
    maxproc::validate(p);
    const maxproc::PathConfig cfg{o.dt, o.horizon, o.seed, o.paths};
    maxproc::validate(cfg);

    const auto samples = maxproc::run_detection(p, cfg);
    const auto inten = maxproc::estimate_intensity(samples);
    const double c_ref = maxproc::intensity(p);

    const double g_dx = p.b / 400.0;
    const maxproc::GridFunction g = maxproc::gap_density(p, g_dx, 12.0 * (p.a + p.b) / 2.0);
    const auto gs = maxproc::gap_statistics(samples, g);
    const double mean_ref = M_PI * std::sqrt(p.a * p.b);
    const double ks_crit = 1.628 / std::sqrt(static_cast<double>(gs.n_gaps));

    const double bin_w = p.b / 4.0;
    const auto pc = maxproc::estimate_pair_correlation(samples, bin_w, 2.0 * (p.a + p.b) + p.b);

    auto entry = [](double value, double se, double target, bool pass) {
        return nlohmann::json{{"value", value}, {"stderr", se}, {"target", target}, {"pass", pass}};
    };

    nlohmann::json j;
    j["config"] = {{"a", p.a},       {"b", p.b},           {"dt", cfg.dt},
                   {"horizon", cfg.horizon}, {"paths", cfg.n_paths}, {"seed", cfg.seed}};
    j["intensity"] = entry(inten.mean, inten.stderr_, c_ref,
                           std::abs(inten.mean - c_ref) <= 3.0 * inten.stderr_ + 0.02 * c_ref);
    j["mean_gap"] = entry(gs.mean.mean, gs.mean.stderr_, mean_ref,
                          std::abs(gs.mean.mean - mean_ref) <=
                              3.0 * gs.mean.stderr_ + 0.02 * mean_ref);
    j["lag1_corr"] =
        entry(gs.lag1_corr, gs.lag1_se, 0.0, std::abs(gs.lag1_corr) <= 3.0 * gs.lag1_se);
    j["ks_distance"] = entry(gs.ks_distance, 0.0, 0.0, gs.ks_distance <= ks_crit);
    j["ks_critical_1pct"] = ks_crit;
    j["n_gaps"] = gs.n_gaps;

    j["pair_correlation"] = nlohmann::json::array();
    for (std::size_t k = 0; k < pc.centers.size(); ++k) {
        const double ref = maxproc::correlation_kernel(p, pc.centers[k]);
        nlohmann::json e = entry(pc.h_hat[k], pc.h_se[k], ref,
                                 std::abs(pc.h_hat[k] - ref) <= 3.0 * pc.h_se[k] + 0.02 * ref);
        e["r"] = pc.centers[k];
        j["pair_correlation"].push_back(e);
    }
    j["min_pair_distance"] = pc.min_distance;

    if (!o.gaps_csv.empty()) {
        std::ofstream gout(o.gaps_csv);
        if (!gout) throw maxproc::Error("cannot open " + o.gaps_csv);
        gout << "gap\n";
        gout.precision(12);
        for (const auto& s : samples)
            for (std::size_t i = 0; i + 1 < s.times.size(); ++i)
                gout << s.times[i + 1] - s.times[i] << "\n";
        if (!gout) throw maxproc::Error("write failed for " + o.gaps_csv);
    }

    if (o.out.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json(j, o.out);
    return kExitOk;
}

int cmd_verify(const CommonOpts& o) {
    if (o.profile != "fast" && o.profile != "full")
        throw maxproc::InvalidParams("profile must be fast or full");
    const maxproc::VerificationReport rep = maxproc::verify::run_verification(o.profile, o.seed);
    if (o.out.empty())
        std::cout << rep.to_json().dump(2) << "\n";
    else
        write_json(rep.to_json(), o.out);
    for (const auto& c : rep.checks)
        std::cerr << "[" << c.id << "] " << c.name << ": " << (c.pass ? "pass" : "FAIL") << "\n";
    for (const auto& [stage, seconds] : rep.timings)
        std::cerr << "[timing] " << stage << ": " << seconds << " s\n";
    if (!rep.all_pass()) {
        const auto* f = rep.first_failure();
        std::cerr << "verification failed at [" << f->id << "] " << f->name << "\n";
        return kExitVerifyFailed;
    }
    return kExitOk;
}

int cmd_plot(const CommonOpts& o) {
    using maxproc::SvgSeries;
    std::vector<SvgSeries> series;
    std::string title, xlabel = "r", ylabel;

    if (o.target == "G1" || o.target == "lnG1") {
        const maxproc::LevyTail t = maxproc::levy_tail_series(1.0, 1.0 / 400.0, 8.0);
        SvgSeries s;
        for (double r = 0.0125; r <= 5.0 + 1e-9; r += 0.0125) {
            const double v = t.value_at(r);
            s.points.push_back({r, o.target == "G1" ? v : std::log(v)});
        }
        if (o.target == "G1") {
            title = "Jump-measure tail G_1";
            ylabel = "G_1(r)";
            s.label = "G_1";
            series.push_back(std::move(s));
        } else {
            title = "ln G_1 and its exponential asymptote";
            ylabel = "ln G_1(r)";
            s.label = "ln G_1";
            series.push_back(std::move(s));
            const maxproc::TailConstants tc = maxproc::tail_constants();
            SvgSeries asym;
            asym.dashed = true;
            asym.color = "#c0392b";
            asym.label = "-rho r + ln(sqrt(2 pi)/lambda)";
            for (double r : {0.0, 5.0})
                asym.points.push_back({r, -tc.rho * r + std::log(std::sqrt(2.0 * M_PI) / tc.lambda)});
            series.push_back(std::move(asym));
        }
    } else if (o.target == "h") {
        const maxproc::ProcessParams p{o.a, o.b};
        maxproc::validate(p);
        title = "Correlation kernel h, a=" + std::to_string(o.a) + " b=" + std::to_string(o.b);
        ylabel = "h(r)";
        SvgSeries s;
        s.label = "h";
        const double hi = 2.0 * (p.a + p.b);
        for (double r = 0.0; r <= hi + 1e-9; r += hi / 600.0)
            s.points.push_back({r, maxproc::correlation_kernel(p, r)});
        series.push_back(std::move(s));
    } else if (o.target == "gap-density") {
        const maxproc::ProcessParams p{o.a, o.b};
        maxproc::validate(p);
        title = "Spacing density, a=" + std::to_string(o.a) + " b=" + std::to_string(o.b);
        ylabel = "g(r)";
        const maxproc::GridFunction g = maxproc::gap_density(p, o.dx, o.r_max);
        SvgSeries s;
        s.label = "g";
        for (std::size_t k = 0; k < g.size(); k += 4) s.points.push_back({g.x(k), g.values[k]});
        series.push_back(std::move(s));
    } else if (o.target == "pair-corr-overlay") {
        const maxproc::ProcessParams p{o.a, o.b};
        maxproc::validate(p);
        const maxproc::PathConfig cfg{o.dt, o.horizon, o.seed, o.paths};
        const auto samples = maxproc::run_detection(p, cfg);
        const auto pc = maxproc::estimate_pair_correlation(samples, p.b / 4.0,
                                                           2.0 * (p.a + p.b) + p.b);
        title = "Pair correlation: simulation vs kernel";
        ylabel = "h(r)";
        SvgSeries mc;
        mc.color = "#27813c";
        mc.label = "simulation";
        for (std::size_t k = 0; k < pc.centers.size(); ++k)
            mc.points.push_back({pc.centers[k], pc.h_hat[k]});
        series.push_back(std::move(mc));
        SvgSeries s;
        s.label = "kernel";
        s.dashed = true;
        const double hi = 2.0 * (p.a + p.b) + p.b;
        for (double r = 0.0; r <= hi + 1e-9; r += hi / 600.0)
            s.points.push_back({r, maxproc::correlation_kernel(p, r)});
        series.push_back(std::move(s));
    } else {
        throw maxproc::InvalidParams("unknown plot target: " + o.target);
    }

    maxproc::write_svg_plot(o.out, title, xlabel, ylabel, series);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "maxproc: analytics and Monte Carlo verification for the point process of\n"
        "Brownian local maxima with left reach a and right reach b"};
    app.set_config("--config", "", "config file before the subcommand, [subcommand] sections; flags take precedence");
    app.require_subcommand(1);

    CommonOpts o;
    double rho_tol = 1e-10;

    auto add_grid = [&](CLI::App* c, bool with_b) {
        c->add_option("--a", o.a, "left reach a")->capture_default_str();
        if (with_b) c->add_option("--b", o.b, "right reach b")->capture_default_str();
        c->add_option("--dx", o.dx, "grid step (default a/400, or b/400 when b applies)");
        c->add_option("--rmax", o.r_max, "grid window (default 8a, or 4(a+b))");
    };
    auto add_mc = [&](CLI::App* c) {
        c->add_option("--dt", o.dt, "time step")->capture_default_str();
        c->add_option("--horizon", o.horizon, "one-sided path length")->capture_default_str();
        c->add_option("--paths", o.paths, "number of paths")->capture_default_str();
        c->add_option("--seed", o.seed, "base seed")->capture_default_str();
    };

    auto* tab = app.add_subcommand("tabulate-h", "write the correlation kernel to CSV");
    add_grid(tab, true);
    tab->add_option("--out", o.out, "output CSV")->required();

    auto* slv = app.add_subcommand("solve-g", "solve for the jump-measure tail G_a");
    add_grid(slv, false);
    slv->add_option("--method", o.method, "series|volterra|recursion|all")->capture_default_str();
    slv->add_option("--out", o.out, "output CSV")->required();

    auto* gap = app.add_subcommand("gap-density", "write the spacing density to CSV");
    add_grid(gap, true);
    gap->add_option("--out", o.out, "output CSV")->required();

    auto* lap = app.add_subcommand("laplace-check",
                                   "numeric Laplace transform of G_a vs the closed form");
    add_grid(lap, false);
    lap->add_option("--thetas", o.thetas, "comma-separated theta values")->capture_default_str();
    lap->add_option("--out", o.out, "output JSON (stdout if omitted)");

    auto* rho = app.add_subcommand("rho", "decay root and tail constants");
    rho->add_option("--tol", rho_tol, "bisection tolerance")->capture_default_str();
    rho->add_option("--out", o.out, "output JSON (stdout if omitted)");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo run with estimator report");
    sim->add_option("--a", o.a, "left reach a")->capture_default_str();
    sim->add_option("--b", o.b, "right reach b")->capture_default_str();
    add_mc(sim);
    sim->add_option("--out", o.out, "output JSON (stdout if omitted)");
    sim->add_option("--gaps-csv", o.gaps_csv, "optional raw spacing dump");

    auto* ver = app.add_subcommand("verify", "run the verification suite");
    ver->add_option("--profile", o.profile, "fast|full")->capture_default_str();
    ver->add_option("--seed", o.seed, "base seed")->capture_default_str();
    ver->add_option("--out", o.out, "output JSON (stdout if omitted)");

    auto* plt = app.add_subcommand("plot", "emit an SVG figure");
    plt->add_option("--target", o.target, "G1|lnG1|h|gap-density|pair-corr-overlay")
        ->capture_default_str();
    add_grid(plt, true);
    add_mc(plt);
    plt->add_option("--out", o.out, "output SVG")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    // scale-aware grid defaults when the flags were not given
    for (CLI::App* c : {tab, gap}) {
        if (c->parsed()) {
            if (c->count("--dx") == 0) o.dx = o.b / 400.0;
            if (c->count("--rmax") == 0) o.r_max = 4.0 * (o.a + o.b);
        }
    }
    for (CLI::App* c : {slv, lap}) {
        if (c->parsed()) {
            if (c->count("--dx") == 0) o.dx = o.a / 400.0;
            if (c->count("--rmax") == 0) o.r_max = 8.0 * o.a;
        }
    }
    if (plt->parsed() && (o.target == "h" || o.target == "gap-density")) {
        if (plt->count("--dx") == 0) o.dx = o.b / 400.0;
        if (plt->count("--rmax") == 0) o.r_max = 4.0 * (o.a + o.b);
    }

    try {
        if (tab->parsed()) return cmd_tabulate_h(o);
        if (slv->parsed()) return cmd_solve_g(o);
        if (gap->parsed()) return cmd_gap_density(o);
        if (lap->parsed()) return cmd_laplace_check(o);
        if (rho->parsed()) return cmd_rho(o, rho_tol);
        if (sim->parsed()) return cmd_simulate(o);
        if (ver->parsed()) return cmd_verify(o);
        if (plt->parsed()) return cmd_plot(o);
    } catch (const maxproc::InvalidParams& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const maxproc::DomainError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const maxproc::ResolutionTooCoarse& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const maxproc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
