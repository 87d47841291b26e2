#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "cheese/construction.hpp"
#include "cheese/errors.hpp"
#include "cheese/verify.hpp"
#include "config_io.hpp"
#include "report_io.hpp"
#include "svg.hpp"

namespace cheese::tools {

namespace {

constexpr double kPi = 3.14159265358979323846;

double parse_real(const std::string& token) {
    const char* s = token.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || *end != '\0') throw IoError("bad number '" + token + "'");
    return v;
}

struct NRange {
    int lo = 0;
    int hi = 0;
};

NRange parse_range(const std::string& text) {
    auto dots = text.find("..");
    NRange r;
    try {
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoi(text);
        } else {
            r.lo = std::stoi(text.substr(0, dots));
            r.hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw IoError("bad level range '" + text + "', want e.g. 3..6");
    }
    if (r.lo > r.hi) throw IoError("empty level range '" + text + "'");
    return r;
}

RenderWindow parse_zoom(const std::string& text) {
    std::istringstream in(text);
    std::string part;
    std::vector<double> vals;
    while (std::getline(in, part, ',')) vals.push_back(parse_real(part));
    if (vals.size() != 3 || vals[2] <= 0.0)
        throw IoError("bad zoom '" + text + "', want cx,cy,half with half > 0");
    return RenderWindow{vals[0], vals[1], vals[2]};
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmtc(Complex z) {
    return "(" + fmt(z.real()) + ", " + fmt(z.imag()) + ")";
}

void run_bounds_suite(ReportFile& rep, NRange range, int samples,
                      std::uint64_t seed) {
    for (int n = range.lo; n <= range.hi; ++n) {
        auto p = LevelParams::make(n);
        auto rows = check_h_bounds(p.N, p.delta, samples, seed);
        rep.rows.insert(rep.rows.end(), rows.begin(), rows.end());
    }
}

void run_level_family_suite(ReportFile& rep, NRange range, int samples,
                            std::uint64_t seed, const std::string& filter) {
    for (int n = range.lo; n <= range.hi; ++n) {
        for (auto& row : check_level_family(n, samples, seed)) {
            if (!filter.empty()) {
                const std::string want = "." + filter;
                if (row.id.size() < want.size() ||
                    row.id.compare(row.id.size() - want.size(), want.size(),
                                   want) != 0)
                    continue;
            }
            rep.rows.push_back(std::move(row));
        }
    }
}

void run_convergence_suite(ReportFile& rep, NRange range, int samples,
                           std::uint64_t seed) {
    rep.rows.push_back(check_convergence(range.lo, range.hi, samples, seed));
}

void run_nonvanishing_suite(ReportFile& rep, NRange range, int samples,
                            std::uint64_t seed) {
    SamplePlan plan;
    plan.region = SamplePlan::Region::Annulus;
    plan.r0 = 0.0;
    plan.r1 = 0.95;
    plan.count = std::min(samples, 100);
    plan.seed = seed;
    for (Complex z : make_samples(plan)) {
        try {
            rep.rows.push_back(check_nonvanishing(range.lo, range.hi, z));
        } catch (const DomainError&) {
            // the sample landed inside a deleted disc; not a point of X
        }
    }
}

void run_residue_suite(ReportFile& rep, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x5eed5eed5eed5eedULL);
    auto uniform = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };
    auto draw_point = [&] {
        // stay clear of the contour so the quadrature side is well posed
        for (;;) {
            Complex p{4.0 * uniform() - 2.0, 4.0 * uniform() - 2.0};
            if (point_to_square_boundary(p, unit_square()) > 5e-2) return p;
        }
    };

    for (int k = 0; k < 100; ++k) {
        PoleSum f, g;
        f.constant = {uniform() - 0.5, uniform() - 0.5};
        std::vector<Complex> placed;
        auto separated_point = [&] {
            for (;;) {
                Complex p = draw_point();
                bool ok = true;
                for (Complex q : placed)
                    if (std::abs(p - q) < 1e-2) ok = false;
                if (ok) {
                    placed.push_back(p);
                    return p;
                }
            }
        };
        for (int i = 0; i < 2; ++i)
            f.terms.push_back({{uniform() * 2.0 - 1.0, uniform() * 2.0 - 1.0},
                               separated_point()});
        g.constant = {uniform() - 0.5, uniform() - 0.5};
        for (int j = 0; j < 2; ++j)
            g.terms.push_back({{uniform() * 2.0 - 1.0, uniform() * 2.0 - 1.0},
                               separated_point()});

        Complex oracle = residue_derivation_value(f, g);
        auto quad = contour_integral_boundary(to_ratexpr(f), to_ratexpr(g), 1e-11);

        CertReport row;
        row.id = "residue.pair" + std::to_string(k);
        row.params = "f " + fmtc(f.terms[0].pole) + " " + fmtc(f.terms[1].pole) +
                     " g " + fmtc(g.terms[0].pole) + " " + fmtc(g.terms[1].pole);
        row.measured = std::abs(quad.value - oracle);
        row.bound = std::max(1e-9, 1e-6 * std::abs(oracle));
        row.margin = row.bound - row.measured;
        row.pass = row.margin >= 0.0 && !std::isnan(row.margin);
        row.samples = std::to_string(quad.panels) + " panels";
        row.notes = "oracle " + fmtc(oracle) + " quadrature " + fmtc(quad.value);
        rep.rows.push_back(std::move(row));
    }

    // plain Cauchy integral as an anchor: d/dz of nothing, just 1/(z-p)
    const Complex p{0.25, -0.3125};
    auto q = integrate_edges(
        [p](Complex z) { return 1.0 / (z - p); }, unit_square(), 1e-12);
    const Complex want{0.0, 2.0 * kPi};
    CertReport row;
    row.id = "residue.cauchy";
    row.params = "pole " + fmtc(p);
    row.measured = std::abs(q.value - want);
    row.bound = 1e-10;
    row.margin = row.bound - row.measured;
    row.pass = row.margin >= 0.0 && !std::isnan(row.margin);
    row.samples = std::to_string(q.panels) + " panels";
    row.notes = "want 2*pi*i, got " + fmtc(q.value);
    rep.rows.push_back(std::move(row));
}

void run_budget_suite(ReportFile& rep, const CheeseConfig& cfg) {
    {
        CertReport row;
        row.id = "budget.retained";
        row.params = "L " + std::to_string(cfg.L);
        row.measured = recompute_boundary_budget(cfg);
        row.bound = cfg.C0;
        row.margin = row.bound - row.measured;
        row.pass = row.margin > 0.0;
        row.samples = std::to_string(cfg.deletions.size()) + " deletions";
        row.notes = "recomputed boundary sum of retained transplant discs";
        rep.rows.push_back(std::move(row));
    }
    {
        double charged = 0.0;
        for (const auto& t : cfg.transplants) charged += t.charged;
        CertReport row;
        row.id = "budget.charged";
        row.params = "L " + std::to_string(cfg.L);
        row.measured = charged;
        row.bound = cfg.C0;
        row.margin = row.bound - row.measured;
        row.pass = row.margin > 0.0;
        row.samples = std::to_string(cfg.transplants.size()) + " hosts";
        row.notes = "summed per-host charges, truncation tails included";
        rep.rows.push_back(std::move(row));
    }
    {
        double worst = 0.0;
        auto rel = [](double a, double b) {
            double scale = std::max({std::abs(a), std::abs(b), 1e-300});
            return std::abs(a - b) / scale;
        };
        worst = std::max(worst, rel(recompute_boundary_budget(cfg),
                                    cfg.ledger.transplant_boundary));
        worst = std::max(worst, rel(recompute_combined_integral(cfg),
                                    cfg.ledger.combined_integral));
        double charged = 0.0;
        for (const auto& t : cfg.transplants) charged += t.charged;
        worst = std::max(worst, rel(charged, cfg.ledger.transplant_charged));
        CertReport row;
        row.id = "budget.ledger-match";
        row.params = "";
        row.measured = worst;
        row.bound = 1e-12;
        row.margin = row.bound - row.measured;
        row.pass = row.margin >= 0.0;
        row.samples = "3 ledger fields";
        row.notes = "relative gap between stored ledger and recomputation";
        rep.rows.push_back(std::move(row));
    }
    {
        double worst_ratio = 0.0;
        int levels_seen = 0;
        for (int n = 1; n <= cfg.n_levels; ++n) {
            double len = 0.0;
            bool any = false;
            for (const auto& d : cfg.deletions)
                if (d.origin.layer == Provenance::Layer::Provider &&
                    d.origin.host == n) {
                    len += 2.0 * kPi * d.disc.radius;
                    any = true;
                }
            if (!any) continue;
            ++levels_seen;
            worst_ratio = std::max(worst_ratio, len / length_budget(n, cfg.C));
        }
        CertReport row;
        row.id = "budget.provider-length";
        row.params = "levels " + std::to_string(cfg.n_levels);
        row.measured = worst_ratio;
        row.bound = 1.0;
        row.margin = row.bound - row.measured;
        row.pass = row.margin > 0.0 || levels_seen == 0;
        row.samples = std::to_string(levels_seen) + " populated levels";
        row.notes = levels_seen == 0 ? "no provider discs"
                                     : "worst level length over its allowance";
        rep.rows.push_back(std::move(row));
    }
}

Complex derivation_pole(const CheeseConfig& cfg) {
    for (const auto& d : cfg.deletions)
        if (d.origin.layer == Provenance::Layer::Provider) return d.disc.center;
    if (!cfg.deletions.empty()) return cfg.deletions.front().disc.center;
    return {2.0, 2.0};
}

void run_derivation_suite(ReportFile& rep, const CheeseConfig& cfg, int density) {
    const Complex p = derivation_pole(cfg);
    RationalExpr f = RationalExpr::identity();
    RationalExpr g = RationalExpr::simple_pole(p, {1.0, 0.0});
    auto rows = check_derivation_bound(f, g, cfg, density);
    rep.rows.insert(rep.rows.end(), rows.begin(), rows.end());
}

bool suite_selected(const std::string& suite, const std::string& name) {
    return suite == "all" || suite == name ||
           suite.rfind(name + ".", 0) == 0;
}

std::string suite_filter(const std::string& suite, const std::string& name) {
    if (suite.rfind(name + ".", 0) == 0) return suite.substr(name.size() + 1);
    return "";
}

int cmd_build(double C, std::int64_t L, int levels, int n_cap,
              std::uint64_t seed, const std::string& out) {
    BuildCaps caps;
    caps.n_cap = n_cap;
    auto provider = levels == 0 ? empty_provider() : stub_provider(seed);
    CheeseConfig cfg = assemble_cheese(C, L, levels, provider, seed, caps);

    std::int64_t materialized = 0;
    for (const auto& t : cfg.transplants)
        if (t.levels_lo <= t.levels_hi) ++materialized;
    std::cout << "hosts " << cfg.transplants.size() << " (materialized "
              << materialized << ")\n";
    std::cout << "deletions " << cfg.deletions.size() << "\n";
    std::cout << "boundary charge " << fmt(cfg.ledger.transplant_charged) << " of C0 "
              << fmt(cfg.C0) << "\n";
    std::cout << "combined integral " << fmt(cfg.ledger.combined_integral)
              << " of C " << fmt(cfg.C) << "\n";
    if (!out.empty()) {
        write_config(cfg, out);
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& config_path, const std::string& suite,
               const std::string& n_text, int samples, std::uint64_t seed,
               int density, const std::string& out) {
    std::optional<CheeseConfig> cfg;
    if (!config_path.empty()) cfg = read_config(config_path);

    ReportFile rep;
    rep.suite = suite;
    rep.params = "samples " + std::to_string(samples) + " seed " +
                 std::to_string(seed) + (n_text.empty() ? "" : " n " + n_text);

    bool ran = false;
    if (suite_selected(suite, "bounds")) {
        run_bounds_suite(rep, n_text.empty() ? NRange{3, 6} : parse_range(n_text),
                         samples, seed);
        ran = true;
    }
    if (suite_selected(suite, "level-family")) {
        run_level_family_suite(rep,
                               n_text.empty() ? NRange{3, 6} : parse_range(n_text),
                               samples, seed, suite_filter(suite, "level-family"));
        ran = true;
    }
    if (suite_selected(suite, "convergence")) {
        run_convergence_suite(rep,
                              n_text.empty() ? NRange{4, 8} : parse_range(n_text),
                              samples, seed);
        ran = true;
    }
    if (suite_selected(suite, "nonvanishing")) {
        run_nonvanishing_suite(rep,
                               n_text.empty() ? NRange{4, 8} : parse_range(n_text),
                               samples, seed);
        ran = true;
    }
    if (suite_selected(suite, "residue-oracle")) {
        run_residue_suite(rep, seed);
        ran = true;
    }
    if (suite_selected(suite, "budget")) {
        if (cfg) {
            run_budget_suite(rep, *cfg);
            ran = true;
        } else if (suite != "all") {
            throw IoError("suite 'budget' needs --config");
        }
    }
    if (suite_selected(suite, "derivation")) {
        if (cfg) {
            run_derivation_suite(rep, *cfg, density);
            ran = true;
        } else if (suite != "all") {
            throw IoError("suite 'derivation' needs --config");
        }
    }
    if (!ran) throw IoError("unknown suite '" + suite + "'");

    if (!out.empty()) {
        write_report(rep, out);
        std::cout << "wrote " << out << ": pass "
                  << (rep.rows.size() - rep.failures()) << " fail "
                  << rep.failures() << "\n";
    } else {
        std::cout << format_report(rep);
    }

    if (rep.failures() == 0) return 0;
    bool only_derivation = true;
    for (const auto& row : rep.rows)
        if (!row.pass && row.id.rfind("derivation.", 0) != 0) only_derivation = false;
    return only_derivation ? 5 : 4;
}

int cmd_render(const std::string& config_path, const std::string& out,
               const std::string& zoom) {
    CheeseConfig cfg = read_config(config_path);
    std::optional<RenderWindow> window;
    if (!zoom.empty()) window = parse_zoom(zoom);
    std::string svg = render_svg(cfg, window);
    std::ofstream f(out, std::ios::binary);
    if (!f) throw IoError("cannot open '" + out + "' for writing");
    f << svg;
    if (!f) throw IoError("write failed for '" + out + "'");
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_witness(const std::string& config_path, const std::string& z0_text,
                const std::vector<std::string>& b_texts, std::int64_t cap) {
    CheeseConfig cfg = read_config(config_path);
    Complex z0 = parse_complex(z0_text);
    std::vector<Complex> B;
    B.reserve(b_texts.size());
    for (const auto& t : b_texts) B.push_back(parse_complex(t));

    WitnessRecord w = regularity_witness(z0, B, cfg, cap);
    std::cout << "host " << w.host.index << " class " << to_string(w.host.cls)
              << " center " << fmtc(w.host.disc().center) << " radius "
              << fmt(w.host.disc().radius) << "\n";
    std::cout << "start level " << fmt(w.start) << " allowance "
              << fmt(w.epsilon) << "\n";
    std::cout << "log lower at z0 " << fmt(w.log_lower_z0) << "\n";
    std::cout << "log upper on B "
              << (w.upper_saturated ? std::string("saturated (below any double)")
                                    : fmt(w.log_upper_B))
              << "\n";
    std::cout << "log gap " << fmt(w.log_gap) << "\n";
    const bool separated = w.log_gap < 0.0;
    std::cout << "separated " << (separated ? "yes" : "no") << "\n";
    return separated ? 0 : 4;
}

} // namespace

Complex parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s.push_back(c);
    if (s.empty()) throw IoError("empty complex literal");
    if (s.back() != 'i' && s.back() != 'I') return {parse_real(s), 0.0};

    s.pop_back();
    // split before the last sign that does not belong to an exponent
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_part = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t);
    };
    if (split == std::string::npos) return {0.0, imag_part(s)};
    return {parse_real(s.substr(0, split)), imag_part(s.substr(split))};
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"swiss cheese construction and certification"};
    app.require_subcommand(1);

    auto* build = app.add_subcommand("build", "assemble a cheese configuration");
    double C = 4.0 * kPi;
    std::int64_t L = 32;
    int levels = 6;
    int n_cap = 9;
    std::uint64_t seed = 1;
    std::string out;
    build->add_option("--C", C, "combined integral budget");
    build->add_option("--L", L, "host discs to enumerate");
    build->add_option("--levels", levels, "provider scale levels (0: none)");
    build->add_option("--n-cap", n_cap, "deepest materialized transplant level");
    build->add_option("--seed", seed, "provider seed");
    build->add_option("--out", out, "config file to write");

    auto* verify = app.add_subcommand("verify", "run certification suites");
    std::string v_config, v_suite = "all", v_n, v_out;
    int v_samples = 4096;
    std::uint64_t v_seed = 1;
    int v_density = 256;
    verify->add_option("--config", v_config, "cheese configuration to check");
    verify->add_option("--suite", v_suite,
                       "bounds | level-family[.<row>] | convergence | "
                       "nonvanishing | residue-oracle | budget | derivation | all");
    verify->add_option("--n", v_n, "level range, e.g. 3..6");
    verify->add_option("--samples", v_samples, "sample count per check");
    verify->add_option("--seed", v_seed, "sampling seed");
    verify->add_option("--density", v_density, "sup norm sampling density");
    verify->add_option("--out", v_out, "report file to write");

    auto* render = app.add_subcommand("render", "draw a configuration as SVG");
    std::string r_config, r_out, r_zoom;
    render->add_option("--config", r_config, "cheese configuration")->required();
    render->add_option("--out", r_out, "SVG file to write")->required();
    render->add_option("--zoom", r_zoom, "viewport cx,cy,half");

    auto* witness = app.add_subcommand("witness", "separate z0 from a finite set");
    std::string w_config, w_z0;
    std::vector<std::string> w_b;
    std::int64_t w_cap = 100000;
    witness->add_option("--config", w_config, "cheese configuration")->required();
    witness->add_option("--z0", w_z0, "point to keep bounded away from zero")
        ->required();
    witness->add_option("--B", w_b, "point to push toward zero (repeatable)");
    witness->add_option("--cap", w_cap, "host enumeration cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (build->parsed()) return cmd_build(C, L, levels, n_cap, seed, out);
        if (verify->parsed())
            return cmd_verify(v_config, v_suite, v_n, v_samples, v_seed, v_density,
                              v_out);
        if (render->parsed()) return cmd_render(r_config, r_out, r_zoom);
        if (witness->parsed()) return cmd_witness(w_config, w_z0, w_b, w_cap);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SearchExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const PoleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace cheese::tools
