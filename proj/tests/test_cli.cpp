#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "config_io.hpp"
#include "report_io.hpp"
#include "svg.hpp"

using namespace cheese;
using namespace cheese::tools;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "swisscheese");
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& s : args) argv.push_back(s.c_str());
    return run_cli(int(argv.size()), argv.data());
}

fs::path make_temp_dir() {
    std::string tmpl = (fs::temp_directory_path() / "cheese-cli-XXXXXX").string();
    REQUIRE(::mkdtemp(tmpl.data()) != nullptr);
    return fs::path(tmpl);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::size_t count_of(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t at = hay.find(needle); at != std::string::npos;
         at = hay.find(needle, at + needle.size()))
        ++n;
    return n;
}

} // namespace

TEST_CASE("complex literals") {
    auto is = [](Complex got, double re, double im) {
        CHECK(got.real() == doctest::Approx(re));
        CHECK(got.imag() == doctest::Approx(im));
    };
    is(parse_complex("0"), 0.0, 0.0);
    is(parse_complex("i"), 0.0, 1.0);
    is(parse_complex("-i"), 0.0, -1.0);
    is(parse_complex("+i"), 0.0, 1.0);
    is(parse_complex("2i"), 0.0, 2.0);
    is(parse_complex("-1.5"), -1.5, 0.0);
    is(parse_complex("3-4i"), 3.0, -4.0);
    is(parse_complex("1+2i"), 1.0, 2.0);
    is(parse_complex(" 1 + 2 i "), 1.0, 2.0);
    is(parse_complex("0.5I"), 0.0, 0.5);
    is(parse_complex("1e-3-2.5e+2i"), 1e-3, -250.0);

    for (const char* bad : {"", "1+", "2+3j", "1i2", "++i", "1..2"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_complex(bad), IoError);
    }
}

TEST_CASE("hex float tokens round trip bitwise") {
    for (double v : {0.0, 1.0, 0.1, -3.141592653589793, 1e-300, 6.02e23,
                     0.03125, -2.0 / 3.0}) {
        CAPTURE(v);
        CHECK(parse_hexf(hexf(v)) == v);
    }
    CHECK(hexf(0.1) == "0x1.999999999999ap-4");
    for (const char* bad : {"", "xyz", "0x1.8p1junk", "1.5 "}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_hexf(bad), IoError);
    }
}

TEST_CASE("config text round trips byte for byte") {
    CheeseConfig cfg = assemble_cheese(4.0 * M_PI, 8, 2, stub_provider(3), 3);
    const std::string text = format_config(cfg);
    CheeseConfig back = parse_config(text);
    CHECK(format_config(back) == text);

    CHECK(back.L == cfg.L);
    CHECK(back.C == cfg.C);
    CHECK(back.C0 == cfg.C0);
    CHECK(back.seed == cfg.seed);
    CHECK(back.transplants.size() == cfg.transplants.size());
    CHECK(back.deletions.size() == cfg.deletions.size());
    CHECK(back.ledger.combined_integral == cfg.ledger.combined_integral);
    if (!cfg.deletions.empty()) {
        CHECK(back.deletions[0].disc.center == cfg.deletions[0].disc.center);
        CHECK(back.deletions[0].origin == cfg.deletions[0].origin);
    }

    CHECK_THROWS_AS(parse_config("not-a-config 1\n"), IoError);
    const std::string truncated = text.substr(0, text.rfind("end"));
    CHECK_THROWS_AS(parse_config(truncated), IoError);
}

TEST_CASE("report text round trips with awkward strings") {
    ReportFile rep;
    rep.suite = "demo";
    rep.params = "tricky \"quote\" back\\slash\nnewline";
    CertReport a;
    a.id = "demo.first";
    a.params = "n=3";
    a.measured = 0.25;
    a.bound = 1.0;
    a.margin = 0.75;
    a.samples = "12 points";
    a.pass = true;
    a.notes = "plain";
    CertReport b = a;
    b.id = "demo.second";
    b.pass = false;
    b.margin = -0.5;
    b.notes = "says \"no\" \\ twice\nand wraps";
    rep.rows = {a, b};
    REQUIRE(rep.failures() == 1);

    const std::string text = format_report(rep);
    ReportFile back = parse_report(text);
    CHECK(format_report(back) == text);
    CHECK(back.suite == rep.suite);
    CHECK(back.params == rep.params);
    REQUIRE(back.rows.size() == 2);
    CHECK(back.rows[0].measured == 0.25);
    CHECK(back.rows[1].notes == b.notes);
    CHECK(back.rows[1].pass == false);
    CHECK(back.failures() == 1);

    // the summary line must agree with the rows it summarizes
    std::string tampered = text;
    const std::string good = "summary pass 1 fail 1";
    const auto at = tampered.find(good);
    REQUIRE(at != std::string::npos);
    tampered.replace(at, good.size(), "summary pass 2 fail 0");
    CHECK_THROWS_AS(parse_report(tampered), IoError);
}

TEST_CASE("svg rendering is deterministic and window-clipped") {
    BuildCaps caps;
    caps.n_cap = 4;
    CheeseConfig cfg = build_regular_cheese(512.0, 1, caps);

    const std::string svg = render_svg(cfg, std::nullopt);
    CHECK(svg.rfind("<svg ", 0) == 0);
    CHECK(count_of(svg, "<rect") == 1);
    CHECK(count_of(svg, "<circle") == 1024); // one materialized level, 4*2^8 discs
    CHECK(count_of(svg, "#4682b4") == 1024);
    CHECK(count_of(svg, "#b22222") == 0);
    CHECK(render_svg(cfg, std::nullopt) == svg);

    const std::string zoomed = render_svg(cfg, RenderWindow{2.0, 2.0, 0.1});
    CHECK(count_of(zoomed, "<circle") == 0);
    CHECK(count_of(zoomed, "<rect") == 1);

    CheeseConfig two = assemble_cheese(4.0 * M_PI, 4, 1, stub_provider(1), 1);
    const std::string both = render_svg(two, std::nullopt);
    CHECK(count_of(both, "#b22222") == 3); // stub provider: three discs per level
}

TEST_CASE("command line exit codes") {
    const fs::path dir = make_temp_dir();
    const std::string cfgp = (dir / "cheese.cfg").string();
    const std::string svgp = (dir / "cheese.svg").string();

    CHECK(run({"build", "--L", "8", "--levels", "0", "--out", cfgp}) == 0);
    REQUIRE(fs::exists(cfgp));

    CHECK(run({"verify", "--config", cfgp, "--suite", "budget", "--out",
               (dir / "budget.rep").string()}) == 0);
    CHECK(run({"verify", "--suite", "budget"}) == 1);   // needs --config
    CHECK(run({"verify", "--suite", "no-such-suite"}) == 1);

    CHECK(run({"witness", "--config", cfgp, "--z0", "0", "--B", "0.9"}) == 0);
    CHECK(run({"witness", "--config", cfgp, "--z0", "1+2j", "--B", "0.9"}) == 1);
    CHECK(run({"witness", "--config", cfgp, "--z0", "0.999999+0.999999i", "--B",
               "0.999998+0.999998i", "--cap", "100"}) == 4);
    CHECK(run({"witness", "--config", (dir / "missing.cfg").string(), "--z0",
               "0"}) == 1);

    CheeseConfig holed = read_config(cfgp);
    holed.deletions.push_back(
        {{{0.0, 0.0}, 0.05}, Provenance{Provenance::Layer::Provider, 1, 0}});
    const std::string holedp = (dir / "holed.cfg").string();
    write_config(holed, holedp);
    CHECK(run({"witness", "--config", holedp, "--z0", "0", "--B", "0.9"}) == 2);

    CHECK(run({"render", "--config", cfgp, "--out", svgp}) == 0);
    CHECK(slurp(svgp).rfind("<svg ", 0) == 0);
    CHECK(run({"render", "--config", cfgp, "--out", svgp, "--zoom", "bogus"}) == 1);

    CHECK(run({"build", "--no-such-flag"}) == 1);
    CHECK(run({}) == 1);       // a subcommand is required
    CHECK(run({"--help"}) == 0);

    fs::remove_all(dir);
}
