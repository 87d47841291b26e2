#include "config_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cheese::tools {

std::string hexf(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

double parse_hexf(const std::string& token) {
    const char* s = token.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || *end != '\0') throw IoError("bad float token '" + token + "'");
    return v;
}

namespace {

std::int64_t parse_int(const std::string& token) {
    const char* s = token.c_str();
    char* end = nullptr;
    long long v = std::strtoll(s, &end, 10);
    if (end == s || *end != '\0') throw IoError("bad integer token '" + token + "'");
    return v;
}

std::uint64_t parse_uint(const std::string& token) {
    const char* s = token.c_str();
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0') throw IoError("bad integer token '" + token + "'");
    return v;
}

DiscClass parse_class(const std::string& token) {
    if (token == "interior") return DiscClass::Interior;
    if (token == "edge") return DiscClass::Edge;
    if (token == "corner") return DiscClass::Corner;
    throw IoError("bad disc class '" + token + "'");
}

Rational parse_rat(const std::string& token) {
    try {
        return parse_rational(token);
    } catch (const DomainError& e) {
        throw IoError(e.what());
    }
}

class Lines {
  public:
    explicit Lines(const std::string& text) : in_(text) {}

    std::vector<std::string> next(const std::string& context) {
        std::string line;
        while (std::getline(in_, line)) {
            std::istringstream ls(line);
            std::vector<std::string> tokens;
            std::string t;
            while (ls >> t) tokens.push_back(t);
            if (!tokens.empty()) return tokens;
        }
        throw IoError("config ended early, expected " + context);
    }

  private:
    std::istringstream in_;
};

void expect(const std::vector<std::string>& tokens, std::size_t i,
            const std::string& word) {
    if (i >= tokens.size() || tokens[i] != word)
        throw IoError("expected '" + word + "' in config line");
}

} // namespace

std::string format_config(const CheeseConfig& cfg) {
    std::ostringstream os;
    os << "swisscheese-config 1\n";
    os << "square " << hexf(cfg.square.center.real()) << " "
       << hexf(cfg.square.center.imag()) << " " << hexf(cfg.square.half_width) << "\n";
    os << "C " << hexf(cfg.C) << "\n";
    os << "C0 " << hexf(cfg.C0) << "\n";
    os << "L " << cfg.L << "\n";
    os << "n-levels " << cfg.n_levels << "\n";
    os << "seed " << cfg.seed << "\n";
    os << "caps " << cfg.caps.n_cap << " " << cfg.caps.disc_cap << " "
       << cfg.caps.scan_cap << "\n";
    os << "ledger " << hexf(cfg.ledger.transplant_charged) << " "
       << hexf(cfg.ledger.transplant_boundary) << " "
       << hexf(cfg.ledger.provider_length) << " "
       << hexf(cfg.ledger.provider_integral) << " "
       << hexf(cfg.ledger.combined_integral) << "\n";
    os << "transplants " << cfg.transplants.size() << "\n";
    for (const auto& t : cfg.transplants) {
        os << "transplant " << t.host.index << " " << to_string(t.host.cls) << " "
           << t.host.rat.x.str() << " " << t.host.rat.y.str() << " "
           << t.host.rat.radius.str() << " eps " << hexf(t.epsilon) << " unit-eps "
           << hexf(t.unit_epsilon) << " start " << hexf(t.start) << " levels "
           << t.levels_lo << " " << t.levels_hi << " retained " << t.retained
           << " discarded " << t.discarded << " realized " << hexf(t.realized)
           << " charged " << hexf(t.charged) << "\n";
    }
    os << "deletions " << cfg.deletions.size() << "\n";
    for (const auto& d : cfg.deletions) {
        os << "deletion "
           << (d.origin.layer == Provenance::Layer::Transplant ? "t" : "p") << " "
           << d.origin.host << " " << d.origin.sub << " "
           << hexf(d.disc.center.real()) << " " << hexf(d.disc.center.imag()) << " "
           << hexf(d.disc.radius) << "\n";
    }
    os << "end\n";
    return os.str();
}

CheeseConfig parse_config(const std::string& text) {
    Lines lines(text);
    auto header = lines.next("header");
    if (header.size() != 2 || header[0] != "swisscheese-config" || header[1] != "1")
        throw IoError("not a swisscheese-config version 1 file");

    CheeseConfig cfg;
    auto sq = lines.next("square");
    expect(sq, 0, "square");
    if (sq.size() != 4) throw IoError("square line needs three numbers");
    cfg.square.center = {parse_hexf(sq[1]), parse_hexf(sq[2])};
    cfg.square.half_width = parse_hexf(sq[3]);

    auto c = lines.next("C");
    expect(c, 0, "C");
    cfg.C = parse_hexf(c.at(1));
    auto c0 = lines.next("C0");
    expect(c0, 0, "C0");
    cfg.C0 = parse_hexf(c0.at(1));
    auto l = lines.next("L");
    expect(l, 0, "L");
    cfg.L = parse_int(l.at(1));
    auto nl = lines.next("n-levels");
    expect(nl, 0, "n-levels");
    cfg.n_levels = static_cast<int>(parse_int(nl.at(1)));
    auto seed = lines.next("seed");
    expect(seed, 0, "seed");
    cfg.seed = parse_uint(seed.at(1));
    auto caps = lines.next("caps");
    expect(caps, 0, "caps");
    if (caps.size() != 4) throw IoError("caps line needs three numbers");
    cfg.caps.n_cap = static_cast<int>(parse_int(caps[1]));
    cfg.caps.disc_cap = parse_int(caps[2]);
    cfg.caps.scan_cap = parse_int(caps[3]);
    auto led = lines.next("ledger");
    expect(led, 0, "ledger");
    if (led.size() != 6) throw IoError("ledger line needs five numbers");
    cfg.ledger.transplant_charged = parse_hexf(led[1]);
    cfg.ledger.transplant_boundary = parse_hexf(led[2]);
    cfg.ledger.provider_length = parse_hexf(led[3]);
    cfg.ledger.provider_integral = parse_hexf(led[4]);
    cfg.ledger.combined_integral = parse_hexf(led[5]);

    auto tc = lines.next("transplants");
    expect(tc, 0, "transplants");
    const std::int64_t tn = parse_int(tc.at(1));
    for (std::int64_t i = 0; i < tn; ++i) {
        auto t = lines.next("transplant row");
        expect(t, 0, "transplant");
        if (t.size() != 23) throw IoError("malformed transplant row");
        TransplantRecord rec;
        rec.host.index = parse_int(t[1]);
        rec.host.cls = parse_class(t[2]);
        rec.host.rat.x = parse_rat(t[3]);
        rec.host.rat.y = parse_rat(t[4]);
        rec.host.rat.radius = parse_rat(t[5]);
        expect(t, 6, "eps");
        rec.epsilon = parse_hexf(t[7]);
        expect(t, 8, "unit-eps");
        rec.unit_epsilon = parse_hexf(t[9]);
        expect(t, 10, "start");
        rec.start = parse_hexf(t[11]);
        expect(t, 12, "levels");
        rec.levels_lo = static_cast<int>(parse_int(t[13]));
        rec.levels_hi = static_cast<int>(parse_int(t[14]));
        expect(t, 15, "retained");
        rec.retained = parse_int(t[16]);
        expect(t, 17, "discarded");
        rec.discarded = parse_int(t[18]);
        expect(t, 19, "realized");
        rec.realized = parse_hexf(t[20]);
        expect(t, 21, "charged");
        rec.charged = parse_hexf(t[22]);
        cfg.transplants.push_back(rec);
    }

    auto dc = lines.next("deletions");
    expect(dc, 0, "deletions");
    const std::int64_t dn = parse_int(dc.at(1));
    for (std::int64_t i = 0; i < dn; ++i) {
        auto d = lines.next("deletion row");
        expect(d, 0, "deletion");
        if (d.size() != 7) throw IoError("malformed deletion row");
        Deletion del;
        del.origin.layer = d[1] == "t" ? Provenance::Layer::Transplant
                                       : Provenance::Layer::Provider;
        if (d[1] != "t" && d[1] != "p") throw IoError("bad deletion layer tag");
        del.origin.host = parse_int(d[2]);
        del.origin.sub = parse_int(d[3]);
        del.disc.center = {parse_hexf(d[4]), parse_hexf(d[5])};
        del.disc.radius = parse_hexf(d[6]);
        cfg.deletions.push_back(del);
    }

    auto endl_ = lines.next("end");
    expect(endl_, 0, "end");
    return cfg;
}

void write_config(const CheeseConfig& cfg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << format_config(cfg);
    if (!out) throw IoError("write failed for '" + path + "'");
}

CheeseConfig read_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace cheese::tools
