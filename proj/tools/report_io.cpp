#include "report_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cheese::tools {

int ReportFile::failures() const {
    int n = 0;
    for (const auto& r : rows)
        if (!r.pass) ++n;
    return n;
}

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

/// Splits a line into tokens; a token opened by '"' runs to the matching
/// unescaped quote and may contain spaces.
std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t') {
            ++i;
            continue;
        }
        std::string tok;
        if (line[i] == '"') {
            ++i;
            bool closed = false;
            while (i < line.size()) {
                char c = line[i++];
                if (c == '\\' && i < line.size()) {
                    char e = line[i++];
                    tok.push_back(e == 'n' ? '\n' : e);
                } else if (c == '"') {
                    closed = true;
                    break;
                } else {
                    tok.push_back(c);
                }
            }
            if (!closed) throw IoError("unterminated quote in report line");
        } else {
            while (i < line.size() && line[i] != ' ' && line[i] != '\t')
                tok.push_back(line[i++]);
        }
        out.push_back(tok);
    }
    return out;
}

std::int64_t parse_count(const std::string& token) {
    const char* s = token.c_str();
    char* end = nullptr;
    long long v = std::strtoll(s, &end, 10);
    if (end == s || *end != '\0') throw IoError("bad count '" + token + "'");
    return v;
}

} // namespace

std::string format_report(const ReportFile& r) {
    std::ostringstream os;
    os << "swisscheese-report 1\n";
    os << "suite " << quoted(r.suite) << "\n";
    os << "params " << quoted(r.params) << "\n";
    int fails = 0;
    for (const auto& row : r.rows) {
        if (!row.pass) ++fails;
        os << "check " << row.id << " " << quoted(row.params) << " measured "
           << hexf(row.measured) << " bound " << hexf(row.bound) << " margin "
           << hexf(row.margin) << " " << (row.pass ? "pass" : "fail")
           << " samples " << quoted(row.samples) << " notes " << quoted(row.notes)
           << "\n";
    }
    os << "summary pass " << (r.rows.size() - fails) << " fail " << fails << "\n";
    os << "end\n";
    return os.str();
}

ReportFile parse_report(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<std::string>> lines;
    while (std::getline(in, line)) {
        auto toks = tokenize(line);
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    std::size_t at = 0;
    auto next = [&](const std::string& context) -> const std::vector<std::string>& {
        if (at >= lines.size()) throw IoError("report ended early, expected " + context);
        return lines[at++];
    };

    const auto& header = next("header");
    if (header.size() != 2 || header[0] != "swisscheese-report" || header[1] != "1")
        throw IoError("not a swisscheese-report version 1 file");

    ReportFile r;
    const auto& suite = next("suite");
    if (suite.size() != 2 || suite[0] != "suite") throw IoError("bad suite line");
    r.suite = suite[1];
    const auto& params = next("params");
    if (params.size() != 2 || params[0] != "params") throw IoError("bad params line");
    r.params = params[1];

    for (;;) {
        const auto& t = next("check or summary");
        if (t[0] == "summary") {
            if (t.size() != 5 || t[1] != "pass" || t[3] != "fail")
                throw IoError("bad summary line");
            auto passes = parse_count(t[2]);
            auto fails = parse_count(t[4]);
            if (passes + fails != static_cast<std::int64_t>(r.rows.size()) ||
                fails != r.failures())
                throw IoError("summary counts disagree with check lines");
            break;
        }
        if (t[0] != "check" || t.size() != 14) throw IoError("malformed check line");
        CertReport row;
        row.id = t[1];
        row.params = t[2];
        if (t[3] != "measured" || t[5] != "bound" || t[7] != "margin" ||
            t[10] != "samples" || t[12] != "notes")
            throw IoError("malformed check line");
        row.measured = parse_hexf(t[4]);
        row.bound = parse_hexf(t[6]);
        row.margin = parse_hexf(t[8]);
        if (t[9] == "pass")
            row.pass = true;
        else if (t[9] == "fail")
            row.pass = false;
        else
            throw IoError("bad verdict '" + t[9] + "'");
        row.samples = t[11];
        row.notes = t[13];
        r.rows.push_back(std::move(row));
    }
    const auto& endl_ = next("end");
    if (endl_[0] != "end") throw IoError("expected 'end'");
    return r;
}

void write_report(const ReportFile& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << format_report(r);
    if (!out) throw IoError("write failed for '" + path + "'");
}

ReportFile read_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_report(buf.str());
}

} // namespace cheese::tools
