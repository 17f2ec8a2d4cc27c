#include "pcvx/report.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace pcvx {

void Manifest::add(const std::string& name, const std::string& canonical_text) {
    entries_.emplace_back(name, canonical_text);
}

std::string Manifest::to_text() const {
    std::ostringstream os;
    for (const auto& [name, text] : entries_) os << name << " = " << text << "\n";
    return os.str();
}

std::string Manifest::hash() const {
    // FNV-1a, 64-bit.
    std::string text = to_text();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw Error("empty rational");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rational num(Integer(text.substr(0, slash)));
        Integer den(text.substr(slash + 1));
        if (den == 0) throw Error("zero denominator");
        return num / Rational(den);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        bool neg = !digits.empty() && digits[0] == '-';
        std::string mag = neg ? digits.substr(1) : digits;
        // Strip leading zeros so the GMP string constructor never sees octal.
        auto nz = mag.find_first_not_of('0');
        mag = (nz == std::string::npos) ? "0" : mag.substr(nz);
        int frac = static_cast<int>(text.size() - dot - 1);
        Integer den(1);
        for (int i = 0; i < frac; ++i) den *= 10;
        Integer num(mag);
        if (neg) num = -num;
        return Rational(num) / Rational(den);
    }
    return Rational(Integer(text));
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open for writing: " + path);
    os << content;
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open for reading: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::string reports_csv(const std::vector<CertReport>& reports) {
    std::ostringstream os;
    os << "claim,verdict,samples,min_minor,witness\n";
    auto esc = [](std::string s) {
        for (auto& ch : s)
            if (ch == ',' || ch == '\n') ch = ';';
        return s;
    };
    for (const auto& r : reports) {
        os << esc(r.claim_id) << "," << verdict_name(r.verdict) << "," << r.samples_checked
           << "," << (r.has_min_minor ? to_string(r.min_minor) : std::string()) << ","
           << esc(r.witness) << "\n";
    }
    return os.str();
}

std::string strip_timing_lines(const std::string& text) {
    std::istringstream is(text);
    std::ostringstream os;
    std::string line;
    while (std::getline(is, line))
        if (line.rfind("wall_time", 0) != 0) os << line << "\n";
    return os.str();
}

}  // namespace pcvx
