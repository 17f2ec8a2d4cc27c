#pragma once

#include "pcvx/certify.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pcvx {

/// Construction manifest: canonical serializations of everything a run
/// built, so a certification run can be replayed bit-exactly. The hash is
/// embedded in every report.
class Manifest {
  public:
    void add(const std::string& name, const std::string& canonical_text);
    void add(const std::string& name, const SparsePoly& p) { add(name, p.to_string()); }
    void add(const std::string& name, const Rational& r) { add(name, to_string(r)); }

    std::string to_text() const;
    std::string hash() const;  // FNV-1a 64-bit over to_text(), hex

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Parses "p/q" or "p" (optionally with decimal point, e.g. "0.25" -> 1/4).
Rational parse_rational(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

/// CSV summary row per claim: claim, verdict, then the fixed parameter
/// columns of the certification engine.
std::string reports_csv(const std::vector<CertReport>& reports);

/// Drops lines starting with "wall_time" so reports from identical runs
/// compare byte-for-byte.
std::string strip_timing_lines(const std::string& text);

}  // namespace pcvx
