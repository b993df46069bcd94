#pragma once

// Text and machine-readable renderings of density reports. Exact values
// (targets, counts) print as integers or rationals; empirical values print
// as decimals with 6 places.
//
// Row format, tab separated, one line per (cutoff, class or type):
//   cutoff  kind  label  count  total  density  target  deviation
// kind is "class" or "type"; target is an exact fraction "num/den".

#include <cstdio>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "chebotarev/error.hpp"
#include "chebotarev/sft.hpp"

namespace chebotarev {

inline std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

inline std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

inline std::string render_rows(const DensityReport& rep) {
  std::ostringstream os;
  os << "#cutoff\tkind\tlabel\tcount\ttotal\tdensity\ttarget\tdeviation\n";
  for (const auto& cut : rep.cutoffs) {
    auto line = [&](const char* kind, const DensityEntry& e) {
      os << cut.cutoff << '\t' << kind << '\t' << e.label << '\t' << e.count << '\t' << cut.total << '\t'
         << fixed6(e.density) << '\t' << e.target.str() << '\t' << fixed6(e.deviation) << '\n';
    };
    for (const auto& e : cut.classes) line("class", e);
    for (const auto& e : cut.types) line("type", e);
  }
  return os.str();
}

// Final-cutoff table plus a per-cutoff summary of the worst type deviation.
inline std::string render_text(const DensityReport& rep) {
  std::ostringstream os;
  if (rep.cutoffs.empty()) return "no orbits\n";
  const auto& last = rep.cutoffs.back();
  os << "orbits of length <= " << last.cutoff << ": " << last.total;
  if (rep.skipped) os << " (after skipping " << rep.skipped << ")";
  os << "\n\n";
  auto table = [&](const char* title, const std::vector<DensityEntry>& entries) {
    os << pad(title, 24) << pad("count", 10) << pad("density", 12) << pad("target", 10) << "deviation\n";
    for (const auto& e : entries)
      os << pad(e.label, 24) << pad(std::to_string(e.count), 10) << pad(fixed6(e.density), 12) << pad(e.target.str(), 10)
         << fixed6(e.deviation) << '\n';
    os << '\n';
  };
  table("class", last.classes);
  table("cycle type", last.types);
  os << pad("cutoff", 8) << pad("orbits", 10) << "max type deviation\n";
  for (const auto& cut : rep.cutoffs) {
    double m = 0;
    for (const auto& e : cut.types) m = std::max(m, e.deviation);
    os << pad(std::to_string(cut.cutoff), 8) << pad(std::to_string(cut.total), 10) << fixed6(m) << '\n';
  }
  return os.str();
}

struct ParsedRow {
  std::size_t cutoff = 0;
  std::string kind;
  std::string label;
  std::size_t count = 0;
  std::size_t total = 0;
  std::string density;
  Fraction target;
  std::string deviation;
};

inline std::vector<ParsedRow> parse_rows(const std::string& text) {
  std::vector<ParsedRow> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, '\t')) f.push_back(cell);
    if (f.size() != 8) throw InputError("row needs 8 tab-separated fields: " + line);
    ParsedRow r;
    try {
      r.cutoff = std::stoul(f[0]);
      r.kind = f[1];
      r.label = f[2];
      r.count = std::stoul(f[3]);
      r.total = std::stoul(f[4]);
      r.density = f[5];
      auto slash = f[6].find('/');
      if (slash == std::string::npos) throw InputError("target must be a fraction: " + f[6]);
      r.target = Fraction::of(std::stoull(f[6].substr(0, slash)), std::stoull(f[6].substr(slash + 1)));
      r.deviation = f[7];
    } catch (const std::logic_error&) {
      throw InputError("malformed row: " + line);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace chebotarev
