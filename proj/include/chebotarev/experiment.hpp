#pragma once

// Decomposition-type densities of periodic orbits in the degree-5 subcover
// of an A5-cover: every orbit's holonomy is pushed through the monodromy
// action of A5 on the cosets of a subgroup (by default the point stabilizer
// A4) and recorded by cycle type.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chebotarev/error.hpp"
#include "chebotarev/io.hpp"
#include "chebotarev/permgroup.hpp"
#include "chebotarev/report.hpp"
#include "chebotarev/sft.hpp"

namespace chebotarev {

enum class OutputFormat { text, rows };

struct ExperimentConfig {
  std::string sft_path;
  std::string hom_path;
  std::string subgroup = "a4";
  std::size_t max_len = 11;
  std::size_t skip = 0;
  double tolerance = 0.02;
  std::size_t workers = 1;
  std::size_t realization_bound = 6;
  OutputFormat format = OutputFormat::text;

  void validate() const {
    if (!(tolerance > 0)) throw InputError("tolerance must be positive");
    if (max_len < 1) throw InputError("max length must be at least 1");
  }
};

struct A5TableRow {
  CycleType type;
  std::size_t element_count = 0;
  Fraction target;
  std::size_t orbit_count = 0;
  double empirical = 0;
  double deviation = 0;
};

struct A5Table {
  std::vector<A5TableRow> rows;
  std::size_t orbit_count = 0;
  std::size_t coset_count = 0;
  double max_deviation = 0;
  bool within_tolerance = false;
  RealizationReport realization;
  DensityReport densities;  // by decomposition type, every cutoff
};

// Throws PreconditionError when the homomorphism is not onto A5 and
// VerificationError when the SFT fails the realization check; tolerance
// failure is reported, not thrown.
inline A5Table a5_table(const LabeledSFT& s, const ExperimentConfig& cfg) {
  cfg.validate();
  const FiniteGroup& g = s.group();
  if (g.degree() != 5 || g.order() != 60)
    throw PreconditionError("target group must be A5 on 5 points (got degree " + std::to_string(g.degree()) + ", order " +
                            std::to_string(g.order()) + ")");
  if (!s.hom().is_surjective()) throw PreconditionError("label homomorphism is not surjective onto A5");

  A5Table table;
  table.realization = realization_check(s, cfg.realization_bound);
  if (!table.realization.passed()) throw VerificationError("realization check failed: " + table.realization.diagnostic());

  const Subgroup h = io::parse_subgroup(g, cfg.subgroup);
  const CosetAction action(g, h);
  table.coset_count = action.coset_count();

  ReportOptions opts;
  opts.skip = cfg.skip;
  opts.workers = cfg.workers;
  opts.type_of = [&action](ElementId x) { return cycle_type(action.image(x)); };
  table.densities = chebotarev_report(s, cfg.max_len, opts);

  std::vector<std::size_t> elements(table.densities.types.size(), 0);
  for (ElementId x = 0; x < g.order(); ++x) {
    CycleType t = cycle_type(action.image(x));
    for (std::size_t i = 0; i < table.densities.types.size(); ++i)
      if (table.densities.types[i] == t) ++elements[i];
  }
  const auto& last = table.densities.cutoffs.back();
  table.orbit_count = last.total;
  for (std::size_t i = 0; i < last.types.size(); ++i) {
    const auto& e = last.types[i];
    table.rows.push_back({table.densities.types[i], elements[i], e.target, e.count, e.density, e.deviation});
    table.max_deviation = std::max(table.max_deviation, e.deviation);
  }
  table.within_tolerance = table.max_deviation <= cfg.tolerance;
  return table;
}

inline A5Table run_a5_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  return a5_table(io::load_sft(cfg.sft_path, cfg.hom_path), cfg);
}

inline std::string render_a5_table(const A5Table& t, const ExperimentConfig& cfg) {
  std::ostringstream os;
  if (cfg.format == OutputFormat::rows) {
    os << render_rows(t.densities);
    return os.str();
  }
  os << "decomposition types in a degree-" << t.coset_count << " subcover, " << t.orbit_count
     << " primitive orbits of length <= " << cfg.max_len;
  if (cfg.skip) os << " (first " << cfg.skip << " skipped)";
  os << "\n\n";
  os << pad("type", 14) << pad("elements", 10) << pad("target", 10) << pad("orbits", 10) << pad("empirical", 12)
     << "deviation\n";
  for (const auto& r : t.rows)
    os << pad(r.type.to_string(), 14) << pad(std::to_string(r.element_count), 10) << pad(r.target.str(), 10)
       << pad(std::to_string(r.orbit_count), 10) << pad(fixed6(r.empirical), 12) << fixed6(r.deviation) << '\n';
  os << "\nmax deviation " << fixed6(t.max_deviation) << (t.within_tolerance ? " <= " : " > ") << "tolerance "
     << cfg.tolerance << '\n';
  return os.str();
}

}  // namespace chebotarev
