// chebotarev: decomposition types of loops in finite covers, periodic-orbit
// densities of labeled subshifts, and the supporting group theory.
//
// Exit codes: 0 success, 1 tolerance or verification failure, 2 input error.

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chebotarev/chebotarev.hpp"

namespace {

using namespace chebotarev;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

struct PresentationArgs {
  std::string braid;
  std::size_t generators = 0;
  std::vector<std::string> relators;

  void attach(CLI::App* cmd) {
    cmd->add_option("--braid", braid, "braid word, e.g. '2:s1 s1 s1'");
    cmd->add_option("--generators", generators, "generator count of an explicit presentation");
    cmd->add_option("--relator", relators, "relator word, e.g. 'x1 x2 x1^-1' (repeatable)");
  }

  Presentation build() const {
    if (!braid.empty()) {
      if (!relators.empty()) throw InputError("give either --braid or --relator");
      return braid_presentation(parse_braid(braid));
    }
    if (generators == 0 && relators.empty()) throw InputError("a presentation needs --braid or --generators");
    std::vector<Word> rels;
    for (const auto& r : relators) rels.push_back(parse_word(r));
    return Presentation(generators, std::move(rels));
  }
};

OutputFormat parse_format(const std::string& f) {
  if (f == "text") return OutputFormat::text;
  if (f == "rows") return OutputFormat::rows;
  throw InputError("--format must be text or rows");
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
  return s;
}

int cmd_group_classes(const std::string& path) {
  FiniteGroup g = io::load_group(path);
  auto classes = conjugacy_classes(g);
  std::cout << "order " << g.order() << ", " << classes.size() << " conjugacy classes\n\n";
  std::cout << pad("representative", 24) << pad("size", 8) << "cycle type\n";
  for (const auto& c : classes)
    std::cout << pad(format_cycles(g.element(c.representative)), 24) << pad(std::to_string(c.size()), 8)
              << cycle_type(g.element(c.representative)).to_string() << '\n';
  return kOk;
}

int cmd_braid_presentation(const std::string& braid) {
  Presentation p = braid_presentation(parse_braid(braid));
  std::cout << "generators " << p.generator_count() << '\n';
  for (std::size_t i = 0; i < p.relators().size(); ++i)
    std::cout << "r" << i + 1 << ": " << format_word(p.relators()[i]) << '\n';
  IntMatrix m = abelianized_matrix(p);
  std::cout << "\nabelianized relators\n" << m.to_string();
  std::cout << "\nH1 = " << cokernel_invariants(m).to_string() << '\n';
  return kOk;
}

int cmd_cover_decompose(const std::string& hom_path, const std::string& subgroup, const std::vector<std::string>& words,
                        const std::string& format) {
  GroupHom hom = io::load_hom(hom_path);
  const FiniteGroup& g = hom.target();
  Subgroup h = io::parse_subgroup(g, subgroup);
  CoveringGraph cover = build_cover(hom, h);
  CosetAction action(g, h);
  const bool rows = parse_format(format) == OutputFormat::rows;

  bool all_ok = true;
  if (rows)
    std::cout << "#word\timage\timage_cycle_type\tdecomposition_type\tcomponents\tlift_check\n";
  else
    std::cout << "cover of degree " << cover.vertex_count() << "\n\n"
              << pad("word", 22) << pad("image", 18) << pad("monodromy", 14) << pad("decomposition", 16)
              << pad("components", 30) << "lift check\n";
  for (const auto& text : words) {
    CyclicWord w = cyclic_reduce(parse_word(text));
    LiftResult lift = decompose_loop(cover, w);
    ElementId z = hom.evaluate(w.word());
    BijectionReport check = verify_component_bijection(cover, hom, h, w);
    bool ok = check.passed() && lift.decomposition_type == cycle_type(action.image(z));
    all_ok = all_ok && ok;
    std::string comps;
    for (const auto& c : lift.components) comps += "{" + join(c.vertices) + "}:" + std::to_string(c.degree) + " ";
    if (!comps.empty()) comps.pop_back();
    if (rows)
      std::cout << format_word(w) << '\t' << format_cycles(g.element(z)) << '\t' << cycle_type(action.image(z)).to_string()
                << '\t' << lift.decomposition_type.to_string() << '\t' << comps << '\t' << (ok ? "pass" : "FAIL") << '\n';
    else
      std::cout << pad(format_word(w), 22) << pad(format_cycles(g.element(z)), 18)
                << pad(cycle_type(action.image(z)).to_string(), 14) << pad(lift.decomposition_type.to_string(), 16)
                << pad(comps, 30) << (ok ? "pass" : "FAIL") << '\n';
  }
  return all_ok ? kOk : kFailed;
}

int cmd_cover_verify_artin(const std::string& group_path, const std::string& subgroup, bool all) {
  FiniteGroup g = io::load_group(group_path);
  std::vector<Subgroup> subgroups;
  if (all)
    subgroups = all_subgroups(g);
  else
    subgroups.push_back(io::parse_subgroup(g, subgroup));
  std::size_t elements = 0;
  std::size_t mismatches = 0;
  for (const auto& h : subgroups) {
    ArtinReport r = verify_artin(g, h);
    elements += r.checked;
    mismatches += r.mismatches.size() + r.exact_mismatches.size();
    for (const auto& m : r.mismatches)
      std::cout << "mismatch: subgroup of order " << h.order() << ", element " << format_cycles(g.element(m.element))
                << ": cover " << m.graph_type.to_string() << ", coset action " << m.monodromy_type.to_string() << '\n';
  }
  std::cout << subgroups.size() << " subgroup(s), " << elements << " element checks, " << mismatches << " mismatches\n";
  return mismatches == 0 ? kOk : kFailed;
}

std::string orbit_edges(const Orbit& o) {
  std::string s;
  for (std::size_t i = 0; i < o.edges.size(); ++i) s += (i ? " " : "") + std::to_string(o.edges[i]);
  return s;
}

int cmd_sft_orbits(const std::string& sft, const std::string& hom, std::size_t max_len, std::size_t workers) {
  LabeledSFT s = io::load_sft(sft, hom);
  std::cout << "#length\tedges\tholonomy\tclass\n";
  for (const auto& o : enumerate_orbits(s, max_len, workers))
    std::cout << o.length() << '\t' << orbit_edges(o) << '\t' << format_cycles(s.group().element(o.holonomy)) << '\t'
              << o.frobenius_class << '\n';
  return kOk;
}

int cmd_sft_chebotarev(const std::string& sft, const std::string& hom, std::size_t max_len, std::size_t skip,
                       std::size_t workers, const std::string& format, std::optional<double> tolerance) {
  LabeledSFT s = io::load_sft(sft, hom);
  ReportOptions opts;
  opts.skip = skip;
  opts.workers = workers;
  DensityReport rep = chebotarev_report(s, max_len, opts);
  std::cout << (parse_format(format) == OutputFormat::rows ? render_rows(rep) : render_text(rep));
  if (tolerance && rep.max_type_deviation() > *tolerance) return kFailed;
  return kOk;
}

int cmd_sft_counts(const std::string& sft, const std::string& hom, std::size_t n) {
  LabeledSFT s = io::load_sft(sft, hom);
  auto counts = exact_counts(s, n);
  BigInt total = 0;
  for (const auto& c : counts) total += c;
  std::cout << "closed paths of length " << n << ": " << total << "\n\n" << pad("class", 24) << "count\n";
  for (std::size_t c = 0; c < counts.size(); ++c)
    std::cout << pad(format_cycles(s.group().element(s.classes()[c].representative)), 24) << counts[c] << '\n';
  return kOk;
}

int cmd_sft_realize(const std::string& sft, const std::string& hom, std::size_t bound) {
  LabeledSFT s = io::load_sft(sft, hom);
  RealizationReport r = realization_check(s, bound);
  std::cout << "irreducible " << (r.irreducible ? "yes" : "no") << ", period " << r.period << '\n';
  std::cout << "holonomy group order " << r.holonomy_order << " of " << r.target_order << '\n';
  for (std::size_t c = 0; c < r.witnesses.size(); ++c) {
    std::cout << pad(format_cycles(s.group().element(s.classes()[c].representative)), 24);
    if (r.witnesses[c])
      std::cout << "length " << r.witnesses[c]->length() << ", edges " << orbit_edges(*r.witnesses[c]) << '\n';
    else
      std::cout << "no orbit of length <= " << bound << '\n';
  }
  std::cout << (r.passed() ? "pass" : "FAIL: " + r.diagnostic()) << '\n';
  return r.passed() ? kOk : kFailed;
}

int cmd_quotient_search(const PresentationArgs& pa, const std::string& group_path, bool all, bool dedupe,
                        std::uint64_t budget) {
  Presentation p = pa.build();
  auto target = std::make_shared<const FiniteGroup>(io::load_group(group_path));
  SearchOptions opts;
  opts.surjective_only = !all;
  opts.dedupe_conjugates = dedupe;
  opts.budget = budget;
  auto homs = quotient_search(p, target, opts);
  for (const auto& h : homs) {
    for (std::size_t k = 1; k <= p.generator_count(); ++k)
      std::cout << (k > 1 ? " " : "") << 'x' << k << '=' << format_cycles(target->element(h.image(k)));
    std::cout << '\n';
  }
  std::cout << "# " << homs.size() << (all ? " homomorphisms" : " surjections") << (dedupe ? " up to conjugation" : "")
            << '\n';
  return kOk;
}

int cmd_snf(const std::string& path) {
  IntMatrix a = parse_matrix(io::read_file(path));
  SmithForm f = smith_normal_form(a);
  std::cout << "S\n" << f.s.to_string() << "U\n" << f.u.to_string() << "V\n" << f.v.to_string();
  std::cout << "cokernel " << cokernel_invariants(a).to_string() << '\n';
  return kOk;
}

int cmd_generic_check(const PresentationArgs& pa, const std::vector<std::string>& class_words) {
  Presentation p = pa.build();
  std::vector<Word> classes;
  for (const auto& c : class_words) classes.push_back(parse_word(c));
  GenericResult r = generic_check(p, classes);
  std::cout << "invariant factors:";
  for (const auto& d : r.invariant_factors) std::cout << ' ' << d;
  std::cout << '\n';
  if (r.generates) {
    std::cout << "classes generate H1\n";
    return kOk;
  }
  std::cout << "classes do not generate H1; witness Z/" << r.witness->prime << " with";
  for (std::size_t j = 0; j < r.witness->coefficients.size(); ++j)
    std::cout << " x" << j + 1 << "->" << r.witness->coefficients[j];
  std::cout << '\n';
  return kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decomposition types in finite covers and Chebotarev densities of periodic orbits"};
  app.require_subcommand(1);
  int status = kOk;

  // experiment a5
  auto* experiment = app.add_subcommand("experiment", "flagship experiments")->require_subcommand(1);
  ExperimentConfig cfg;
  cfg.sft_path = "data/a5_full3shift.sft.json";
  cfg.hom_path = "data/a5.hom.json";
  std::string exp_format = "text";
  auto* a5 = experiment->add_subcommand("a5", "decomposition-type densities in the degree-5 subcover of an A5-cover");
  a5->add_option("--sft", cfg.sft_path, "SFT file")->capture_default_str();
  a5->add_option("--hom", cfg.hom_path, "homomorphism file (target must be A5)")->capture_default_str();
  a5->add_option("--subgroup", cfg.subgroup, "subgroup of A5: a4, stab:<k>, or '(..);(..)'")->capture_default_str();
  a5->add_option("--max-len", cfg.max_len, "maximum orbit length")->capture_default_str();
  a5->add_option("--skip", cfg.skip, "drop this many orbits from the front")->capture_default_str();
  a5->add_option("--tolerance", cfg.tolerance, "allowed deviation at the final cutoff")->capture_default_str();
  a5->add_option("--workers", cfg.workers, "enumeration threads")->capture_default_str();
  a5->add_option("--realization-bound", cfg.realization_bound, "orbit length bound for class witnesses")
      ->capture_default_str();
  a5->add_option("--format", exp_format, "text | rows")->capture_default_str();
  a5->callback([&] {
    cfg.format = parse_format(exp_format);
    A5Table t = run_a5_experiment(cfg);
    std::cout << render_a5_table(t, cfg);
    status = t.within_tolerance ? kOk : kFailed;
  });

  // group classes
  auto* group = app.add_subcommand("group", "finite permutation groups")->require_subcommand(1);
  std::string group_path;
  auto* classes = group->add_subcommand("classes", "conjugacy classes of a group file");
  classes->add_option("group", group_path, "group file")->required();
  classes->callback([&] { status = cmd_group_classes(group_path); });

  // braid presentation
  auto* braid = app.add_subcommand("braid", "braid closures")->require_subcommand(1);
  std::string braid_text;
  auto* presentation = braid->add_subcommand("presentation", "presentation and H1 of a braid closure");
  presentation->add_option("braid", braid_text, "braid word, e.g. '3:s1 s2^-1 s1 s2^-1'")->required();
  presentation->callback([&] { status = cmd_braid_presentation(braid_text); });

  // cover decompose / verify-artin
  auto* cover = app.add_subcommand("cover", "finite covers as coset graphs")->require_subcommand(1);
  std::string hom_path;
  std::string subgroup = "a4";
  std::vector<std::string> words;
  std::string cover_format = "text";
  auto* decompose = cover->add_subcommand("decompose", "decomposition types of loops");
  decompose->add_option("--hom", hom_path, "homomorphism file")->required();
  decompose->add_option("--subgroup", subgroup, "subgroup spec")->capture_default_str();
  decompose->add_option("--word", words, "loop word (repeatable)")->required();
  decompose->add_option("--format", cover_format, "text | rows")->capture_default_str();
  decompose->callback([&] { status = cmd_cover_decompose(hom_path, subgroup, words, cover_format); });

  bool all_subgroups_flag = false;
  auto* artin = cover->add_subcommand("verify-artin", "compare lifted decomposition types with coset-action cycle types");
  artin->add_option("--group", group_path, "group file")->required();
  artin->add_option("--subgroup", subgroup, "subgroup spec")->capture_default_str();
  artin->add_flag("--all-subgroups", all_subgroups_flag, "check every subgroup");
  artin->callback([&] { status = cmd_cover_verify_artin(group_path, subgroup, all_subgroups_flag); });

  // sft orbits / chebotarev / counts / realize
  auto* sft = app.add_subcommand("sft", "labeled subshifts of finite type")->require_subcommand(1);
  std::string sft_path;
  std::string sft_hom;
  std::size_t max_len = 8;
  std::size_t skip = 0;
  std::size_t workers = 1;
  std::size_t length = 1;
  std::string sft_format = "text";
  std::optional<double> tolerance;
  auto add_sft_inputs = [&](CLI::App* c) {
    c->add_option("--sft", sft_path, "SFT file")->required();
    c->add_option("--hom", sft_hom, "homomorphism file")->required();
  };
  auto* orbits = sft->add_subcommand("orbits", "primitive orbits in length order");
  add_sft_inputs(orbits);
  orbits->add_option("--max-len", max_len)->capture_default_str();
  orbits->add_option("--workers", workers)->capture_default_str();
  orbits->callback([&] { status = cmd_sft_orbits(sft_path, sft_hom, max_len, workers); });

  auto* cheb = sft->add_subcommand("chebotarev", "Frobenius-class and cycle-type densities");
  add_sft_inputs(cheb);
  cheb->add_option("--max-len", max_len)->capture_default_str();
  cheb->add_option("--skip", skip)->capture_default_str();
  cheb->add_option("--workers", workers)->capture_default_str();
  cheb->add_option("--format", sft_format, "text | rows")->capture_default_str();
  cheb->add_option("--tolerance", tolerance, "exit 1 if the final cycle-type deviation exceeds this");
  cheb->callback([&] { status = cmd_sft_chebotarev(sft_path, sft_hom, max_len, skip, workers, sft_format, tolerance); });

  auto* counts = sft->add_subcommand("counts", "exact closed-path counts per class by transfer DP");
  add_sft_inputs(counts);
  counts->add_option("--length", length, "path length")->capture_default_str();
  counts->callback([&] { status = cmd_sft_counts(sft_path, sft_hom, length); });

  std::size_t bound = 6;
  auto* realize = sft->add_subcommand("realize", "holonomy and per-class witness check");
  add_sft_inputs(realize);
  realize->add_option("--bound", bound, "orbit length bound")->capture_default_str();
  realize->callback([&] { status = cmd_sft_realize(sft_path, sft_hom, bound); });

  // quotient search
  auto* quotient = app.add_subcommand("quotient", "finite quotients of presented groups")->require_subcommand(1);
  PresentationArgs qpres;
  bool all_homs = false;
  bool dedupe = false;
  std::uint64_t budget = SearchOptions{}.budget;
  auto* search = quotient->add_subcommand("search", "homomorphisms onto a finite group");
  qpres.attach(search);
  search->add_option("--group", group_path, "target group file")->required();
  search->add_flag("--all", all_homs, "include non-surjective homomorphisms");
  search->add_flag("--dedupe", dedupe, "one representative per conjugation orbit");
  search->add_option("--budget", budget, "maximum candidate tuples")->capture_default_str();
  search->callback([&] { status = cmd_quotient_search(qpres, group_path, all_homs, dedupe, budget); });

  // snf
  std::string matrix_path;
  auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix file");
  snf->add_option("matrix", matrix_path, "matrix file")->required();
  snf->callback([&] { status = cmd_snf(matrix_path); });

  // generic check
  auto* generic = app.add_subcommand("generic", "H1 generation by loop classes")->require_subcommand(1);
  PresentationArgs gpres;
  std::vector<std::string> class_words;
  auto* check = generic->add_subcommand("check", "do the classes generate H1?");
  gpres.attach(check);
  check->add_option("--class", class_words, "class word (repeatable)");
  check->callback([&] { status = cmd_generic_check(gpres, class_words); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  } catch (const VerificationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return status;
}
