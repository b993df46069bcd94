#pragma once

// File formats: group files, homomorphism files, SFT files and subgroup
// specifications. Points are 1-based in files and 0-based in memory.
//
//   group: { "degree": 5, "generators": ["(1 2 3 4 5)", "(1 2 3)"] }
//   hom:   { "target": <group>, "images": ["(1 2 3 4 5)", "(1 2 3)"],
//            "relators": ["x1 x2 x1^-1"] }          relators optional
//          "braid": "2:s1 s1 s1" may replace "relators"; "target" may be
//          replaced by a top-level "degree", in which case the target is
//          the group generated by the images.
//   sft:   { "states": 1, "edges": [{"from": 0, "to": 0, "label": "x1"}] }

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chebotarev/error.hpp"
#include "chebotarev/freewords.hpp"
#include "chebotarev/permgroup.hpp"
#include "chebotarev/sft.hpp"

namespace chebotarev::io {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw InputError(what + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(what + ": bad \"" + key + "\": " + e.what());
  }
}

inline std::vector<Permutation> parse_permutations(const std::vector<std::string>& texts, std::size_t degree) {
  std::vector<Permutation> out;
  for (const auto& t : texts) out.push_back(parse_cycles(t, degree));
  return out;
}

inline FiniteGroup group_from_json(const json& j, std::size_t order_cap = kDefaultOrderCap) {
  auto degree = field<std::size_t>(j, "degree", "group");
  auto gens = parse_permutations(field<std::vector<std::string>>(j, "generators", "group"), degree);
  return generate_group(degree, gens, order_cap);
}

inline FiniteGroup load_group(const std::string& path, std::size_t order_cap = kDefaultOrderCap) {
  return group_from_json(parse_json(read_file(path), path), order_cap);
}

inline json group_to_json(const FiniteGroup& g) {
  json gens = json::array();
  for (ElementId id : g.generators()) gens.push_back(format_cycles(g.element(id)));
  return {{"degree", g.degree()}, {"generators", gens}};
}

inline GroupHom hom_from_json(const json& j, std::size_t order_cap = kDefaultOrderCap) {
  const std::string what = "hom";
  std::shared_ptr<const FiniteGroup> target;
  std::size_t degree = 0;
  if (j.contains("target")) {
    target = std::make_shared<const FiniteGroup>(group_from_json(j.at("target"), order_cap));
    degree = target->degree();
  } else {
    degree = field<std::size_t>(j, "degree", what);
  }
  auto perms = parse_permutations(field<std::vector<std::string>>(j, "images", what), degree);
  if (!target) target = std::make_shared<const FiniteGroup>(generate_group(degree, perms, order_cap));

  std::vector<ElementId> images;
  for (const auto& p : perms) {
    auto id = target->find(p);
    if (!id) throw InputError(what + ": image " + format_cycles(p) + " is not in the target group");
    images.push_back(*id);
  }

  Presentation pres = Presentation::free(images.size());
  if (j.contains("braid") && j.contains("relators")) throw InputError(what + ": give either \"braid\" or \"relators\"");
  if (j.contains("braid")) {
    pres = braid_presentation(parse_braid(field<std::string>(j, "braid", what)));
    if (pres.generator_count() != images.size())
      throw InputError(what + ": braid has " + std::to_string(pres.generator_count()) + " strands but " +
                       std::to_string(images.size()) + " images were given");
  } else if (j.contains("relators")) {
    std::vector<Word> rels;
    for (const auto& r : field<std::vector<std::string>>(j, "relators", what)) rels.push_back(parse_word(r));
    pres = Presentation(images.size(), std::move(rels));
  }
  return GroupHom(std::move(pres), std::move(target), std::move(images));
}

inline GroupHom load_hom(const std::string& path, std::size_t order_cap = kDefaultOrderCap) {
  return hom_from_json(parse_json(read_file(path), path), order_cap);
}

inline LabeledSFT sft_from_json(const json& j, GroupHom hom) {
  const std::string what = "sft";
  auto states = field<std::size_t>(j, "states", what);
  if (!j.contains("edges") || !j.at("edges").is_array()) throw InputError(what + ": missing \"edges\" array");
  std::vector<SftEdge> edges;
  for (const auto& e : j.at("edges")) {
    SftEdge ed;
    ed.from = field<std::size_t>(e, "from", what);
    ed.to = field<std::size_t>(e, "to", what);
    ed.label = parse_word(field<std::string>(e, "label", what));
    edges.push_back(std::move(ed));
  }
  return LabeledSFT(states, std::move(edges), std::move(hom));
}

inline LabeledSFT load_sft(const std::string& sft_path, const std::string& hom_path) {
  return sft_from_json(parse_json(read_file(sft_path), sft_path), load_hom(hom_path));
}

// Subgroup specifications:
//   "a4"          stabilizer of the last point (index 5 in A5)
//   "stab:<k>"    stabilizer of point k (1-based)
//   "trivial", "whole"
//   "(1 2 3);(1 2)(3 4)"   generated by the listed permutations
inline Subgroup parse_subgroup(const FiniteGroup& g, const std::string& spec) {
  if (spec == "a4") {
    if (g.degree() != 5 || g.order() != 60) throw PreconditionError("subgroup 'a4' needs the target to be A5 on 5 points");
    return point_stabilizer(g, 4);
  }
  if (spec == "trivial") return Subgroup::trivial(g);
  if (spec == "whole") return Subgroup::whole(g);
  if (spec.rfind("stab:", 0) == 0) {
    std::string k = spec.substr(5);
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos) throw InputError("bad point in '" + spec + "'");
    auto point = std::stoul(k);
    if (point < 1) throw InputError("points are numbered from 1");
    return point_stabilizer(g, static_cast<Point>(point - 1));
  }
  std::vector<Permutation> gens;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';'))
    if (part.find_first_not_of(" \t") != std::string::npos) gens.push_back(parse_cycles(part, g.degree()));
  return Subgroup::generated_by(g, std::span<const Permutation>(gens));
}

}  // namespace chebotarev::io
