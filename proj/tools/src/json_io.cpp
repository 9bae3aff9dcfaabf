#include "json_io.hpp"

namespace zsparse::cli {

json to_json(const Integer& v) { return to_string(v); }

json to_json(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

json u64s(const std::vector<std::uint64_t>& v) {
  json out = json::array();
  for (auto x : v) out.push_back(std::to_string(x));
  return out;
}

json to_json(const ExponentClassSet& s) {
  json prog = json::array();
  for (const auto& p : s.progressions) prog.push_back({{"start", std::to_string(p.start)}, {"step", std::to_string(p.step)}});
  return {{"exceptional", u64s(s.exceptional)},
          {"progressions", prog},
          {"pre_period", std::to_string(s.pre_period)},
          {"empty", s.empty()}};
}

json to_json(const FacClassResult& r) {
  const bool cofinite = r.classification == FacClassResult::Classification::Cofinite;
  json out{{"classification", cofinite ? "cofinite" : "finite"}};
  out[cofinite ? "excluded" : "members"] = to_json(r.elements);
  if (cofinite) {
    out["threshold_index"] = std::to_string(r.threshold_index);
    out["threshold_element"] = to_json(r.threshold_element);
  }
  return out;
}

json to_json(const GapProfile& g) {
  return {{"gaps", to_json(g.gaps)},
          {"threshold_index", g.threshold_index ? json(std::to_string(*g.threshold_index)) : json(nullptr)},
          {"provably_sparse", g.provably_sparse}};
}

json to_json(const ScaleOrbitFamily& f) {
  json blocks = json::array();
  for (const auto& b : f.blocks) {
    json idx = json::array();
    for (auto i : b) idx.push_back(i);
    blocks.push_back(idx);
  }
  return {{"base_exponents", u64s(f.base_exponents)}, {"blocks", blocks}};
}

json to_json(const FactorialSolutionDescription& d) {
  json fams = json::array();
  for (const auto& f : d.families) {
    json blocks = json::array();
    for (const auto& b : f.blocks) {
      json idx = json::array();
      for (auto i : b.indices) idx.push_back(i);
      blocks.push_back({{"indices", idx}, {"value", b.value ? to_json(*b.value) : json(nullptr)}});
    }
    fams.push_back({{"blocks", blocks}, {"free_parameters", f.free_parameters()}});
  }
  json spor = json::array();
  for (const auto& s : d.sporadic) spor.push_back(to_json(s));
  return {{"families", fams}, {"sporadic", spor}};
}

json to_json(const CoverReport& r) {
  return {{"status", "covered_refuted"},
          {"witness", to_json(r.witness)},
          {"certificates", r.certificates},
          {"inspected", std::to_string(r.inspected)},
          {"threshold", to_json(r.threshold)},
          {"scan_bound", std::to_string(r.scan_bound)}};
}

json to_json(const VerificationTrace& t) {
  return {{"passed", t.passed}, {"direct_instances", t.direct_instances}, {"certificates", t.certificates}};
}

json to_json(const GammaReport& r) {
  json out;
  if (r.status == GammaReport::Status::Witness) {
    out["status"] = "witness";
    out["witness"] = to_json(*r.witness);
    out["verification"] = to_json(r.verification);
  } else {
    out["status"] = "unsat";
    out["reason"] = r.reason;
    out["inconsistent_instances"] = to_json(r.inconsistent_instances);
    out["subsystem_verified"] = r.subsystem_verified;
  }
  out["candidates_checked"] = std::to_string(r.candidates_checked);
  return out;
}

json to_json(const AdaptedBasis& b) {
  json basis = json::array();
  for (const auto& z : b.basis) basis.push_back(to_json(z));
  return {{"basis", basis}, {"divisors", to_json(b.divisors)}};
}

json to_json(const CharacteristicReport& r) {
  json out{{"invariant", r.invariant}};
  if (!r.invariant) {
    json m = json::array();
    for (const auto& row : r.matrix) m.push_back(to_json(row));
    out["move"] = r.move;
    out["matrix"] = m;
    out["generator"] = to_json(r.generator);
    out["image"] = to_json(r.image);
  }
  return out;
}

}  // namespace zsparse::cli
