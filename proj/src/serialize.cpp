#include "qnet/serialize.hpp"

namespace qnet::certify {

namespace {

Json params_json(const iso::IsotropicParams& p) {
  return Json{{"d", p.d}, {"p", p.p}};
}

}  // namespace

Json to_json(const BiseparabilityCertificate& cert) {
  Json j;
  j["certificate"] = "biseparability";
  j["kind"] = cert.kind == BiseparabilityCertificate::Kind::TrivialAllLinksSeparable
                  ? "trivial_all_links_separable"
                  : "degree_construction";
  j["params"] = params_json(cert.params);
  if (cert.kind == BiseparabilityCertificate::Kind::TrivialAllLinksSeparable) {
    j["citation"] =
        "every link is separable at p <= 1/(d+1), so the network state is "
        "biseparable at any single vertex";
  } else {
    j["subset"] = cert.subset;
    Json margins = Json::object();
    for (auto [v, m] : cert.per_vertex_margin) margins[std::to_string(v)] = m;
    j["per_vertex_margin"] = margins;
    j["citation"] =
        "recombined degree construction: every v in V' satisfies "
        "(d p/(1-p))^k (2^deg(v)-1) <= |V'| for k = 1..deg(v)";
  }
  j["model_conditional"] = false;
  j["tool_version"] = kToolVersion;
  return j;
}

Json to_json(const GmeCertificate& cert) {
  Json j;
  j["certificate"] = "gme";
  j["kind"] = "fidelity_cap_violation";
  j["params"] = params_json(cert.params);
  j["cap"] = cert.cap;
  j["average_fidelity_lower_bound"] = cert.average_fidelity_lower_bound;
  j["exponent_model"] = cert.exponent_model;
  j["model_conditional"] = true;
  Json pairs = Json::array();
  for (const auto& e : cert.per_pair) {
    pairs.push_back(Json{{"u", e.u},
                         {"v", e.v},
                         {"paths", e.path_count},
                         {"length_cap", e.length_cap},
                         {"delivered_visibility", e.delivered_visibility},
                         {"epsilon", e.epsilon}});
  }
  j["per_pair"] = pairs;
  j["citation"] =
      "no biseparable N-party state reaches average maximally-entangled "
      "fidelity above 1 - 1/N under local channel collections";
  j["tool_version"] = kToolVersion;
  return j;
}

Json to_json(const FamilyVerdict& verdict, const std::string& family, int d) {
  Json j;
  j["family"] = family;
  j["d"] = d;
  j["verdict"] = to_string(verdict.verdict);
  Json rules = Json::array();
  for (const auto& r : verdict.rules_fired)
    rules.push_back(Json{{"rule", r.rule},
                         {"verdict", to_string(r.verdict)},
                         {"citation", r.statement}});
  j["rules_fired"] = rules;
  Json desc;
  desc["order"] = verdict.descriptors_used.order_fn.str();
  desc["delta_min"] = verdict.descriptors_used.delta_min.str();
  desc["delta_max"] = verdict.descriptors_used.delta_max.str();
  if (verdict.descriptors_used.lambda)
    desc["lambda"] = verdict.descriptors_used.lambda->str();
  if (verdict.descriptors_used.diameter)
    desc["diameter"] = verdict.descriptors_used.diameter->str();
  if (verdict.descriptors_used.path_hypothesis) {
    desc["path_count"] = verdict.descriptors_used.path_hypothesis->path_count.str();
    desc["length_cap"] = verdict.descriptors_used.path_hypothesis->length_cap;
  }
  if (verdict.descriptors_used.subset) {
    desc["subset_size"] = verdict.descriptors_used.subset->subset_size.str();
    desc["subset_max_degree"] =
        verdict.descriptors_used.subset->subset_max_degree.str();
  }
  j["descriptors"] = desc;
  j["tool_version"] = kToolVersion;
  return j;
}

Json absent_record(const std::string& kind, const iso::IsotropicParams& params,
                   const std::string& exponent_model) {
  Json j;
  j["certificate"] = kind;
  j["kind"] = "absent";
  j["params"] = params_json(params);
  if (!exponent_model.empty()) j["exponent_model"] = exponent_model;
  j["tool_version"] = kToolVersion;
  return j;
}

}  // namespace qnet::certify
