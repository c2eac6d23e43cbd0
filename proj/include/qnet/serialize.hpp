#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "qnet/certify.hpp"

namespace qnet::certify {

using Json = nlohmann::ordered_json;

Json to_json(const BiseparabilityCertificate& cert);
Json to_json(const GmeCertificate& cert);
Json to_json(const FamilyVerdict& verdict, const std::string& family, int d);

/// "absent" record emitted when a certificate does not exist.
Json absent_record(const std::string& kind, const iso::IsotropicParams& params,
                   const std::string& exponent_model);

}  // namespace qnet::certify
