#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>

#include "tauberlab/cones.hpp"
#include "tauberlab/gelfand.hpp"
#include "tauberlab/report.hpp"
#include "tauberlab/tauberian.hpp"
#include "tauberlab/weights.hpp"

namespace tauberlab {

// Key order is part of the byte-identical report contract.
using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "bound-report/1";
inline constexpr const char* kToolVersion = "tauberlab 0.1.0";

// FNV-1a, 64 bit; used for scenario hashes.
std::uint64_t fnv1a64(const std::string& data);

// Spec parsers.  String forms: "gevrey:<s>[:depth]"; "orthant:<n>" /
// "lorentz:<n>"; catalog shorthands "delta[:k]", "heaviside", "xiplus",
// "cube", "const2"; rho "<alpha>".  JSON object forms mirror the scenario
// schema ({"kind": ...}).  Malformed specs throw DomainError.
WeightSequence parse_weight_spec(const Json& spec);
RSequence parse_rseq_spec(const Json& spec);
Cone parse_cone_spec(const Json& spec);
CatalogElement parse_catalog_spec(const Json& spec);
RegularlyVarying parse_rho_spec(const Json& spec);

Json to_json(const BoundReport& rep);
Json to_json(const ConditionReport& rep);
Json to_json(const LimitTable& table);
Json to_json(const QuasiVerdict& verdict);

// Wraps a payload with the schema version, tool version, scenario hash and
// seed; every emitted report goes through this.
Json make_report(Json payload, const Json& scenario, std::uint64_t seed);

// CSV dump of the per-point residuals ("p0,p1,...,residual" lines with a
// header); empty residual lists yield just the header.
std::string residuals_csv(const BoundReport& rep);

}  // namespace tauberlab
