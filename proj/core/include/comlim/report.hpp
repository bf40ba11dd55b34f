#pragma once

#include "comlim/json_writer.hpp"
#include "comlim/oracle.hpp"
#include "comlim/plausibility.hpp"
#include "comlim/refinement.hpp"

namespace comlim {

inline constexpr const char* kReportSchemaVersion = "1.0";

JsonValue to_json(const IntervalUnion& set);
JsonValue to_json(const RcReport& rc);
/// Elements both as interval literals and as sorted grid-index arrays.
JsonValue to_json(const FiniteCst& cst, const OracleContext& ctx);
JsonValue to_json(const EquilibriumReport& eq);
JsonValue to_json(const PlausibilityReport& pl);
JsonValue to_json(const LowerBoundDiagnostics& d);
JsonValue to_json(const SpeResult& spe);
JsonValue to_json(const EquivalenceReport& eq);
JsonValue to_json(const WorseRefinement& w);

}  // namespace comlim
