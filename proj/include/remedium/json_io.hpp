#pragma once

// JSON mapping for manifests and report records (nlohmann ADL hooks).

#include <json.hpp>

#include "remedium/controller.hpp"
#include "remedium/cva.hpp"
#include "remedium/manifest.hpp"
#include "remedium/osva.hpp"
#include "remedium/rsa.hpp"

namespace remedium {

using Json = nlohmann::json;

#define REMEDIUM_JSON(T)                 \
  void to_json(Json& j, const T& v);     \
  void from_json(const Json& j, T& v);

REMEDIUM_JSON(ConstraintAtom)
REMEDIUM_JSON(VarDecl)
REMEDIUM_JSON(FsmTransition)
REMEDIUM_JSON(ChannelFsm)
REMEDIUM_JSON(ChannelSpec)
REMEDIUM_JSON(Expr)
REMEDIUM_JSON(Instr)
REMEDIUM_JSON(Block)
REMEDIUM_JSON(Edge)
REMEDIUM_JSON(ToyArtifact)
REMEDIUM_JSON(Entity)
REMEDIUM_JSON(GraphRelation)
REMEDIUM_JSON(Ssckg)
REMEDIUM_JSON(RawAlert)
REMEDIUM_JSON(HintRecord)
REMEDIUM_JSON(ContextHints)
REMEDIUM_JSON(BenignTrace)
REMEDIUM_JSON(GroundTruth)
REMEDIUM_JSON(CaseManifest)
REMEDIUM_JSON(NaRow)
REMEDIUM_JSON(Ratio)
REMEDIUM_JSON(Bcp)
REMEDIUM_JSON(ReplayOutcome)
REMEDIUM_JSON(CheckResult)
REMEDIUM_JSON(NeighborPath)
REMEDIUM_JSON(Certificate)
REMEDIUM_JSON(Delta)
REMEDIUM_JSON(Remedy)
REMEDIUM_JSON(TraceEntry)
REMEDIUM_JSON(PathVerdict)
REMEDIUM_JSON(VerificationTrace)
REMEDIUM_JSON(Config)

#undef REMEDIUM_JSON

}  // namespace remedium
