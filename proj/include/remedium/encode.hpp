#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "remedium/artifact.hpp"
#include "remedium/constraints.hpp"

namespace remedium {

struct FamilyPrior {
  std::vector<ConstraintAtom> atoms;
  double evidence = 1.0;
};

// Prior operational state: one entry per family of kStateFamilies.
struct OperationalStatePrior {
  std::array<FamilyPrior, 6> families;

  FamilyPrior& at(Family f);
  const FamilyPrior& at(Family f) const;
  std::vector<ConstraintAtom> all_atoms() const;
  bool operator==(const OperationalStatePrior& o) const;
};

// Index of a state family into OperationalStatePrior::families.
std::size_t family_index(Family f);

class EncodingError : public ConstraintError {
 public:
  using ConstraintError::ConstraintError;
};

struct ReadRecord {
  std::string channel;
  std::size_t walk_index = 0;
  std::map<std::string, std::string> field_versions;  // field -> SSA name
};

// SSA encoding of one walk. The first version of a variable keeps its name;
// later versions are name#k.
struct PathEncoding {
  std::vector<std::string> walk;
  std::vector<ConstraintAtom> domain_atoms;  // one range per SSA name, never relaxed
  std::vector<ConstraintAtom> prior_atoms;   // resolved prior atoms over initial versions
  Formula path;                              // branch, edge, assignment, policy and trigger constraints
  std::vector<ReadRecord> reads;
  std::vector<std::map<std::string, std::string>> versions_at;  // per walk index, at block entry
  std::map<std::string, std::string> base_of;                   // SSA name -> variable
  std::size_t sink_block_index = 0;
  SinkKind sink_kind = SinkKind::OobWrite;
  bool model_gap = false;
  std::string gap_reason;

  // domain ∧ prior ∧ path, optionally without the prior atoms of one family.
  Formula formula() const;
  Formula formula_without(Family relaxed) const;
  std::vector<ConstraintAtom> atoms() const;  // top-level atoms, path flattened when conjunctive
};

// Encodes prior, path conditions and declared domain bounds for `walk`, which
// must end at a block containing a Sink.
PathEncoding encode(const OperationalStatePrior& prior, const ToyArtifact& b, const std::vector<std::string>& walk);

// Resolves fsm-precedes atoms against the channel FSM owning the variable.
ConstraintAtom resolve_fsm(const ConstraintAtom& atom, const ToyArtifact& b);

struct RelaxResult {
  std::vector<ConstraintAtom> atoms;
  Family relaxed = Family::Env;
};

// Drops every prior atom of the lowest-evidence family present in `atoms`
// (ties: env < io < proto < runtime < component < time). Throws
// ConstraintError("NothingToRelax") when no prior atoms are present.
RelaxResult relax(const std::vector<ConstraintAtom>& atoms, const OperationalStatePrior& prior);
Family relax_family(const std::vector<ConstraintAtom>& atoms, const OperationalStatePrior& prior);

// Domain atom for a declared variable under an SSA name.
ConstraintAtom domain_atom(const VarDecl& d, const std::string& ssa_name);

}  // namespace remedium
