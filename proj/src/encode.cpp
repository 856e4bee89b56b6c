#include "remedium/encode.hpp"

#include <algorithm>
#include <set>

namespace remedium {

std::size_t family_index(Family f) {
  for (std::size_t i = 0; i < 6; ++i)
    if (kStateFamilies[i] == f) return i;
  throw ConstraintError("path is not an operational-state family");
}

FamilyPrior& OperationalStatePrior::at(Family f) { return families[family_index(f)]; }
const FamilyPrior& OperationalStatePrior::at(Family f) const { return families[family_index(f)]; }

std::vector<ConstraintAtom> OperationalStatePrior::all_atoms() const {
  std::vector<ConstraintAtom> out;
  for (const auto& fp : families) out.insert(out.end(), fp.atoms.begin(), fp.atoms.end());
  return out;
}

bool OperationalStatePrior::operator==(const OperationalStatePrior& o) const {
  for (std::size_t i = 0; i < 6; ++i)
    if (families[i].atoms != o.families[i].atoms || families[i].evidence != o.families[i].evidence) return false;
  return true;
}

ConstraintAtom domain_atom(const VarDecl& d, const std::string& ssa_name) {
  return make_range(ssa_name, d.lo, d.hi, family_of(d.origin), AtomOrigin::Domain);
}

ConstraintAtom resolve_fsm(const ConstraintAtom& atom, const ToyArtifact& b) {
  if (atom.relation != Relation::FsmPrecedes) return atom;
  if (atom.family != Family::Proto && atom.family != Family::Runtime)
    throw EncodingError("fsm-precedes on '" + atom.var + "' must belong to the proto or runtime family");
  const ChannelSpec* owner = nullptr;
  for (const auto& ch : b.channels)
    if (ch.state_var == atom.var && ch.fsm) owner = &ch;
  if (!owner) throw EncodingError("fsm-precedes on '" + atom.var + "' which is not a channel state variable");
  const ChannelFsm& fsm = *owner->fsm;
  ConstraintAtom out = atom;
  out.operand.set.clear();
  if (fsm.reachable_from(fsm.initial).count(atom.operand.state)) {
    auto after = fsm.reachable_from(atom.operand.state);
    out.operand.set.assign(after.begin(), after.end());
  }
  out.operand.resolved = true;
  return out;
}

namespace {

class Encoder {
 public:
  Encoder(const OperationalStatePrior& prior, const ToyArtifact& b, const std::vector<std::string>& walk)
      : prior_(prior), b_(b) {
    enc_.walk = walk;
  }

  PathEncoding run() {
    if (enc_.walk.empty()) throw EncodingError("empty walk");
    for (const auto& v : b_.vars) current_[v.name] = v.name;
    for (const auto& fam : prior_.families)
      for (const auto& a : fam.atoms) {
        for (const auto& v : variables_of(a)) use(v);
        enc_.prior_atoms.push_back(resolve_fsm(a, b_));
      }
    for (const auto& v : b_.vars)
      if (v.origin == VarOrigin::Local) {
        use(v.name);
        parts_.push_back(Formula::of(make_atom(v.name, Relation::Eq, v.init)));
      }

    bool reached_sink = false;
    for (std::size_t i = 0; i < enc_.walk.size() && !reached_sink; ++i) {
      const Block* blk = b_.block(enc_.walk[i]);
      if (!blk) throw EncodingError("walk names missing block '" + enc_.walk[i] + "'");
      enc_.versions_at.push_back(current_);
      bool last = i + 1 == enc_.walk.size();
      const std::string next = last ? std::string() : enc_.walk[i + 1];
      bool left = false;
      for (const auto& ins : blk->instrs) {
        if (apply(ins, i, next, last, left, reached_sink)) break;
      }
      if (last) break;
      if (!left) take_edge(blk->id, next);
    }
    if (!reached_sink) throw EncodingError("walk does not end at a sink");
    enc_.path = Formula::all(std::move(parts_));
    return std::move(enc_);
  }

 private:
  const VarDecl& decl(const std::string& var) {
    const VarDecl* d = b_.var(var);
    if (!d) throw EncodingError("undeclared variable '" + var + "'");
    return *d;
  }

  const std::string& use(const std::string& var) {
    const VarDecl& d = decl(var);
    const std::string& name = current_.at(var);
    if (declared_.insert(name).second) {
      enc_.domain_atoms.push_back(domain_atom(d, name));
      enc_.base_of[name] = var;
    }
    return name;
  }

  // A channel field's first read keeps the bare name, so prior atoms over the
  // field constrain the first message.
  const std::string& fresh(const std::string& var) {
    const VarDecl& d = decl(var);
    int k = ++counter_[var];
    current_[var] = d.origin == VarOrigin::Channel && k == 1 ? var : var + "#" + std::to_string(k);
    return use(var);
  }

  ConstraintAtom rename(ConstraintAtom a) {
    a.var = use(a.var);
    if (a.operand.kind == Operand::Kind::VarRef) a.operand.var = use(a.operand.var);
    if (a.family == Family::Path) a.origin = AtomOrigin::Path;
    return a;
  }

  Formula rename(const Cube& c) {
    std::vector<Formula> out;
    for (const auto& a : c) out.push_back(Formula::of(rename(a)));
    return Formula::all(std::move(out));
  }

  Formula rename(const Dnf& d) {
    std::vector<Formula> out;
    for (const auto& c : d) out.push_back(rename(c));
    return Formula::any(std::move(out));
  }

  // Returns true when the block is left (or the walk ends) at this instruction.
  bool apply(const Instr& ins, std::size_t i, const std::string& next, bool last, bool& left, bool& reached_sink) {
    switch (ins.op) {
      case Instr::Op::Assign: assign(ins); return false;
      case Instr::Op::ReadChannel: read(ins, i); return false;
      case Instr::Op::Branch: {
        Formula cond = rename(ins.cond);
        if (!last && !ins.target.empty() && ins.target == next) {
          parts_.push_back(std::move(cond));
          left = true;
          return true;
        }
        parts_.push_back(negate(cond));
        return false;
      }
      case Instr::Op::Guard: {
        Formula pred = rename(ins.guard);
        if (!last && ins.handler == next) {
          parts_.push_back(std::move(pred));
          left = true;
          return true;
        }
        parts_.push_back(negate(pred));
        return false;
      }
      case Instr::Op::Sink:
        if (!last) return false;
        parts_.push_back(rename(ins.trigger));
        enc_.sink_block_index = i;
        enc_.sink_kind = ins.sink_kind;
        reached_sink = true;
        return true;
    }
    return false;
  }

  void assign(const Instr& ins) {
    const Expr& e = ins.expr;
    std::string src = e.kind == Expr::Kind::Const ? std::string() : use(e.var);
    const std::string dest = fresh(ins.dest);
    switch (e.kind) {
      case Expr::Kind::Const: parts_.push_back(Formula::of(make_atom(dest, Relation::Eq, e.k))); break;
      case Expr::Kind::Var: parts_.push_back(Formula::of(make_ref_atom(dest, Relation::Eq, src, e.k))); break;
      case Expr::Kind::Clamp:
        parts_.push_back(Formula::any({
            Formula::all({Formula::of(make_atom(src, Relation::Lt, e.lo)), Formula::of(make_atom(dest, Relation::Eq, e.lo))}),
            Formula::all({Formula::of(make_atom(src, Relation::Gt, e.hi)), Formula::of(make_atom(dest, Relation::Eq, e.hi))}),
            Formula::all({Formula::of(make_range(src, e.lo, e.hi)), Formula::of(make_ref_atom(dest, Relation::Eq, src))}),
        }));
        break;
    }
  }

  void read(const Instr& ins, std::size_t i) {
    const ChannelSpec* ch = b_.channel(ins.channel);
    if (!ch) throw EncodingError("unknown channel '" + ins.channel + "'");
    for (const auto& r : enc_.reads)
      if (r.channel == ch->name) {
        enc_.model_gap = true;
        enc_.gap_reason = "channel '" + ch->name + "' is read more than once on the walk";
      }
    ReadRecord rec{ch->name, i, {}};
    for (const auto& f : ch->fields) rec.field_versions[f] = fresh(f);
    if (!ch->state_var.empty()) use(ch->state_var);
    if (!ch->policy.empty()) parts_.push_back(negate(rename(ch->policy)));
    enc_.reads.push_back(std::move(rec));
  }

  void take_edge(const std::string& from, const std::string& next) {
    std::vector<Formula> options;
    std::vector<Formula> earlier_not_taken;
    for (const auto& e : b_.edges) {
      if (e.from != from) continue;
      Formula cond = e.cond ? rename(*e.cond) : Formula::truth();
      if (e.to == next) {
        auto opt = earlier_not_taken;
        opt.push_back(cond);
        options.push_back(Formula::all(std::move(opt)));
      }
      if (!e.cond) break;
      earlier_not_taken.push_back(negate(cond));
    }
    parts_.push_back(options.size() == 1 ? options.front() : Formula::any(std::move(options)));
  }

  const OperationalStatePrior& prior_;
  const ToyArtifact& b_;
  PathEncoding enc_;
  std::map<std::string, std::string> current_;
  std::map<std::string, int> counter_;
  std::set<std::string> declared_;
  std::vector<Formula> parts_;
};

}  // namespace

PathEncoding encode(const OperationalStatePrior& prior, const ToyArtifact& b, const std::vector<std::string>& walk) {
  return Encoder(prior, b, walk).run();
}

Formula PathEncoding::formula() const {
  std::vector<Formula> parts;
  for (const auto& a : domain_atoms) parts.push_back(Formula::of(a));
  for (const auto& a : prior_atoms) parts.push_back(Formula::of(a));
  parts.push_back(path);
  return Formula::all(std::move(parts));
}

Formula PathEncoding::formula_without(Family relaxed) const {
  std::vector<Formula> parts;
  for (const auto& a : domain_atoms) parts.push_back(Formula::of(a));
  for (const auto& a : prior_atoms)
    if (a.family != relaxed) parts.push_back(Formula::of(a));
  parts.push_back(path);
  return Formula::all(std::move(parts));
}

std::vector<ConstraintAtom> PathEncoding::atoms() const {
  std::vector<ConstraintAtom> out = domain_atoms;
  out.insert(out.end(), prior_atoms.begin(), prior_atoms.end());
  std::vector<const ConstraintAtom*> conj;
  collect_conjuncts(path, conj);
  for (const auto* a : conj) out.push_back(*a);
  return out;
}

Family relax_family(const std::vector<ConstraintAtom>& atoms, const OperationalStatePrior& prior) {
  std::optional<Family> best;
  for (Family f : kStateFamilies) {
    bool present = std::any_of(atoms.begin(), atoms.end(),
                               [&](const ConstraintAtom& a) { return a.origin == AtomOrigin::Prior && a.family == f; });
    if (!present) continue;
    if (!best || prior.at(f).evidence < prior.at(*best).evidence) best = f;
  }
  if (!best) throw ConstraintError("NothingToRelax: only path and domain atoms are present");
  return *best;
}

RelaxResult relax(const std::vector<ConstraintAtom>& atoms, const OperationalStatePrior& prior) {
  RelaxResult out;
  out.relaxed = relax_family(atoms, prior);
  for (const auto& a : atoms)
    if (!(a.origin == AtomOrigin::Prior && a.family == out.relaxed)) out.atoms.push_back(a);
  return out;
}

}  // namespace remedium
