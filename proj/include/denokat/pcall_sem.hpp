#pragma once

#include <set>
#include <tuple>

#include "denokat/while_sem.hpp"

namespace denokat {

/// Universe of procedure names a scenario can mention (defined, called, or
/// interpreted by an oracle). Queries are encoded against this universe.
class IdentSpace {
public:
    IdentSpace() = default;
    explicit IdentSpace(std::vector<std::string> names);

    const std::vector<std::string>& names() const { return names_; }
    size_t size() const { return names_.size(); }
    int index(const std::string& name) const;  // throws on unknown name
    bool has(const std::string& name) const;

    bool operator==(const IdentSpace& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;  // sorted, unique
};

/// All names appearing in the given modules, bodies, and oracle.
IdentSpace collect_idents(const std::vector<const Module*>& mods, const struct OracleChi* chi);

/// Query space: (ident, gstate) pairs flattened to ids.
struct QuerySpace {
    const IdentSpace* idents = nullptr;
    uint32_t gcount = 0;

    uint32_t size() const { return static_cast<uint32_t>(idents->size()) * gcount; }
    StateId qid(int ident_idx, StateId g) const {
        return static_cast<StateId>(ident_idx) * gcount + g;
    }
    int ident_of(StateId q) const { return static_cast<int>(q / gcount); }
    StateId g_of(StateId q) const { return q % gcount; }
};

/// Semantic oracle: (callee, g_before, trace, g_after) quadruples interpreting
/// the terminating behavior of procedures external to the unit being denoted.
struct OracleChi {
    std::set<std::tuple<std::string, StateId, Trace, StateId>> entries;

    void add(std::string name, StateId g0, Trace tr, StateId g1) {
        entries.insert({std::move(name), g0, std::move(tr), g1});
    }
    bool operator==(const OracleChi& o) const { return entries == o.entries; }
};

/// Oracle lowered onto a query space: relation query -> gstate.
TracedRel chi_to_rel(const OracleChi& chi, const QuerySpace& qs);
OracleChi rel_to_chi(const TracedRel& rel, const QuerySpace& qs);

/// ecall(X): the queries whose ident lies outside X.
StateSet ecall(const std::vector<std::string>& defined, const QuerySpace& qs);

/// Statement-level denotation of a procedure body, over the combined
/// local x global state space of its procedure.
struct PStmtDenote {
    TracedRel nrm;        // state -> state
    StateTraceSet err;    // state x trace
    TracedRel cll;        // state -> query
    TracedRel gto;        // state -> (label, state); labels indexed per body
    StateTraceSet fin_dvg;
    LassoSet inf_dvg;
};

/// Label universe of one procedure body; index labels().size() encodes
/// "target label not defined here".
struct LabelSpace {
    std::vector<std::string> labels;  // sorted, unique
    uint32_t states = 0;

    uint32_t size() const { return static_cast<uint32_t>(labels.size() + 1) * states; }
    int index(const std::string& l) const;
    StateId gid(int label_idx, StateId s) const {
        return static_cast<StateId>(label_idx) * states + s;
    }
    int label_of(StateId g) const { return static_cast<int>(g / states); }
    StateId state_of(StateId g) const { return g % states; }
    bool is_undefined(StateId g) const {
        return label_of(g) == static_cast<int>(labels.size());
    }
};

LabelSpace collect_labels(const StmtPtr& body, uint32_t states);

PStmtDenote denote_pstmt(const StmtPtr& s, const TracedRel& chi, const SplitDomain& sd,
                         const QuerySpace& qs, const LabelSpace& ls,
                         int bound = kDefaultTraceBound);

/// Procedure-level denotation: behavior sets over the query space, keyed by
/// (procedure name, entry global state). Locals are zero-initialized on entry
/// and discarded on exit; goto closure is resolved here.
struct ProcDenote {
    TracedRel nrm;       // query -> gstate
    StateTraceSet err;   // query x trace
    TracedRel cll;       // query -> query
    StateTraceSet fin_dvg;
    LassoSet inf_dvg;

    static ProcDenote empty(const QuerySpace& qs);
    ProcDenote merged(const ProcDenote& o) const;  // pointwise union
};

ProcDenote denote_procedure(const Procedure& p, const TracedRel& chi, const ValueDomain& gdom,
                            const QuerySpace& qs, int mod, int bound = kDefaultTraceBound);

/// Flat variable domain over locals followed by globals, so that local id 0 is
/// the all-zero store.
ValueDomain combined_domain(const SplitDomain& sd);

/// Module-level denotation.
struct MDenote {
    std::vector<std::string> dom;  // defined procedure names, sorted
    TracedRel nrm;                 // query -> gstate
    StateTraceSet err;
    TracedRel cll;                 // query -> query, external targets only
    StateTraceSet fin_dvg;
    LassoSet inf_dvg;
    int lfp_iterations = 0;

    bool operator==(const MDenote& o) const {
        return dom == o.dom && nrm == o.nrm && err == o.err && cll == o.cll &&
               fin_dvg == o.fin_dvg && inf_dvg == o.inf_dvg;
    }
    bool any_truncated() const {
        return nrm.truncated() || err.truncated() || cll.truncated() || fin_dvg.truncated() ||
               inf_dvg.truncated();
    }
};

/// Module-level err/cll/fin_dvg/inf_dvg equations over the merged
/// procedure-level behavior sets (shared with the CFG language).
void finish_module(MDenote& out, const ProcDenote& all, const QuerySpace& qs, int bound);

MDenote denote_module(const Module& m, const OracleChi& chi, const IdentSpace& idents, int mod,
                      int bound = kDefaultTraceBound);

/// Semantic linking: joint fixed point over the two modules' own denotations.
/// Both modules must declare the same globals and disjoint procedure names.
MDenote semantic_link(const Module& m1, const Module& m2, const OracleChi& chi,
                      const IdentSpace& idents, int mod, int bound = kDefaultTraceBound);

}  // namespace denokat
