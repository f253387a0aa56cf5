#pragma once

#include "denokat/pcall_sem.hpp"

namespace denokat {

/// Per-procedure CFG state space: (label, lstate, gstate) flattened to ids.
/// The exit label is part of the space; it carries no instruction.
struct CfgSpace {
    std::vector<std::string> labels;  // sorted, includes entry and exit
    SplitDomain sd;

    uint32_t size() const { return static_cast<uint32_t>(labels.size()) * sd.state_count(); }
    int label_index(const std::string& l) const;
    StateId at(int label_idx, StateId s) const {
        return static_cast<StateId>(label_idx) * sd.state_count() + s;
    }
    int label_of(StateId c) const { return static_cast<int>(c / sd.state_count()); }
    StateId state_of(StateId c) const { return c % sd.state_count(); }
};

CfgSpace cfg_space(const CfgProc& p, int mod, const std::vector<std::string>& globals);

/// Union of all node denotations of one graph.
struct CfgGraphDenote {
    TracedRel nrm;      // cfgstate -> cfgstate
    StateTraceSet err;  // cfgstate
    TracedRel cll;      // cfgstate -> query
};

/// Denotation of one instruction located at `label`; jump rewrites only the
/// label component.
CfgGraphDenote denote_instr(const std::string& label, const CfgInstr& ins, const TracedRel& chi,
                            const CfgSpace& cs, const QuerySpace& qs,
                            int bound = kDefaultTraceBound);

CfgGraphDenote denote_cfg_graph(const CfgProc& p, const TracedRel& chi, const CfgSpace& cs,
                                const QuerySpace& qs, int bound = kDefaultTraceBound);

/// Procedure-level denotation via the reflexive transitive closure of the
/// node relation, from the entry label with zero-initialized locals.
ProcDenote denote_cfg_proc(const CfgProc& p, const TracedRel& chi, const ValueDomain& gdom,
                           const QuerySpace& qs, int mod, int bound = kDefaultTraceBound);

IdentSpace collect_idents_cfg(const std::vector<const CfgModule*>& mods, const OracleChi* chi);

MDenote denote_cfg_module(const CfgModule& m, const OracleChi& chi, const IdentSpace& idents,
                          int mod, int bound = kDefaultTraceBound);

MDenote semantic_link_cfg(const CfgModule& m1, const CfgModule& m2, const OracleChi& chi,
                          const IdentSpace& idents, int mod, int bound = kDefaultTraceBound);

}  // namespace denokat
