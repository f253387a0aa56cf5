#pragma once

#include <optional>

#include "denokat/sets.hpp"
#include "denokat/syntax.hpp"

namespace denokat {

/// Per-state expression value; nullopt where evaluation aborts (div/mod by 0).
struct ExprDenote {
    std::vector<std::optional<Value>> val;
    StateSet err;
};

/// tts / ffs / err partition the state space.
struct BDenote {
    StateSet tts;
    StateSet ffs;
    StateSet err;
};

/// Type-safe trace-free denotation: normal termination + divergence.
struct CDenote {
    TracedRel nrm;  // traces all nil
    StateSet dvg;
};

/// Abort-aware trace-free denotation.
struct EDenote {
    TracedRel nrm;
    StateSet err;
    StateSet dvg;
};

/// Trace-enriched denotation with finite/infinite divergence split.
struct TDenote {
    TracedRel nrm;
    StateTraceSet err;
    StateTraceSet fin_dvg;
    LassoSet inf_dvg;

    bool any_truncated() const {
        return nrm.truncated() || err.truncated() || fin_dvg.truncated() || inf_dvg.truncated();
    }
};

ExprDenote eval_expr(const ExprPtr& e, const ValueDomain& dom);
BDenote eval_bexp(const BexpPtr& b, const ValueDomain& dom);

/// Type-safe nondeterministic WHILE. Throws if the statement can print, abort,
/// or uses constructs outside the WHILE fragment.
CDenote denote_while(const StmtPtr& s, const ValueDomain& dom);

/// WHILE with abortion (division / modulo by zero).
EDenote denote_whilee(const StmtPtr& s, const ValueDomain& dom);

/// Trace-enriched WHILE: print events, abortion, finite and infinite
/// divergence.
TDenote denote_twhile(const StmtPtr& s, const ValueDomain& dom, int bound = kDefaultTraceBound);

// Shared loop-divergence combinators (also used by the other languages).

/// (silent R)* . (nonsilent R): one observable step after finite stuttering.
TracedRel event_steps(const TracedRel& r, int bound = kDefaultTraceBound);

/// stepped finite divergence: R* . (D  U  (silent R)^infty)
StateTraceSet loop_fin_dvg(const TracedRel& step, const StateTraceSet& d, int bound);

/// stepped infinite divergence:
///   ((sil R)* . nsil R)* . (sil R)* . D   U   ((sil R)* . nsil R)^infty
LassoSet loop_inf_dvg(const TracedRel& step, const LassoSet& d, int bound);

}  // namespace denokat
