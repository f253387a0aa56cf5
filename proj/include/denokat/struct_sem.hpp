#pragma once

#include <map>
#include <optional>

#include "denokat/while_sem.hpp"

namespace denokat {

/// Denotation of STRUCT statements (break / continue / loop).
struct SDenote {
    TracedRel nrm;
    TracedRel brk;
    TracedRel ctn;
    StateTraceSet err;
    StateTraceSet fin_dvg;
    LassoSet inf_dvg;
};

/// Denotation of BLOCK statements (block / exit n / sloop). `blk` maps the
/// number of block layers still to exit to the corresponding relation;
/// indices beyond the stored support denote the empty relation.
struct UDenote {
    TracedRel nrm;
    std::map<int, TracedRel> blk;
    StateTraceSet err;
    StateTraceSet fin_dvg;
    LassoSet inf_dvg;

    TracedRel blk_at(int n) const;
    uint32_t space = 0;
};

SDenote denote_struct(const StmtPtr& s, const ValueDomain& dom, int bound = kDefaultTraceBound);
UDenote denote_block(const StmtPtr& u, const ValueDomain& dom, int bound = kDefaultTraceBound);

/// Structured-control lowering: break -> exit n_b, continue -> exit n_c,
/// loop { s1 } { s2 } -> block { sloop { block { T(1,0,s1) }; T(0,n_c+1,s2) } }.
/// Returns nullopt on statements outside the STRUCT fragment.
std::optional<StmtPtr> lower_struct(const StmtPtr& s, int n_b, int n_c);

}  // namespace denokat
