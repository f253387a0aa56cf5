#pragma once

#include <cstdint>
#include <vector>

#include "denokat/rng.hpp"
#include "denokat/sets.hpp"
#include "denokat/syntax.hpp"

namespace denokat {

/// Monotone function on the powerset lattice 2^n, tabulated per bitmask.
struct MonoFn {
    int n = 0;
    std::vector<uint32_t> table;  // table[mask] = f(mask)

    uint32_t operator()(uint32_t mask) const { return table[mask]; }
};

/// Monotone binary function 2^n1 x 2^n2 -> 2^m, tabulated per mask pair.
struct MonoFn2 {
    int n1 = 0, n2 = 0, m = 0;
    std::vector<uint32_t> table;

    uint32_t operator()(uint32_t a, uint32_t b) const { return table[(a << n2) | b]; }
};

MonoFn random_monotone_fn(Rng& rng, int n);
MonoFn2 random_monotone_fn2(Rng& rng, int n1, int n2, int m);

/// Random traced relation over `space` states; traces of length <= max_trace
/// with event values below `alphabet`.
TracedRel random_rel(Rng& rng, uint32_t space, int max_steps, int max_trace, int alphabet);
StateTraceSet random_sts(Rng& rng, uint32_t space, int max_items, int max_trace, int alphabet);
StateSet random_ss(Rng& rng, uint32_t space);

struct ProgramGenOptions {
    int depth = 4;
    bool allow_print = true;
    bool allow_havoc = true;
    bool allow_div = false;          // division / modulo (abort source)
    bool allow_while = true;
    bool loops_terminate = true;     // bias loop conditions toward termination
    std::vector<std::string> vars;
};

/// Random WHILE-fragment statement over the given variables.
StmtPtr random_while_stmt(Rng& rng, const ProgramGenOptions& opt);

/// Random STRUCT statement (break/continue/loop extensions).
StmtPtr random_struct_stmt(Rng& rng, const ProgramGenOptions& opt);

/// Random PCALL module: up to max_procs procedures over the given globals;
/// bodies may call any name from `callable`.
Module random_module(Rng& rng, const std::vector<std::string>& globals, int max_procs,
                     const std::vector<std::string>& names,
                     const std::vector<std::string>& callable, bool allow_print);

/// Random call-free single-procedure CFG over the given globals.
CfgProc random_cfg_proc(Rng& rng, const std::string& name,
                        const std::vector<std::string>& globals, int max_nodes, bool allow_print);

/// Random CFG module whose procedures may call names in `callable`.
CfgModule random_cfg_module(Rng& rng, const std::vector<std::string>& globals, int max_procs,
                            const std::vector<std::string>& names,
                            const std::vector<std::string>& callable, bool allow_print);

}  // namespace denokat
