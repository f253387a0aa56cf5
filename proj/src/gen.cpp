#include "denokat/gen.hpp"

#include <algorithm>
#include <numeric>

namespace denokat {

namespace {

// subsets ordered by popcount so that predecessors are filled first
std::vector<uint32_t> masks_by_popcount(int n) {
    std::vector<uint32_t> order(1u << n);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [](uint32_t a, uint32_t b) {
        return __builtin_popcount(a) < __builtin_popcount(b);
    });
    return order;
}

uint32_t random_mask(Rng& rng, int bits, int inv_density = 3) {
    uint32_t m = 0;
    for (int i = 0; i < bits; ++i)
        if (rng.chance(1, inv_density)) m |= (1u << i);
    return m;
}

}  // namespace

MonoFn random_monotone_fn(Rng& rng, int n) {
    MonoFn f;
    f.n = n;
    f.table.assign(1u << n, 0);
    for (uint32_t mask : masks_by_popcount(n)) {
        uint32_t base = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) base |= f.table[mask & ~(1u << i)];
        f.table[mask] = base | random_mask(rng, n);
    }
    return f;
}

MonoFn2 random_monotone_fn2(Rng& rng, int n1, int n2, int m) {
    MonoFn2 f;
    f.n1 = n1;
    f.n2 = n2;
    f.m = m;
    f.table.assign(1u << (n1 + n2), 0);
    // order pairs by total popcount; predecessors drop one element from one side
    std::vector<uint32_t> order(1u << (n1 + n2));
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [](uint32_t a, uint32_t b) {
        return __builtin_popcount(a) < __builtin_popcount(b);
    });
    for (uint32_t key : order) {
        uint32_t a = key >> n2, b = key & ((1u << n2) - 1);
        uint32_t base = 0;
        for (int i = 0; i < n1; ++i)
            if (a & (1u << i)) base |= f.table[((a & ~(1u << i)) << n2) | b];
        for (int i = 0; i < n2; ++i)
            if (b & (1u << i)) base |= f.table[(a << n2) | (b & ~(1u << i))];
        f.table[key] = base | random_mask(rng, m);
    }
    return f;
}

TracedRel random_rel(Rng& rng, uint32_t space, int max_steps, int max_trace, int alphabet) {
    TracedRel r(space, space);
    int count = rng.range(0, max_steps);
    for (int i = 0; i < count; ++i) {
        Trace tr;
        int len = rng.range(0, max_trace);
        for (int k = 0; k < len; ++k) tr.push_back(static_cast<Value>(rng.below(alphabet)));
        r.insert(static_cast<StateId>(rng.below(space)), std::move(tr),
                 static_cast<StateId>(rng.below(space)));
    }
    return r;
}

StateTraceSet random_sts(Rng& rng, uint32_t space, int max_items, int max_trace, int alphabet) {
    StateTraceSet y(space);
    int count = rng.range(0, max_items);
    for (int i = 0; i < count; ++i) {
        Trace tr;
        int len = rng.range(0, max_trace);
        for (int k = 0; k < len; ++k) tr.push_back(static_cast<Value>(rng.below(alphabet)));
        y.insert(static_cast<StateId>(rng.below(space)), std::move(tr));
    }
    return y;
}

StateSet random_ss(Rng& rng, uint32_t space) {
    StateSet x(space);
    for (StateId s = 0; s < space; ++s)
        if (rng.chance(1, 2)) x.insert(s);
    return x;
}

namespace {

ExprPtr random_expr(Rng& rng, const ProgramGenOptions& opt, int depth) {
    if (depth <= 0 || rng.chance(1, 2)) {
        if (!opt.vars.empty() && rng.chance(2, 3)) return Expr::variable(rng.pick(opt.vars));
        return Expr::constant(static_cast<Value>(rng.below(3)));
    }
    int top = opt.allow_div ? 4 : 2;
    ArithOp op = static_cast<ArithOp>(rng.range(0, top));
    return Expr::bin(op, random_expr(rng, opt, depth - 1), random_expr(rng, opt, depth - 1));
}

BexpPtr random_bexp(Rng& rng, const ProgramGenOptions& opt, int depth) {
    if (depth <= 0 || rng.chance(1, 2)) {
        CmpOp op = static_cast<CmpOp>(rng.range(0, 5));
        return Bexp::cmp(op, random_expr(rng, opt, 1), random_expr(rng, opt, 1));
    }
    switch (rng.range(0, 2)) {
        case 0: return Bexp::negate(random_bexp(rng, opt, depth - 1));
        case 1: return Bexp::conj(random_bexp(rng, opt, depth - 1), random_bexp(rng, opt, depth - 1));
        default: return Bexp::disj(random_bexp(rng, opt, depth - 1), random_bexp(rng, opt, depth - 1));
    }
}

/// Loop whose body strictly decreases a counter while the condition requires
/// it positive, so the loop terminates and star saturates quickly.
StmtPtr terminating_while(Rng& rng, const ProgramGenOptions& opt) {
    const std::string& v = rng.pick(opt.vars);
    BexpPtr cond = Bexp::cmp(CmpOp::Gt, Expr::variable(v), Expr::constant(0));
    StmtPtr dec = Stmt::assign(v, Expr::bin(ArithOp::Sub, Expr::variable(v), Expr::constant(1)));
    StmtPtr body = dec;
    if (opt.allow_print && rng.chance(1, 2))
        body = Stmt::seq(Stmt::print(random_expr(rng, opt, 1)), body);
    return Stmt::while_(cond, body);
}

StmtPtr random_leaf(Rng& rng, const ProgramGenOptions& opt) {
    for (;;) {
        switch (rng.range(0, 3)) {
            case 0: return Stmt::skip();
            case 1:
                if (opt.vars.empty()) continue;
                return Stmt::assign(rng.pick(opt.vars), random_expr(rng, opt, 2));
            case 2:
                if (!opt.allow_havoc || opt.vars.empty()) continue;
                return Stmt::havoc(rng.pick(opt.vars));
            default:
                if (!opt.allow_print) continue;
                return Stmt::print(random_expr(rng, opt, 1));
        }
    }
}

StmtPtr random_while_rec(Rng& rng, const ProgramGenOptions& opt, int depth) {
    if (depth <= 0) return random_leaf(rng, opt);
    switch (rng.range(0, 4)) {
        case 0: return random_leaf(rng, opt);
        case 1:
            return Stmt::seq(random_while_rec(rng, opt, depth - 1),
                             random_while_rec(rng, opt, depth - 1));
        case 2:
            return Stmt::choice(random_while_rec(rng, opt, depth - 1),
                                random_while_rec(rng, opt, depth - 1));
        case 3:
            return Stmt::if_(random_bexp(rng, opt, 1), random_while_rec(rng, opt, depth - 1),
                             random_while_rec(rng, opt, depth - 1));
        default:
            if (!opt.allow_while) return random_leaf(rng, opt);
            if (opt.loops_terminate && !opt.vars.empty()) return terminating_while(rng, opt);
            return Stmt::while_(random_bexp(rng, opt, 1), random_while_rec(rng, opt, depth - 1));
    }
}

StmtPtr random_struct_rec(Rng& rng, const ProgramGenOptions& opt, int depth) {
    if (depth <= 0) {
        switch (rng.range(0, 3)) {
            case 0: return Stmt::brk();
            case 1: return Stmt::cont();
            default: return random_leaf(rng, opt);
        }
    }
    switch (rng.range(0, 5)) {
        case 0: return random_struct_rec(rng, opt, 0);
        case 1:
            return Stmt::seq(random_struct_rec(rng, opt, depth - 1),
                             random_struct_rec(rng, opt, depth - 1));
        case 2:
            return Stmt::choice(random_struct_rec(rng, opt, depth - 1),
                                random_struct_rec(rng, opt, depth - 1));
        case 3:
            return Stmt::if_(random_bexp(rng, opt, 1), random_struct_rec(rng, opt, depth - 1),
                             random_struct_rec(rng, opt, depth - 1));
        default:
            return Stmt::loop(random_struct_rec(rng, opt, depth - 1), random_leaf(rng, opt));
    }
}

StmtPtr random_pcall_body(Rng& rng, const ProgramGenOptions& opt,
                          const std::vector<std::string>& callable, int depth) {
    if (!callable.empty() && rng.chance(1, 4)) return Stmt::call(rng.pick(callable));
    if (depth <= 0) return random_leaf(rng, opt);
    switch (rng.range(0, 3)) {
        case 0: return random_leaf(rng, opt);
        case 1:
            return Stmt::seq(random_pcall_body(rng, opt, callable, depth - 1),
                             random_pcall_body(rng, opt, callable, depth - 1));
        case 2:
            return Stmt::if_(random_bexp(rng, opt, 1),
                             random_pcall_body(rng, opt, callable, depth - 1),
                             random_pcall_body(rng, opt, callable, depth - 1));
        default:
            if (opt.vars.empty()) return random_leaf(rng, opt);
            return terminating_while(rng, opt);
    }
}

}  // namespace

StmtPtr random_while_stmt(Rng& rng, const ProgramGenOptions& opt) {
    return random_while_rec(rng, opt, opt.depth);
}

StmtPtr random_struct_stmt(Rng& rng, const ProgramGenOptions& opt) {
    return random_struct_rec(rng, opt, opt.depth);
}

Module random_module(Rng& rng, const std::vector<std::string>& globals, int max_procs,
                     const std::vector<std::string>& names,
                     const std::vector<std::string>& callable, bool allow_print) {
    Module m;
    m.globals = globals;
    int count = rng.range(1, max_procs);
    for (int i = 0; i < count && i < static_cast<int>(names.size()); ++i) {
        Procedure p;
        p.name = names[static_cast<size_t>(i)];
        if (rng.chance(1, 2)) p.locals = {"t"};
        ProgramGenOptions opt;
        opt.vars = globals;
        for (const auto& l : p.locals) opt.vars.push_back(l);
        opt.allow_print = allow_print;
        opt.allow_havoc = false;
        p.body = random_pcall_body(rng, opt, callable, 2);
        m.procs.push_back(std::move(p));
    }
    return m;
}

CfgModule random_cfg_module(Rng& rng, const std::vector<std::string>& globals, int max_procs,
                            const std::vector<std::string>& names,
                            const std::vector<std::string>& callable, bool allow_print) {
    CfgModule m;
    m.globals = globals;
    int count = rng.range(1, max_procs);
    ProgramGenOptions opt;
    opt.vars = globals;
    opt.allow_print = allow_print;
    opt.allow_havoc = false;
    for (int pi = 0; pi < count && pi < static_cast<int>(names.size()); ++pi) {
        CfgProc p;
        p.name = names[static_cast<size_t>(pi)];
        int nodes = rng.range(1, 4);
        p.entry = "L0";
        p.exit = "LX";
        auto label = [](int i) { return "L" + std::to_string(i); };
        for (int i = 0; i < nodes; ++i) {
            // successors point forward (or to the exit); back edges are guarded
            // by a strictly decreasing counter so runs terminate
            std::string next = (i + 1 < nodes) ? label(i + 1) : std::string("LX");
            int shape = rng.range(0, 2);
            if (shape == 1 && callable.empty()) shape = 0;
            switch (shape) {
                case 0: {
                    StmtPtr atom = random_leaf(rng, opt);
                    p.graph.emplace(label(i), CfgInstr::do_(atom, next));
                    break;
                }
                case 1:
                    p.graph.emplace(label(i), CfgInstr::call(rng.pick(callable), next));
                    break;
                default: {
                    if (i > 0 && !globals.empty() && rng.chance(1, 2)) {
                        const std::string& v = rng.pick(globals);
                        std::string dec = "D" + std::to_string(i);
                        p.graph.emplace(
                            label(i),
                            CfgInstr::cond(Bexp::cmp(CmpOp::Gt, Expr::variable(v), Expr::constant(0)),
                                           dec, next));
                        p.graph.emplace(
                            dec, CfgInstr::do_(Stmt::assign(v, Expr::bin(ArithOp::Sub,
                                                                         Expr::variable(v),
                                                                         Expr::constant(1))),
                                               label(rng.range(0, i))));
                    } else {
                        p.graph.emplace(label(i), CfgInstr::cond(random_bexp(rng, opt, 1), next, "LX"));
                    }
                    break;
                }
            }
        }
        validate_cfg_proc(p);
        m.procs.push_back(std::move(p));
    }
    return m;
}

CfgProc random_cfg_proc(Rng& rng, const std::string& name,
                        const std::vector<std::string>& globals, int max_nodes, bool allow_print) {
    (void)max_nodes;
    return random_cfg_module(rng, globals, 1, {name}, {}, allow_print).procs.at(0);
}

}  // namespace denokat
