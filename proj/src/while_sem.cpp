#include "denokat/while_sem.hpp"

#include <stdexcept>

namespace denokat {

ExprDenote eval_expr(const ExprPtr& e, const ValueDomain& dom) {
    ExprDenote out;
    out.val.resize(dom.state_count());
    out.err = StateSet(dom.state_count());
    switch (e->kind) {
        case Expr::Kind::Const: {
            Value v = dom.norm(e->value);
            for (StateId s = 0; s < dom.state_count(); ++s) out.val[s] = v;
            return out;
        }
        case Expr::Kind::Var: {
            int idx = dom.var_index(e->var);
            for (StateId s = 0; s < dom.state_count(); ++s) out.val[s] = dom.get(s, idx);
            return out;
        }
        case Expr::Kind::Bin: {
            ExprDenote l = eval_expr(e->lhs, dom);
            ExprDenote r = eval_expr(e->rhs, dom);
            for (StateId s = 0; s < dom.state_count(); ++s) {
                if (!l.val[s] || !r.val[s]) {
                    out.err.insert(s);
                    continue;
                }
                int64_t a = *l.val[s], b = *r.val[s];
                switch (e->op) {
                    case ArithOp::Add: out.val[s] = dom.norm(a + b); break;
                    case ArithOp::Sub: out.val[s] = dom.norm(a - b); break;
                    case ArithOp::Mul: out.val[s] = dom.norm(a * b); break;
                    case ArithOp::Div:
                        if (b == 0)
                            out.err.insert(s);
                        else
                            out.val[s] = dom.norm(a / b);
                        break;
                    case ArithOp::Mod:
                        if (b == 0)
                            out.err.insert(s);
                        else
                            out.val[s] = dom.norm(a % b);
                        break;
                }
            }
            return out;
        }
    }
    throw std::logic_error("eval_expr: bad kind");
}

namespace {

struct BoolDenote {
    std::vector<std::optional<bool>> val;
    StateSet err;
};

BoolDenote eval_bool(const BexpPtr& b, const ValueDomain& dom) {
    BoolDenote out;
    out.val.resize(dom.state_count());
    out.err = StateSet(dom.state_count());
    switch (b->kind) {
        case Bexp::Kind::Lit:
            for (StateId s = 0; s < dom.state_count(); ++s) out.val[s] = b->lit;
            return out;
        case Bexp::Kind::Cmp: {
            ExprDenote l = eval_expr(b->lhs, dom);
            ExprDenote r = eval_expr(b->rhs, dom);
            for (StateId s = 0; s < dom.state_count(); ++s) {
                if (!l.val[s] || !r.val[s]) {
                    out.err.insert(s);
                    continue;
                }
                Value x = *l.val[s], y = *r.val[s];
                bool v = false;
                switch (b->op) {
                    case CmpOp::Eq: v = x == y; break;
                    case CmpOp::Ne: v = x != y; break;
                    case CmpOp::Lt: v = x < y; break;
                    case CmpOp::Le: v = x <= y; break;
                    case CmpOp::Gt: v = x > y; break;
                    case CmpOp::Ge: v = x >= y; break;
                }
                out.val[s] = v;
            }
            return out;
        }
        case Bexp::Kind::Not: {
            BoolDenote a = eval_bool(b->a, dom);
            for (StateId s = 0; s < dom.state_count(); ++s) {
                if (a.val[s])
                    out.val[s] = !*a.val[s];
                else
                    out.err.insert(s);
            }
            return out;
        }
        case Bexp::Kind::And:
        case Bexp::Kind::Or: {
            // short-circuit: the right operand is evaluated (and may abort)
            // only when the left does not decide the result
            BoolDenote l = eval_bool(b->a, dom);
            BoolDenote r = eval_bool(b->b, dom);
            bool is_and = b->kind == Bexp::Kind::And;
            for (StateId s = 0; s < dom.state_count(); ++s) {
                if (!l.val[s]) {
                    out.err.insert(s);
                    continue;
                }
                bool lv = *l.val[s];
                if (is_and ? !lv : lv) {
                    out.val[s] = lv;
                    continue;
                }
                if (!r.val[s]) {
                    out.err.insert(s);
                    continue;
                }
                out.val[s] = *r.val[s];
            }
            return out;
        }
    }
    throw std::logic_error("eval_bool: bad kind");
}

}  // namespace

BDenote eval_bexp(const BexpPtr& b, const ValueDomain& dom) {
    BoolDenote bd = eval_bool(b, dom);
    BDenote out{StateSet(dom.state_count()), StateSet(dom.state_count()), bd.err};
    for (StateId s = 0; s < dom.state_count(); ++s) {
        if (!bd.val[s]) continue;
        if (*bd.val[s])
            out.tts.insert(s);
        else
            out.ffs.insert(s);
    }
    return out;
}

TracedRel event_steps(const TracedRel& r, int bound) {
    return compose_rel(star(silent(r), bound), nonsilent(r), bound);
}

StateTraceSet loop_fin_dvg(const TracedRel& step, const StateTraceSet& d, int bound) {
    StateTraceSet inner = union_sts(d, omega_silent(silent(step)));
    return compose_rel_set(star(step, bound), inner, bound);
}

LassoSet loop_inf_dvg(const TracedRel& step, const LassoSet& d, int bound) {
    TracedRel ev = event_steps(step, bound);
    LassoSet body =
        compose_rel_lasso(star(ev, bound), compose_rel_lasso(star(silent(step), bound), d, bound),
                          bound);
    return union_lasso(body, omega_lasso(ev, bound));
}

// --- trace-free abort-aware semantics -------------------------------------------

namespace {

void check_while_fragment(const StmtPtr& s) {
    switch (s->kind) {
        case StmtKind::Skip:
        case StmtKind::Assign:
        case StmtKind::Havoc:
        case StmtKind::Print: return;
        case StmtKind::Seq:
        case StmtKind::Choice:
            check_while_fragment(s->a);
            check_while_fragment(s->b);
            return;
        case StmtKind::If:
            check_while_fragment(s->a);
            check_while_fragment(s->b);
            return;
        case StmtKind::While: check_while_fragment(s->a); return;
        default: throw std::invalid_argument("statement outside the WHILE fragment");
    }
}

EDenote denote_e(const StmtPtr& s, const ValueDomain& dom) {
    uint32_t n = dom.state_count();
    EDenote out{TracedRel(n, n), StateSet(n), StateSet(n)};
    switch (s->kind) {
        case StmtKind::Skip: out.nrm = id_rel(n); return out;
        case StmtKind::Assign: {
            ExprDenote e = eval_expr(s->expr, dom);
            int idx = dom.var_index(s->var);
            for (StateId st = 0; st < n; ++st)
                if (e.val[st]) out.nrm.insert(st, {}, dom.put(st, idx, *e.val[st]));
            out.err = e.err;
            return out;
        }
        case StmtKind::Havoc: {
            int idx = dom.var_index(s->var);
            for (StateId st = 0; st < n; ++st)
                for (Value v = 0; v < dom.modulus(); ++v) out.nrm.insert(st, {}, dom.put(st, idx, v));
            return out;
        }
        case StmtKind::Print: throw std::invalid_argument("print is not available without traces");
        case StmtKind::Seq: {
            EDenote a = denote_e(s->a, dom), b = denote_e(s->b, dom);
            out.nrm = compose_rel(a.nrm, b.nrm);
            out.err = union_ss(a.err, compose_rel_states(a.nrm, b.err));
            out.dvg = union_ss(a.dvg, compose_rel_states(a.nrm, b.dvg));
            return out;
        }
        case StmtKind::Choice: {
            EDenote a = denote_e(s->a, dom), b = denote_e(s->b, dom);
            out.nrm = union_rel(a.nrm, b.nrm);
            out.err = union_ss(a.err, b.err);
            out.dvg = union_ss(a.dvg, b.dvg);
            return out;
        }
        case StmtKind::If: {
            BDenote c = eval_bexp(s->cond, dom);
            EDenote a = denote_e(s->a, dom), b = denote_e(s->b, dom);
            TracedRel tt = test(c.tts), ff = test(c.ffs);
            out.nrm = union_rel(compose_rel(tt, a.nrm), compose_rel(ff, b.nrm));
            out.err = union_ss(c.err, union_ss(compose_rel_states(tt, a.err),
                                               compose_rel_states(ff, b.err)));
            out.dvg = union_ss(compose_rel_states(tt, a.dvg), compose_rel_states(ff, b.dvg));
            return out;
        }
        case StmtKind::While: {
            BDenote c = eval_bexp(s->cond, dom);
            EDenote body = denote_e(s->a, dom);
            TracedRel tt = test(c.tts);
            TracedRel step = compose_rel(tt, body.nrm);
            TracedRel closure = star(step);
            out.nrm = compose_rel(closure, test(c.ffs));
            out.err = compose_rel_states(closure, union_ss(c.err, compose_rel_states(tt, body.err)));
            out.dvg = union_ss(compose_rel_states(closure, compose_rel_states(tt, body.dvg)),
                               omega_silent_states(step));
            return out;
        }
        default: throw std::invalid_argument("statement outside the WHILE fragment");
    }
}

}  // namespace

EDenote denote_whilee(const StmtPtr& s, const ValueDomain& dom) {
    check_while_fragment(s);
    if (contains_kind(s, StmtKind::Print))
        throw std::invalid_argument("print is not available without traces");
    return denote_e(s, dom);
}

CDenote denote_while(const StmtPtr& s, const ValueDomain& dom) {
    EDenote e = denote_whilee(s, dom);
    if (!e.err.empty())
        throw std::invalid_argument("program can abort; use the abort-aware semantics");
    return CDenote{std::move(e.nrm), std::move(e.dvg)};
}

// --- trace-enriched semantics ----------------------------------------------------

namespace {

StateTraceSet lift_err(const StateSet& e) {
    StateTraceSet out(e.space());
    for (StateId s : e.items()) out.insert(s, {});
    out.set_truncated(e.truncated());
    return out;
}

TDenote denote_t(const StmtPtr& s, const ValueDomain& dom, int bound) {
    uint32_t n = dom.state_count();
    TDenote out{TracedRel(n, n), StateTraceSet(n), StateTraceSet(n), LassoSet(n)};
    switch (s->kind) {
        case StmtKind::Skip: out.nrm = id_rel(n); return out;
        case StmtKind::Assign: {
            ExprDenote e = eval_expr(s->expr, dom);
            int idx = dom.var_index(s->var);
            for (StateId st = 0; st < n; ++st)
                if (e.val[st]) out.nrm.insert(st, {}, dom.put(st, idx, *e.val[st]));
            out.err = lift_err(e.err);
            return out;
        }
        case StmtKind::Havoc: {
            int idx = dom.var_index(s->var);
            for (StateId st = 0; st < n; ++st)
                for (Value v = 0; v < dom.modulus(); ++v) out.nrm.insert(st, {}, dom.put(st, idx, v));
            return out;
        }
        case StmtKind::Print: {
            ExprDenote e = eval_expr(s->expr, dom);
            for (StateId st = 0; st < n; ++st)
                if (e.val[st]) out.nrm.insert(st, Trace{*e.val[st]}, st);
            out.err = lift_err(e.err);
            return out;
        }
        case StmtKind::Seq: {
            TDenote a = denote_t(s->a, dom, bound), b = denote_t(s->b, dom, bound);
            out.nrm = compose_rel(a.nrm, b.nrm, bound);
            out.err = union_sts(a.err, compose_rel_set(a.nrm, b.err, bound));
            out.fin_dvg = union_sts(a.fin_dvg, compose_rel_set(a.nrm, b.fin_dvg, bound));
            out.inf_dvg = union_lasso(a.inf_dvg, compose_rel_lasso(a.nrm, b.inf_dvg, bound));
            return out;
        }
        case StmtKind::Choice: {
            TDenote a = denote_t(s->a, dom, bound), b = denote_t(s->b, dom, bound);
            out.nrm = union_rel(a.nrm, b.nrm);
            out.err = union_sts(a.err, b.err);
            out.fin_dvg = union_sts(a.fin_dvg, b.fin_dvg);
            out.inf_dvg = union_lasso(a.inf_dvg, b.inf_dvg);
            return out;
        }
        case StmtKind::If: {
            BDenote c = eval_bexp(s->cond, dom);
            TDenote a = denote_t(s->a, dom, bound), b = denote_t(s->b, dom, bound);
            TracedRel tt = test(c.tts), ff = test(c.ffs);
            out.nrm = union_rel(compose_rel(tt, a.nrm, bound), compose_rel(ff, b.nrm, bound));
            out.err = union_sts(lift_err(c.err), union_sts(compose_rel_set(tt, a.err, bound),
                                                           compose_rel_set(ff, b.err, bound)));
            out.fin_dvg = union_sts(compose_rel_set(tt, a.fin_dvg, bound),
                                    compose_rel_set(ff, b.fin_dvg, bound));
            out.inf_dvg = union_lasso(compose_rel_lasso(tt, a.inf_dvg, bound),
                                      compose_rel_lasso(ff, b.inf_dvg, bound));
            return out;
        }
        case StmtKind::While: {
            BDenote c = eval_bexp(s->cond, dom);
            TDenote body = denote_t(s->a, dom, bound);
            TracedRel tt = test(c.tts);
            TracedRel step = compose_rel(tt, body.nrm, bound);
            TracedRel closure = star(step, bound);
            out.nrm = compose_rel(closure, test(c.ffs), bound);
            out.err = compose_rel_set(
                closure, union_sts(lift_err(c.err), compose_rel_set(tt, body.err, bound)), bound);
            out.fin_dvg = loop_fin_dvg(step, compose_rel_set(tt, body.fin_dvg, bound), bound);
            out.inf_dvg = loop_inf_dvg(step, compose_rel_lasso(tt, body.inf_dvg, bound), bound);
            return out;
        }
        default: throw std::invalid_argument("statement outside the WHILE fragment");
    }
}

}  // namespace

TDenote denote_twhile(const StmtPtr& s, const ValueDomain& dom, int bound) {
    check_while_fragment(s);
    return denote_t(s, dom, bound);
}

}  // namespace denokat
