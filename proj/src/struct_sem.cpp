#include "denokat/struct_sem.hpp"

#include <stdexcept>

namespace denokat {

namespace {

StateTraceSet lift_err(const StateSet& e) {
    StateTraceSet out(e.space());
    for (StateId s : e.items()) out.insert(s, {});
    return out;
}

/// Forget target states: turn stranded control transfers into err entries.
StateTraceSet drop_target(const TracedRel& r) {
    StateTraceSet out(r.src_space());
    for (const Step& s : r.steps()) out.insert(s.src, s.tr);
    out.set_truncated(r.truncated());
    return out;
}

TDenote denote_atom(const StmtPtr& s, const ValueDomain& dom, int bound) {
    return denote_twhile(s, dom, bound);
}

}  // namespace

TracedRel UDenote::blk_at(int n) const {
    auto it = blk.find(n);
    if (it != blk.end()) return it->second;
    return TracedRel(space, space);
}

SDenote denote_struct(const StmtPtr& s, const ValueDomain& dom, int bound) {
    uint32_t n = dom.state_count();
    SDenote out{TracedRel(n, n), TracedRel(n, n), TracedRel(n, n),
                StateTraceSet(n), StateTraceSet(n), LassoSet(n)};
    switch (s->kind) {
        case StmtKind::Skip:
        case StmtKind::Assign:
        case StmtKind::Havoc:
        case StmtKind::Print: {
            TDenote d = denote_atom(s, dom, bound);
            out.nrm = d.nrm;
            out.err = d.err;
            return out;
        }
        case StmtKind::Break: out.brk = id_rel(n); return out;
        case StmtKind::Continue: out.ctn = id_rel(n); return out;
        case StmtKind::Seq: {
            SDenote a = denote_struct(s->a, dom, bound), b = denote_struct(s->b, dom, bound);
            out.nrm = compose_rel(a.nrm, b.nrm, bound);
            out.brk = union_rel(a.brk, compose_rel(a.nrm, b.brk, bound));
            out.ctn = union_rel(a.ctn, compose_rel(a.nrm, b.ctn, bound));
            out.err = union_sts(a.err, compose_rel_set(a.nrm, b.err, bound));
            out.fin_dvg = union_sts(a.fin_dvg, compose_rel_set(a.nrm, b.fin_dvg, bound));
            out.inf_dvg = union_lasso(a.inf_dvg, compose_rel_lasso(a.nrm, b.inf_dvg, bound));
            return out;
        }
        case StmtKind::Choice: {
            SDenote a = denote_struct(s->a, dom, bound), b = denote_struct(s->b, dom, bound);
            out.nrm = union_rel(a.nrm, b.nrm);
            out.brk = union_rel(a.brk, b.brk);
            out.ctn = union_rel(a.ctn, b.ctn);
            out.err = union_sts(a.err, b.err);
            out.fin_dvg = union_sts(a.fin_dvg, b.fin_dvg);
            out.inf_dvg = union_lasso(a.inf_dvg, b.inf_dvg);
            return out;
        }
        case StmtKind::If: {
            BDenote c = eval_bexp(s->cond, dom);
            SDenote a = denote_struct(s->a, dom, bound), b = denote_struct(s->b, dom, bound);
            TracedRel tt = test(c.tts), ff = test(c.ffs);
            out.nrm = union_rel(compose_rel(tt, a.nrm, bound), compose_rel(ff, b.nrm, bound));
            out.brk = union_rel(compose_rel(tt, a.brk, bound), compose_rel(ff, b.brk, bound));
            out.ctn = union_rel(compose_rel(tt, a.ctn, bound), compose_rel(ff, b.ctn, bound));
            out.err = union_sts(lift_err(c.err), union_sts(compose_rel_set(tt, a.err, bound),
                                                           compose_rel_set(ff, b.err, bound)));
            out.fin_dvg = union_sts(compose_rel_set(tt, a.fin_dvg, bound),
                                    compose_rel_set(ff, b.fin_dvg, bound));
            out.inf_dvg = union_lasso(compose_rel_lasso(tt, a.inf_dvg, bound),
                                      compose_rel_lasso(ff, b.inf_dvg, bound));
            return out;
        }
        case StmtKind::Loop: {
            SDenote a = denote_struct(s->a, dom, bound), b = denote_struct(s->b, dom, bound);
            TracedRel n1 = union_rel(a.nrm, a.ctn);
            TracedRel n12 = compose_rel(n1, b.nrm, bound);
            TracedRel closure = star(n12, bound);
            out.nrm =
                compose_rel(closure, union_rel(a.brk, compose_rel(n1, b.brk, bound)), bound);
            // a continue escaping from the second body has no continuation
            // point; it is treated as a stuck execution
            StateTraceSet stray = drop_target(compose_rel(n1, b.ctn, bound));
            out.err = compose_rel_set(
                closure,
                union_sts(union_sts(a.err, compose_rel_set(n1, b.err, bound)), stray), bound);
            out.fin_dvg = loop_fin_dvg(
                n12, union_sts(a.fin_dvg, compose_rel_set(n1, b.fin_dvg, bound)), bound);
            out.inf_dvg = loop_inf_dvg(
                n12, union_lasso(a.inf_dvg, compose_rel_lasso(n1, b.inf_dvg, bound)), bound);
            return out;
        }
        default: throw std::invalid_argument("statement outside the STRUCT fragment");
    }
}

UDenote denote_block(const StmtPtr& u, const ValueDomain& dom, int bound) {
    uint32_t n = dom.state_count();
    UDenote out;
    out.space = n;
    out.nrm = TracedRel(n, n);
    out.err = StateTraceSet(n);
    out.fin_dvg = StateTraceSet(n);
    out.inf_dvg = LassoSet(n);
    switch (u->kind) {
        case StmtKind::Skip:
        case StmtKind::Assign:
        case StmtKind::Havoc:
        case StmtKind::Print: {
            TDenote d = denote_atom(u, dom, bound);
            out.nrm = d.nrm;
            out.err = d.err;
            return out;
        }
        case StmtKind::Exit:
            out.blk[u->exit_n] = id_rel(n);
            return out;
        case StmtKind::Seq: {
            UDenote a = denote_block(u->a, dom, bound), b = denote_block(u->b, dom, bound);
            out.nrm = compose_rel(a.nrm, b.nrm, bound);
            for (const auto& [k, r] : a.blk) out.blk[k] = r;
            for (const auto& [k, r] : b.blk)
                out.blk[k] = union_rel(out.blk.count(k) ? out.blk[k] : TracedRel(n, n),
                                       compose_rel(a.nrm, r, bound));
            out.err = union_sts(a.err, compose_rel_set(a.nrm, b.err, bound));
            out.fin_dvg = union_sts(a.fin_dvg, compose_rel_set(a.nrm, b.fin_dvg, bound));
            out.inf_dvg = union_lasso(a.inf_dvg, compose_rel_lasso(a.nrm, b.inf_dvg, bound));
            return out;
        }
        case StmtKind::Choice: {
            UDenote a = denote_block(u->a, dom, bound), b = denote_block(u->b, dom, bound);
            out.nrm = union_rel(a.nrm, b.nrm);
            for (const auto& [k, r] : a.blk) out.blk[k] = r;
            for (const auto& [k, r] : b.blk)
                out.blk[k] = union_rel(out.blk.count(k) ? out.blk[k] : TracedRel(n, n), r);
            out.err = union_sts(a.err, b.err);
            out.fin_dvg = union_sts(a.fin_dvg, b.fin_dvg);
            out.inf_dvg = union_lasso(a.inf_dvg, b.inf_dvg);
            return out;
        }
        case StmtKind::If: {
            BDenote c = eval_bexp(u->cond, dom);
            UDenote a = denote_block(u->a, dom, bound), b = denote_block(u->b, dom, bound);
            TracedRel tt = test(c.tts), ff = test(c.ffs);
            out.nrm = union_rel(compose_rel(tt, a.nrm, bound), compose_rel(ff, b.nrm, bound));
            for (const auto& [k, r] : a.blk) out.blk[k] = compose_rel(tt, r, bound);
            for (const auto& [k, r] : b.blk)
                out.blk[k] = union_rel(out.blk.count(k) ? out.blk[k] : TracedRel(n, n),
                                       compose_rel(ff, r, bound));
            out.err = union_sts(lift_err(c.err), union_sts(compose_rel_set(tt, a.err, bound),
                                                           compose_rel_set(ff, b.err, bound)));
            out.fin_dvg = union_sts(compose_rel_set(tt, a.fin_dvg, bound),
                                    compose_rel_set(ff, b.fin_dvg, bound));
            out.inf_dvg = union_lasso(compose_rel_lasso(tt, a.inf_dvg, bound),
                                      compose_rel_lasso(ff, b.inf_dvg, bound));
            return out;
        }
        case StmtKind::Block: {
            UDenote a = denote_block(u->a, dom, bound);
            out.nrm = union_rel(a.nrm, a.blk_at(0));
            for (const auto& [k, r] : a.blk)
                if (k > 0) out.blk[k - 1] = r;
            out.err = a.err;
            out.fin_dvg = a.fin_dvg;
            out.inf_dvg = a.inf_dvg;
            return out;
        }
        case StmtKind::Sloop: {
            UDenote a = denote_block(u->a, dom, bound);
            TracedRel closure = star(a.nrm, bound);
            for (const auto& [k, r] : a.blk) out.blk[k] = compose_rel(closure, r, bound);
            out.err = compose_rel_set(closure, a.err, bound);
            out.fin_dvg = loop_fin_dvg(a.nrm, a.fin_dvg, bound);
            out.inf_dvg = loop_inf_dvg(a.nrm, a.inf_dvg, bound);
            return out;
        }
        default: throw std::invalid_argument("statement outside the BLOCK fragment");
    }
}

std::optional<StmtPtr> lower_struct(const StmtPtr& s, int n_b, int n_c) {
    switch (s->kind) {
        case StmtKind::Skip:
        case StmtKind::Assign:
        case StmtKind::Havoc:
        case StmtKind::Print: return s;
        case StmtKind::Break: return Stmt::exit(n_b);
        case StmtKind::Continue: return Stmt::exit(n_c);
        case StmtKind::Seq: {
            auto a = lower_struct(s->a, n_b, n_c), b = lower_struct(s->b, n_b, n_c);
            if (!a || !b) return std::nullopt;
            return Stmt::seq(*a, *b);
        }
        case StmtKind::Choice: {
            auto a = lower_struct(s->a, n_b, n_c), b = lower_struct(s->b, n_b, n_c);
            if (!a || !b) return std::nullopt;
            return Stmt::choice(*a, *b);
        }
        case StmtKind::If: {
            auto a = lower_struct(s->a, n_b, n_c), b = lower_struct(s->b, n_b, n_c);
            if (!a || !b) return std::nullopt;
            return Stmt::if_(s->cond, *a, *b);
        }
        case StmtKind::Loop: {
            auto a = lower_struct(s->a, 1, 0);
            auto b = lower_struct(s->b, 0, n_c + 1);
            if (!a || !b) return std::nullopt;
            return Stmt::block(Stmt::sloop(Stmt::seq(Stmt::block(*a), *b)));
        }
        default: return std::nullopt;
    }
}

}  // namespace denokat
