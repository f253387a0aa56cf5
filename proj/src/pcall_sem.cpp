#include "denokat/pcall_sem.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "denokat/fixpoint.hpp"

namespace denokat {

IdentSpace::IdentSpace(std::vector<std::string> names) : names_(std::move(names)) {
    std::sort(names_.begin(), names_.end());
    names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

int IdentSpace::index(const std::string& name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) throw std::out_of_range("unknown ident: " + name);
    return static_cast<int>(it - names_.begin());
}

bool IdentSpace::has(const std::string& name) const {
    return std::binary_search(names_.begin(), names_.end(), name);
}

namespace {

void collect_callees(const StmtPtr& s, std::vector<std::string>& out) {
    if (!s) return;
    if (s->kind == StmtKind::Call) out.push_back(s->name);
    collect_callees(s->a, out);
    collect_callees(s->b, out);
}

void collect_label_names(const StmtPtr& s, std::vector<std::string>& out) {
    if (!s) return;
    if (s->kind == StmtKind::Label) out.push_back(s->name);
    collect_label_names(s->a, out);
    collect_label_names(s->b, out);
}

}  // namespace

IdentSpace collect_idents(const std::vector<const Module*>& mods, const OracleChi* chi) {
    std::vector<std::string> names;
    for (const Module* m : mods) {
        for (const auto& p : m->procs) {
            names.push_back(p.name);
            collect_callees(p.body, names);
        }
    }
    if (chi)
        for (const auto& e : chi->entries) names.push_back(std::get<0>(e));
    return IdentSpace(std::move(names));
}

TracedRel chi_to_rel(const OracleChi& chi, const QuerySpace& qs) {
    TracedRel r(qs.size(), qs.gcount);
    for (const auto& [name, g0, tr, g1] : chi.entries)
        r.insert(qs.qid(qs.idents->index(name), g0), tr, g1);
    return r;
}

OracleChi rel_to_chi(const TracedRel& rel, const QuerySpace& qs) {
    OracleChi chi;
    for (const Step& s : rel.steps())
        chi.add(qs.idents->names()[static_cast<size_t>(qs.ident_of(s.src))], qs.g_of(s.src), s.tr,
                s.dst);
    return chi;
}

StateSet ecall(const std::vector<std::string>& defined, const QuerySpace& qs) {
    StateSet out(qs.size());
    for (size_t i = 0; i < qs.idents->size(); ++i) {
        if (std::find(defined.begin(), defined.end(), qs.idents->names()[i]) != defined.end())
            continue;
        for (StateId g = 0; g < qs.gcount; ++g) out.insert(qs.qid(static_cast<int>(i), g));
    }
    return out;
}

int LabelSpace::index(const std::string& l) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), l);
    if (it == labels.end() || *it != l) return static_cast<int>(labels.size());  // undefined
    return static_cast<int>(it - labels.begin());
}

LabelSpace collect_labels(const StmtPtr& body, uint32_t states) {
    LabelSpace ls;
    collect_label_names(body, ls.labels);
    std::sort(ls.labels.begin(), ls.labels.end());
    if (std::adjacent_find(ls.labels.begin(), ls.labels.end()) != ls.labels.end())
        throw std::invalid_argument("duplicate label in procedure body");
    ls.states = states;
    return ls;
}

namespace {

StateTraceSet lift_err(const StateSet& e) {
    StateTraceSet out(e.space());
    for (StateId s : e.items()) out.insert(s, {});
    return out;
}

struct Ctx {
    const SplitDomain& sd;
    ValueDomain dom;  // combined
    const TracedRel& chi;
    const QuerySpace& qs;
    const LabelSpace& ls;
    int bound;
};

PStmtDenote empty_pd(const Ctx& cx) {
    uint32_t n = cx.dom.state_count();
    return PStmtDenote{TracedRel(n, n),            StateTraceSet(n),
                       TracedRel(n, cx.qs.size()), TracedRel(n, cx.ls.size()),
                       StateTraceSet(n),           LassoSet(n)};
}

PStmtDenote seq_pd(const PStmtDenote& a, const PStmtDenote& b, const Ctx& cx) {
    PStmtDenote out = empty_pd(cx);
    int L = cx.bound;
    out.nrm = compose_rel(a.nrm, b.nrm, L);
    out.err = union_sts(a.err, compose_rel_set(a.nrm, b.err, L));
    out.cll = union_rel(a.cll, compose_rel(a.nrm, b.cll, L));
    out.gto = union_rel(a.gto, compose_rel(a.nrm, b.gto, L));
    out.fin_dvg = union_sts(a.fin_dvg, compose_rel_set(a.nrm, b.fin_dvg, L));
    out.inf_dvg = union_lasso(a.inf_dvg, compose_rel_lasso(a.nrm, b.inf_dvg, L));
    return out;
}

PStmtDenote union_pd(const PStmtDenote& a, const PStmtDenote& b) {
    return PStmtDenote{union_rel(a.nrm, b.nrm),         union_sts(a.err, b.err),
                       union_rel(a.cll, b.cll),         union_rel(a.gto, b.gto),
                       union_sts(a.fin_dvg, b.fin_dvg), union_lasso(a.inf_dvg, b.inf_dvg)};
}

PStmtDenote guard_pd(const TracedRel& t, const PStmtDenote& a, const Ctx& cx) {
    int L = cx.bound;
    return PStmtDenote{compose_rel(t, a.nrm, L),         compose_rel_set(t, a.err, L),
                       compose_rel(t, a.cll, L),         compose_rel(t, a.gto, L),
                       compose_rel_set(t, a.fin_dvg, L), compose_rel_lasso(t, a.inf_dvg, L)};
}

PStmtDenote denote_rec(const StmtPtr& s, const Ctx& cx) {
    PStmtDenote out = empty_pd(cx);
    uint32_t n = cx.dom.state_count();
    switch (s->kind) {
        case StmtKind::Skip: out.nrm = id_rel(n); return out;
        case StmtKind::Assign: {
            ExprDenote e = eval_expr(s->expr, cx.dom);
            int idx = cx.dom.var_index(s->var);
            for (StateId st = 0; st < n; ++st)
                if (e.val[st]) out.nrm.insert(st, {}, cx.dom.put(st, idx, *e.val[st]));
            out.err = lift_err(e.err);
            return out;
        }
        case StmtKind::Havoc: {
            int idx = cx.dom.var_index(s->var);
            for (StateId st = 0; st < n; ++st)
                for (Value v = 0; v < cx.dom.modulus(); ++v)
                    out.nrm.insert(st, {}, cx.dom.put(st, idx, v));
            return out;
        }
        case StmtKind::Print: {
            ExprDenote e = eval_expr(s->expr, cx.dom);
            for (StateId st = 0; st < n; ++st)
                if (e.val[st]) out.nrm.insert(st, Trace{*e.val[st]}, st);
            out.err = lift_err(e.err);
            return out;
        }
        case StmtKind::Call: {
            int callee = cx.qs.idents->index(s->name);
            // calls resolve through the oracle; the local state is untouched
            std::map<StateId, std::vector<const Step*>> by_g;
            for (const Step& e : cx.chi.steps())
                if (cx.qs.ident_of(e.src) == callee) by_g[cx.qs.g_of(e.src)].push_back(&e);
            for (StateId st = 0; st < n; ++st) {
                StateId l = cx.sd.local_part(st), g = cx.sd.global_part(st);
                out.cll.insert(st, {}, cx.qs.qid(callee, g));
                auto it = by_g.find(g);
                if (it == by_g.end()) continue;
                for (const Step* e : it->second)
                    out.nrm.insert(st, e->tr, cx.sd.combine(l, e->dst));
            }
            out.nrm.set_truncated(cx.chi.truncated());
            return out;
        }
        case StmtKind::Goto: {
            int li = cx.ls.index(s->name);
            for (StateId st = 0; st < n; ++st) out.gto.insert(st, {}, cx.ls.gid(li, st));
            return out;
        }
        case StmtKind::Label: return denote_rec(s->a, cx);
        case StmtKind::Seq: return seq_pd(denote_rec(s->a, cx), denote_rec(s->b, cx), cx);
        case StmtKind::Choice: return union_pd(denote_rec(s->a, cx), denote_rec(s->b, cx));
        case StmtKind::If: {
            BDenote c = eval_bexp(s->cond, cx.dom);
            PStmtDenote a = guard_pd(test(c.tts), denote_rec(s->a, cx), cx);
            PStmtDenote b = guard_pd(test(c.ffs), denote_rec(s->b, cx), cx);
            PStmtDenote both = union_pd(a, b);
            both.err = union_sts(both.err, lift_err(c.err));
            return both;
        }
        case StmtKind::While: {
            BDenote c = eval_bexp(s->cond, cx.dom);
            PStmtDenote body = denote_rec(s->a, cx);
            TracedRel tt = test(c.tts);
            TracedRel step = compose_rel(tt, body.nrm, cx.bound);
            TracedRel closure = star(step, cx.bound);
            PStmtDenote gated = guard_pd(tt, body, cx);
            out.nrm = compose_rel(closure, test(c.ffs), cx.bound);
            out.err = compose_rel_set(closure, union_sts(lift_err(c.err), gated.err), cx.bound);
            out.cll = compose_rel(closure, gated.cll, cx.bound);
            out.gto = compose_rel(closure, gated.gto, cx.bound);
            out.fin_dvg = loop_fin_dvg(step, gated.fin_dvg, cx.bound);
            out.inf_dvg = loop_inf_dvg(step, gated.inf_dvg, cx.bound);
            return out;
        }
        default: throw std::invalid_argument("statement outside the PCALL fragment");
    }
}

using LabeledMap = std::map<std::string, PStmtDenote>;

/// Denotation of "the rest of this statement when entered at label j",
/// per label j occurring in the statement.
LabeledMap labeled_eval(const StmtPtr& s, const Ctx& cx) {
    switch (s->kind) {
        case StmtKind::Label: {
            LabeledMap m = labeled_eval(s->a, cx);
            m.emplace(s->name, denote_rec(s->a, cx));
            return m;
        }
        case StmtKind::Seq: {
            LabeledMap m = labeled_eval(s->a, cx);
            if (!m.empty()) {
                PStmtDenote rest = denote_rec(s->b, cx);
                for (auto& [l, d] : m) d = seq_pd(d, rest, cx);
            }
            LabeledMap m2 = labeled_eval(s->b, cx);
            for (auto& [l, d] : m2) m.emplace(l, std::move(d));
            return m;
        }
        case StmtKind::Choice:
        case StmtKind::If: {
            // resuming inside a branch skips the test
            LabeledMap m = labeled_eval(s->a, cx);
            LabeledMap m2 = labeled_eval(s->b, cx);
            for (auto& [l, d] : m2) m.emplace(l, std::move(d));
            return m;
        }
        case StmtKind::While: {
            LabeledMap m = labeled_eval(s->a, cx);
            if (!m.empty()) {
                PStmtDenote again = denote_rec(s, cx);
                for (auto& [l, d] : m) d = seq_pd(d, again, cx);
            }
            return m;
        }
        default: return {};
    }
}

}  // namespace

PStmtDenote denote_pstmt(const StmtPtr& s, const TracedRel& chi, const SplitDomain& sd,
                         const QuerySpace& qs, const LabelSpace& ls, int bound) {
    Ctx cx{sd, combined_domain(sd), chi, qs, ls, bound};
    return denote_rec(s, cx);
}

ValueDomain combined_domain(const SplitDomain& sd) {
    std::vector<std::string> vars = sd.local.vars();
    for (const auto& g : sd.global.vars()) vars.push_back(g);
    return ValueDomain(sd.local.modulus(), vars);
}

void finish_module(MDenote& out, const ProcDenote& all, const QuerySpace& qs, int bound) {
    out.err = compose_rel_set(star(all.cll, bound), all.err, bound);
    out.cll = compose_rel(plus(all.cll, bound), test(ecall(out.dom, qs)), bound);
    out.fin_dvg = loop_fin_dvg(all.cll, all.fin_dvg, bound);
    out.inf_dvg = loop_inf_dvg(all.cll, all.inf_dvg, bound);
}

ProcDenote ProcDenote::empty(const QuerySpace& qs) {
    return ProcDenote{TracedRel(qs.size(), qs.gcount), StateTraceSet(qs.size()),
                      TracedRel(qs.size(), qs.size()), StateTraceSet(qs.size()),
                      LassoSet(qs.size())};
}

ProcDenote ProcDenote::merged(const ProcDenote& o) const {
    return ProcDenote{union_rel(nrm, o.nrm), union_sts(err, o.err), union_rel(cll, o.cll),
                      union_sts(fin_dvg, o.fin_dvg), union_lasso(inf_dvg, o.inf_dvg)};
}

ProcDenote denote_procedure(const Procedure& p, const TracedRel& chi, const ValueDomain& gdom,
                            const QuerySpace& qs, int mod, int bound) {
    SplitDomain sd{ValueDomain(mod, p.locals), gdom};
    uint32_t n = sd.state_count();
    LabelSpace ls = collect_labels(p.body, n);
    Ctx cx{sd, combined_domain(sd), chi, qs, ls, bound};

    PStmtDenote body = denote_rec(p.body, cx);
    PStmtDenote total = body;

    if (!body.gto.empty() || !ls.labels.empty()) {
        LabeledMap entries = labeled_eval(p.body, cx);

        TracedRel gtoL(ls.size(), ls.size());
        TracedRel nrmL(ls.size(), n);
        TracedRel cllL(ls.size(), qs.size());
        StateTraceSet errL(ls.size());
        StateTraceSet finL(ls.size());
        LassoSet infL(ls.size());
        for (const auto& [label, d] : entries) {
            int li = ls.index(label);
            for (const Step& e : d.gto.steps()) gtoL.insert(ls.gid(li, e.src), e.tr, e.dst);
            for (const Step& e : d.nrm.steps()) nrmL.insert(ls.gid(li, e.src), e.tr, e.dst);
            for (const Step& e : d.cll.steps()) cllL.insert(ls.gid(li, e.src), e.tr, e.dst);
            for (const auto& [st, tr] : d.err.items()) errL.insert(ls.gid(li, st), tr);
            for (const auto& [st, tr] : d.fin_dvg.items()) finL.insert(ls.gid(li, st), tr);
            for (const auto& [st, la] : d.inf_dvg.items()) infL.insert(ls.gid(li, st), la);
            gtoL.set_truncated(gtoL.truncated() || d.gto.truncated());
            nrmL.set_truncated(nrmL.truncated() || d.nrm.truncated());
            cllL.set_truncated(cllL.truncated() || d.cll.truncated());
            errL.set_truncated(errL.truncated() || d.err.truncated());
            finL.set_truncated(finL.truncated() || d.fin_dvg.truncated());
            infL.set_truncated(infL.truncated() || d.inf_dvg.truncated());
        }

        TracedRel hops = compose_rel(body.gto, star(gtoL, bound), bound);
        total.nrm = union_rel(body.nrm, compose_rel(hops, nrmL, bound));
        total.cll = union_rel(body.cll, compose_rel(hops, cllL, bound));
        total.err = union_sts(body.err, compose_rel_set(hops, errL, bound));
        // jumping to a label that does not exist in this body is stuck
        for (const Step& e : hops.steps())
            if (ls.is_undefined(e.dst)) total.err.insert(e.src, e.tr);
        total.fin_dvg = union_sts(
            body.fin_dvg, compose_rel_set(body.gto, loop_fin_dvg(gtoL, finL, bound), bound));
        total.inf_dvg = union_lasso(
            body.inf_dvg, compose_rel_lasso(body.gto, loop_inf_dvg(gtoL, infL, bound), bound));
    }

    // project onto the query space: zero-initialized locals at entry, locals
    // discarded at exit
    ProcDenote out = ProcDenote::empty(qs);
    int self = qs.idents->index(p.name);
    for (StateId g0 = 0; g0 < gdom.state_count(); ++g0) {
        StateId entry = sd.combine(0, g0);
        StateId q = qs.qid(self, g0);
        for (const Step& e : total.nrm.steps())
            if (e.src == entry) out.nrm.insert(q, e.tr, sd.global_part(e.dst));
        for (const Step& e : total.cll.steps())
            if (e.src == entry) out.cll.insert(q, e.tr, e.dst);
        for (const auto& [st, tr] : total.err.items())
            if (st == entry) out.err.insert(q, tr);
        for (const auto& [st, tr] : total.fin_dvg.items())
            if (st == entry) out.fin_dvg.insert(q, tr);
        for (const auto& [st, la] : total.inf_dvg.items())
            if (st == entry) out.inf_dvg.insert(q, la);
    }
    out.nrm.set_truncated(total.nrm.truncated());
    out.cll.set_truncated(total.cll.truncated());
    out.err.set_truncated(total.err.truncated());
    out.fin_dvg.set_truncated(total.fin_dvg.truncated());
    out.inf_dvg.set_truncated(total.inf_dvg.truncated());
    return out;
}

namespace {

void check_unique_names(const Module& m) {
    std::vector<std::string> names;
    for (const auto& p : m.procs) names.push_back(p.name);
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end())
        throw std::invalid_argument("duplicate procedure name in module");
}

std::vector<std::string> sorted_dom(const Module& m) {
    std::vector<std::string> names;
    for (const auto& p : m.procs) names.push_back(p.name);
    std::sort(names.begin(), names.end());
    return names;
}

constexpr int kModuleLfpBudget = 1000;

}  // namespace

MDenote denote_module(const Module& m, const OracleChi& chi, const IdentSpace& idents, int mod,
                      int bound) {
    check_unique_names(m);
    ValueDomain gdom(mod, m.globals);
    QuerySpace qs{&idents, gdom.state_count()};
    TracedRel chi_ext = chi_to_rel(chi, qs);

    auto step = [&](const TracedRel& chi0) {
        TracedRel combined = union_rel(chi0, chi_ext);
        TracedRel acc(qs.size(), qs.gcount);
        for (const auto& p : m.procs)
            acc = union_rel(acc, denote_procedure(p, combined, gdom, qs, mod, bound).nrm);
        return acc;
    };
    auto fix = lfp(step, TracedRel(qs.size(), qs.gcount), kModuleLfpBudget);

    MDenote out;
    out.dom = sorted_dom(m);
    out.nrm = fix.value;
    out.lfp_iterations = fix.iterations;

    TracedRel chi_hat = union_rel(out.nrm, chi_ext);
    ProcDenote all = ProcDenote::empty(qs);
    for (const auto& p : m.procs)
        all = all.merged(denote_procedure(p, chi_hat, gdom, qs, mod, bound));

    finish_module(out, all, qs, bound);
    return out;
}

MDenote semantic_link(const Module& m1, const Module& m2, const OracleChi& chi,
                      const IdentSpace& idents, int mod, int bound) {
    if (m1.globals != m2.globals)
        throw std::invalid_argument("semantic_link: modules declare different globals");
    std::vector<std::string> dom1 = sorted_dom(m1), dom2 = sorted_dom(m2);
    for (const auto& n : dom2)
        if (std::binary_search(dom1.begin(), dom1.end(), n))
            throw std::invalid_argument("semantic_link: overlapping domains at " + n);

    ValueDomain gdom(mod, m1.globals);
    QuerySpace qs{&idents, gdom.state_count()};
    TracedRel chi_ext = chi_to_rel(chi, qs);

    // joint fixed point over the two modules' own (nested) denotations
    auto step = [&](const TracedRel& chi0) {
        OracleChi combined = rel_to_chi(union_rel(chi0, chi_ext), qs);
        return union_rel(denote_module(m1, combined, idents, mod, bound).nrm,
                         denote_module(m2, combined, idents, mod, bound).nrm);
    };
    auto fix = lfp(step, TracedRel(qs.size(), qs.gcount), kModuleLfpBudget);

    MDenote out;
    out.dom = dom1;
    out.dom.insert(out.dom.end(), dom2.begin(), dom2.end());
    std::sort(out.dom.begin(), out.dom.end());
    out.nrm = fix.value;
    out.lfp_iterations = fix.iterations;

    OracleChi chi_dot = rel_to_chi(union_rel(out.nrm, chi_ext), qs);
    MDenote d1 = denote_module(m1, chi_dot, idents, mod, bound);
    MDenote d2 = denote_module(m2, chi_dot, idents, mod, bound);

    TracedRel cll = union_rel(d1.cll, d2.cll);
    out.err = compose_rel_set(star(cll, bound), union_sts(d1.err, d2.err), bound);
    out.cll = compose_rel(plus(cll, bound), test(ecall(out.dom, qs)), bound);
    out.fin_dvg = loop_fin_dvg(cll, union_sts(d1.fin_dvg, d2.fin_dvg), bound);
    out.inf_dvg = loop_inf_dvg(cll, union_lasso(d1.inf_dvg, d2.inf_dvg), bound);
    return out;
}

}  // namespace denokat
