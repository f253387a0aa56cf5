#include "denokat/cfg_sem.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "denokat/fixpoint.hpp"

namespace denokat {

int CfgSpace::label_index(const std::string& l) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), l);
    if (it == labels.end() || *it != l) throw std::out_of_range("unknown cfg label: " + l);
    return static_cast<int>(it - labels.begin());
}

CfgSpace cfg_space(const CfgProc& p, int mod, const std::vector<std::string>& globals) {
    CfgSpace cs;
    for (const auto& [l, ins] : p.graph) {
        (void)ins;
        cs.labels.push_back(l);
    }
    cs.labels.push_back(p.exit);
    cs.labels.push_back(p.entry);
    std::sort(cs.labels.begin(), cs.labels.end());
    cs.labels.erase(std::unique(cs.labels.begin(), cs.labels.end()), cs.labels.end());
    cs.sd = SplitDomain{ValueDomain(mod, p.locals), ValueDomain(mod, globals)};
    return cs;
}

CfgGraphDenote denote_instr(const std::string& label, const CfgInstr& ins, const TracedRel& chi,
                            const CfgSpace& cs, const QuerySpace& qs, int bound) {
    (void)bound;
    uint32_t n = cs.sd.state_count();
    CfgGraphDenote out{TracedRel(cs.size(), cs.size()), StateTraceSet(cs.size()),
                       TracedRel(cs.size(), qs.size())};
    int at = cs.label_index(label);
    switch (ins.kind) {
        case CfgInstr::Kind::Do: {
            ValueDomain dom = combined_domain(cs.sd);
            TDenote atom = denote_twhile(ins.atom, dom);
            int to = cs.label_index(ins.next);
            for (const Step& e : atom.nrm.steps())
                out.nrm.insert(cs.at(at, e.src), e.tr, cs.at(to, e.dst));
            for (const auto& [st, tr] : atom.err.items()) out.err.insert(cs.at(at, st), tr);
            return out;
        }
        case CfgInstr::Kind::Call: {
            int callee = qs.idents->index(ins.callee);
            int to = cs.label_index(ins.next);
            std::map<StateId, std::vector<const Step*>> by_g;
            for (const Step& e : chi.steps())
                if (qs.ident_of(e.src) == callee) by_g[qs.g_of(e.src)].push_back(&e);
            for (StateId st = 0; st < n; ++st) {
                StateId l = cs.sd.local_part(st), g = cs.sd.global_part(st);
                out.cll.insert(cs.at(at, st), {}, qs.qid(callee, g));
                auto it = by_g.find(g);
                if (it == by_g.end()) continue;
                for (const Step* e : it->second)
                    out.nrm.insert(cs.at(at, st), e->tr, cs.at(to, cs.sd.combine(l, e->dst)));
            }
            out.nrm.set_truncated(chi.truncated());
            return out;
        }
        case CfgInstr::Kind::Cond: {
            ValueDomain dom = combined_domain(cs.sd);
            BDenote c = eval_bexp(ins.guard, dom);
            int t = cs.label_index(ins.next_true), f = cs.label_index(ins.next_false);
            for (StateId st : c.tts.items()) out.nrm.insert(cs.at(at, st), {}, cs.at(t, st));
            for (StateId st : c.ffs.items()) out.nrm.insert(cs.at(at, st), {}, cs.at(f, st));
            for (StateId st : c.err.items()) out.err.insert(cs.at(at, st), {});
            return out;
        }
    }
    throw std::logic_error("denote_instr: bad kind");
}

CfgGraphDenote denote_cfg_graph(const CfgProc& p, const TracedRel& chi, const CfgSpace& cs,
                                const QuerySpace& qs, int bound) {
    CfgGraphDenote acc{TracedRel(cs.size(), cs.size()), StateTraceSet(cs.size()),
                       TracedRel(cs.size(), qs.size())};
    for (const auto& [label, ins] : p.graph) {
        CfgGraphDenote d = denote_instr(label, ins, chi, cs, qs, bound);
        acc.nrm = union_rel(acc.nrm, d.nrm);
        acc.err = union_sts(acc.err, d.err);
        acc.cll = union_rel(acc.cll, d.cll);
    }
    return acc;
}

ProcDenote denote_cfg_proc(const CfgProc& p, const TracedRel& chi, const ValueDomain& gdom,
                           const QuerySpace& qs, int mod, int bound) {
    validate_cfg_proc(p);
    CfgSpace cs = cfg_space(p, mod, gdom.vars());
    CfgGraphDenote g = denote_cfg_graph(p, chi, cs, qs, bound);

    TracedRel closure = star(g.nrm, bound);
    StateTraceSet err = compose_rel_set(closure, g.err, bound);
    TracedRel cll = compose_rel(closure, g.cll, bound);
    StateTraceSet fin = loop_fin_dvg(g.nrm, StateTraceSet(cs.size()), bound);
    LassoSet inf = loop_inf_dvg(g.nrm, LassoSet(cs.size()), bound);

    ProcDenote out = ProcDenote::empty(qs);
    int self = qs.idents->index(p.name);
    int exit = cs.label_index(p.exit);
    int entry = cs.label_index(p.entry);
    for (StateId g0 = 0; g0 < gdom.state_count(); ++g0) {
        StateId from = cs.at(entry, cs.sd.combine(0, g0));
        StateId q = qs.qid(self, g0);
        for (const Step& e : closure.steps())
            if (e.src == from && cs.label_of(e.dst) == exit)
                out.nrm.insert(q, e.tr, cs.sd.global_part(cs.state_of(e.dst)));
        for (const Step& e : cll.steps())
            if (e.src == from) out.cll.insert(q, e.tr, e.dst);
        for (const auto& [st, tr] : err.items())
            if (st == from) out.err.insert(q, tr);
        for (const auto& [st, tr] : fin.items())
            if (st == from) out.fin_dvg.insert(q, tr);
        for (const auto& [st, la] : inf.items())
            if (st == from) out.inf_dvg.insert(q, la);
    }
    out.nrm.set_truncated(closure.truncated());
    out.cll.set_truncated(cll.truncated());
    out.err.set_truncated(err.truncated());
    out.fin_dvg.set_truncated(fin.truncated());
    out.inf_dvg.set_truncated(inf.truncated());
    return out;
}

IdentSpace collect_idents_cfg(const std::vector<const CfgModule*>& mods, const OracleChi* chi) {
    std::vector<std::string> names;
    for (const CfgModule* m : mods)
        for (const auto& p : m->procs) {
            names.push_back(p.name);
            for (const auto& [l, ins] : p.graph) {
                (void)l;
                if (ins.kind == CfgInstr::Kind::Call) names.push_back(ins.callee);
            }
        }
    if (chi)
        for (const auto& e : chi->entries) names.push_back(std::get<0>(e));
    return IdentSpace(std::move(names));
}

namespace {

std::vector<std::string> sorted_dom_cfg(const CfgModule& m) {
    std::vector<std::string> names;
    for (const auto& p : m.procs) names.push_back(p.name);
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end())
        throw std::invalid_argument("duplicate procedure name in cfg module");
    return names;
}

constexpr int kModuleLfpBudget = 1000;

}  // namespace

MDenote denote_cfg_module(const CfgModule& m, const OracleChi& chi, const IdentSpace& idents,
                          int mod, int bound) {
    ValueDomain gdom(mod, m.globals);
    QuerySpace qs{&idents, gdom.state_count()};
    TracedRel chi_ext = chi_to_rel(chi, qs);

    auto step = [&](const TracedRel& chi0) {
        TracedRel combined = union_rel(chi0, chi_ext);
        TracedRel acc(qs.size(), qs.gcount);
        for (const auto& p : m.procs)
            acc = union_rel(acc, denote_cfg_proc(p, combined, gdom, qs, mod, bound).nrm);
        return acc;
    };
    auto fix = lfp(step, TracedRel(qs.size(), qs.gcount), kModuleLfpBudget);

    MDenote out;
    out.dom = sorted_dom_cfg(m);
    out.nrm = fix.value;
    out.lfp_iterations = fix.iterations;

    TracedRel chi_hat = union_rel(out.nrm, chi_ext);
    ProcDenote all = ProcDenote::empty(qs);
    for (const auto& p : m.procs)
        all = all.merged(denote_cfg_proc(p, chi_hat, gdom, qs, mod, bound));
    finish_module(out, all, qs, bound);
    return out;
}

MDenote semantic_link_cfg(const CfgModule& m1, const CfgModule& m2, const OracleChi& chi,
                          const IdentSpace& idents, int mod, int bound) {
    if (m1.globals != m2.globals)
        throw std::invalid_argument("semantic_link_cfg: modules declare different globals");
    std::vector<std::string> dom1 = sorted_dom_cfg(m1), dom2 = sorted_dom_cfg(m2);
    for (const auto& n : dom2)
        if (std::binary_search(dom1.begin(), dom1.end(), n))
            throw std::invalid_argument("semantic_link_cfg: overlapping domains at " + n);

    ValueDomain gdom(mod, m1.globals);
    QuerySpace qs{&idents, gdom.state_count()};
    TracedRel chi_ext = chi_to_rel(chi, qs);

    auto step = [&](const TracedRel& chi0) {
        OracleChi combined = rel_to_chi(union_rel(chi0, chi_ext), qs);
        return union_rel(denote_cfg_module(m1, combined, idents, mod, bound).nrm,
                         denote_cfg_module(m2, combined, idents, mod, bound).nrm);
    };
    auto fix = lfp(step, TracedRel(qs.size(), qs.gcount), kModuleLfpBudget);

    MDenote out;
    out.dom = dom1;
    out.dom.insert(out.dom.end(), dom2.begin(), dom2.end());
    std::sort(out.dom.begin(), out.dom.end());
    out.nrm = fix.value;
    out.lfp_iterations = fix.iterations;

    OracleChi chi_dot = rel_to_chi(union_rel(out.nrm, chi_ext), qs);
    MDenote d1 = denote_cfg_module(m1, chi_dot, idents, mod, bound);
    MDenote d2 = denote_cfg_module(m2, chi_dot, idents, mod, bound);

    TracedRel cll = union_rel(d1.cll, d2.cll);
    out.err = compose_rel_set(star(cll, bound), union_sts(d1.err, d2.err), bound);
    out.cll = compose_rel(plus(cll, bound), test(ecall(out.dom, qs)), bound);
    out.fin_dvg = loop_fin_dvg(cll, union_sts(d1.fin_dvg, d2.fin_dvg), bound);
    out.inf_dvg = loop_inf_dvg(cll, union_lasso(d1.inf_dvg, d2.inf_dvg), bound);
    return out;
}

}  // namespace denokat
