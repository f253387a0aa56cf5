#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "denokat/cfg_sem.hpp"
#include "denokat/gen.hpp"
#include "denokat/parser.hpp"

using namespace denokat;

namespace {
constexpr int kMod = 3;
CfgModule C(const char* text) { return parse_cfg_module(text); }
}  // namespace

TEST_CASE("instruction denotations") {
    CfgModule m = C("global x\ncfgproc f entry L0 exit LX { L0: do skip -> LX; }");
    const CfgProc& p = m.procs[0];
    IdentSpace idents({"f", "h"});
    ValueDomain gdom(kMod, {"x"});
    QuerySpace qs{&idents, gdom.state_count()};
    CfgSpace cs = cfg_space(p, kMod, {"x"});
    TracedRel nochi(qs.size(), qs.gcount);

    // Do(skip, j) only rewrites the label
    CfgGraphDenote d = denote_instr("L0", p.graph.at("L0"), nochi, cs, qs);
    int at = cs.label_index("L0"), to = cs.label_index("LX");
    CHECK(d.nrm.size() == cs.sd.state_count());
    for (StateId st = 0; st < cs.sd.state_count(); ++st)
        CHECK(d.nrm.contains({cs.at(at, st), {}, cs.at(to, st)}));

    // Cond(true, j1, j2) jumps to j1 from every state
    CfgGraphDenote cond = denote_instr(
        "L0", CfgInstr::cond(Bexp::lit_true(), "LX", "L0"), nochi, cs, qs);
    for (StateId st = 0; st < cs.sd.state_count(); ++st)
        CHECK(cond.nrm.contains({cs.at(at, st), {}, cs.at(to, st)}));

    // Call with a singleton oracle rewrites the global part under the label move
    OracleChi chi;
    chi.add("h", 0, {2}, 1);
    CfgGraphDenote call = denote_instr("L0", CfgInstr::call("h", "LX"),
                                       chi_to_rel(chi, qs), cs, qs);
    CHECK(call.nrm.size() == 1);
    CHECK(call.nrm.contains({cs.at(at, 0), {2}, cs.at(to, 1)}));
    CHECK(call.cll.size() == cs.sd.state_count());
}

TEST_CASE("single Do node gives the identity on globals") {
    CfgModule m = C("global x\ncfgproc f entry L0 exit LX { L0: do skip -> LX; }");
    IdentSpace idents = collect_idents_cfg({&m}, nullptr);
    MDenote d = denote_cfg_module(m, OracleChi{}, idents, kMod);
    ValueDomain gdom(kMod, {"x"});
    QuerySpace qs{&idents, gdom.state_count()};
    CHECK(d.nrm.size() == gdom.state_count());
    for (StateId g = 0; g < gdom.state_count(); ++g) CHECK(d.nrm.contains({qs.qid(0, g), {}, g}));
    CHECK(d.fin_dvg.empty());
    CHECK(d.cll.empty());
}

TEST_CASE("two-node counting loop computes the countdown relation") {
    CfgModule m = C(
        "global x, y\n"
        "cfgproc f entry L0 exit LX {\n"
        "  L0: cond x > 0 -> L1, LX;\n"
        "  L1: do x := x - 1 -> L0;\n"
        "}");
    IdentSpace idents = collect_idents_cfg({&m}, nullptr);
    MDenote d = denote_cfg_module(m, OracleChi{}, idents, kMod);
    ValueDomain gdom(kMod, {"x", "y"});
    QuerySpace qs{&idents, gdom.state_count()};
    TracedRel expect(qs.size(), qs.gcount);
    for (StateId g = 0; g < gdom.state_count(); ++g)
        expect.insert(qs.qid(0, g), {}, gdom.put(g, 0, 0));
    CHECK(d.nrm == expect);
    CHECK(d.fin_dvg.empty());
}

TEST_CASE("self-loop diverges from every global") {
    CfgModule m = C("global x\ncfgproc f entry L0 exit LX { L0: cond true -> L0, LX; }");
    IdentSpace idents = collect_idents_cfg({&m}, nullptr);
    MDenote d = denote_cfg_module(m, OracleChi{}, idents, kMod);
    CHECK(d.nrm.empty());
    CHECK(d.fin_dvg.size() == 3);

    // with an event in the cycle the divergence moves to the lasso set
    CfgModule chat = C("global x\ncfgproc f entry L0 exit LX { L0: do print x -> L0; }");
    IdentSpace id2 = collect_idents_cfg({&chat}, nullptr);
    MDenote d2 = denote_cfg_module(chat, OracleChi{}, id2, kMod);
    CHECK(d2.fin_dvg.empty());
    ValueDomain gdom(kMod, {"x"});
    QuerySpace qs{&id2, gdom.state_count()};
    for (StateId g = 0; g < 3; ++g)
        CHECK(d2.inf_dvg.contains(qs.qid(0, g), Lasso({}, {static_cast<Value>(g)})));
}

TEST_CASE("procedure nrm depends only on globals") {
    // the local temp is zero at entry and dropped at exit
    CfgModule m = C(
        "global x\n"
        "cfgproc f (locals t) entry L0 exit LX {\n"
        "  L0: do t := x + 1 -> L1;\n"
        "  L1: do x := t -> L2;\n"
        "  L2: do t := 2 -> LX;\n"
        "}");
    IdentSpace idents = collect_idents_cfg({&m}, nullptr);
    MDenote d = denote_cfg_module(m, OracleChi{}, idents, kMod);
    ValueDomain gdom(kMod, {"x"});
    QuerySpace qs{&idents, gdom.state_count()};
    CHECK(d.nrm.size() == gdom.state_count());
    for (StateId g = 0; g < gdom.state_count(); ++g)
        CHECK(d.nrm.contains({qs.qid(0, g), {}, gdom.put(g, 0, gdom.norm(gdom.get(g, 0) + 1))}));
}

TEST_CASE("mutual recursion across cfg modules") {
    CfgModule m1 = C(
        "global v\n"
        "cfgproc f entry L0 exit LX {\n"
        "  L0: cond v > 0 -> L1, LX;\n"
        "  L1: do v := v - 1 -> L2;\n"
        "  L2: call g -> LX;\n"
        "}");
    CfgModule m2 = C("global v\ncfgproc g entry L0 exit LX { L0: call f -> LX; }");
    IdentSpace idents = collect_idents_cfg({&m1, &m2}, nullptr);
    ValueDomain gdom(kMod, {"v"});
    QuerySpace qs{&idents, gdom.state_count()};

    MDenote linked = semantic_link_cfg(m1, m2, OracleChi{}, idents, kMod);
    for (StateId g = 0; g < gdom.state_count(); ++g)
        CHECK(linked.nrm.contains({qs.qid(idents.index("f"), g), {}, 0}));
    CHECK(linked.cll.empty());
    MDenote syn = denote_cfg_module(syntactic_link_cfg(m1, m2), OracleChi{}, idents, kMod);
    CHECK(linked == syn);
}

TEST_CASE("cfg linking equals denotation of the syntactic merge on random pairs") {
    Rng rng(515);
    std::vector<std::string> globals{"u", "v"};
    for (int trial = 0; trial < 25; ++trial) {
        CfgModule m1 = random_cfg_module(rng, globals, 2, {"f1", "f2"}, {"f1", "g1", "ext"}, true);
        CfgModule m2 = random_cfg_module(rng, globals, 2, {"g1", "g2"}, {"f1", "g2", "ext"}, true);
        OracleChi chi;
        if (rng.chance(1, 2))
            chi.add("ext", static_cast<StateId>(rng.below(9)), {1}, static_cast<StateId>(rng.below(9)));
        IdentSpace idents = collect_idents_cfg({&m1, &m2}, &chi);

        MDenote sem = semantic_link_cfg(m1, m2, chi, idents, kMod);
        MDenote syn = denote_cfg_module(syntactic_link_cfg(m1, m2), chi, idents, kMod);
        CHECK(sem == syn);
    }
}
