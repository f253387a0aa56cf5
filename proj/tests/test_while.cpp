#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "denokat/gen.hpp"
#include "denokat/parser.hpp"
#include "denokat/while_sem.hpp"

using namespace denokat;

namespace {
const ValueDomain dom3(3, {"x", "y"});

StmtPtr P(const char* text) { return parse_stmt(text); }
}  // namespace

TEST_CASE("eval_bexp partitions the state space") {
    BDenote t = eval_bexp(Bexp::lit_true(), dom3);
    CHECK(t.tts == StateSet::all(dom3.state_count()));
    CHECK(t.ffs.empty());

    BDenote refl = eval_bexp(parse_stmt("while x == x do { skip }")->cond, dom3);
    CHECK(refl.tts == StateSet::all(dom3.state_count()));

    // x < y over modulus 3: evaluate all 9 states by hand
    BDenote lt = eval_bexp(parse_stmt("while x < y do { skip }")->cond, dom3);
    int expected_true = 0;
    for (StateId s = 0; s < dom3.state_count(); ++s) {
        bool lt_here = dom3.get(s, 0) < dom3.get(s, 1);
        if (lt_here) ++expected_true;
        CHECK(lt.tts.contains(s) == lt_here);
        CHECK(lt.ffs.contains(s) == !lt_here);
    }
    CHECK(expected_true == 3);  // (0,1) (0,2) (1,2)
    CHECK_THROWS(eval_bexp(parse_stmt("while z == 0 do { skip }")->cond, dom3));
}

TEST_CASE("expression abortion: division and modulo by zero") {
    ExprDenote d = eval_expr(parse_stmt("x := 1 / y")->expr, dom3);
    for (StateId s = 0; s < dom3.state_count(); ++s)
        CHECK(d.err.contains(s) == (dom3.get(s, 1) == 0));
    ExprDenote m = eval_expr(parse_stmt("x := 1 % 0")->expr, dom3);
    CHECK(m.err == StateSet::all(dom3.state_count()));
}

TEST_CASE("powerdomain discrimination: the three classic programs differ") {
    CDenote skip = denote_while(P("skip"), dom3);
    CDenote dead = denote_while(P("while true do { skip }"), dom3);
    CDenote mix = denote_while(P("choice { while true do { skip } } or { skip }"), dom3);

    CHECK(skip.nrm == id_rel(dom3.state_count()));
    CHECK(skip.dvg.empty());
    CHECK(dead.nrm.empty());
    CHECK(dead.dvg == StateSet::all(dom3.state_count()));
    CHECK(mix.nrm == id_rel(dom3.state_count()));
    CHECK(mix.dvg == StateSet::all(dom3.state_count()));

    bool skip_vs_dead = skip.nrm == dead.nrm && skip.dvg == dead.dvg;
    bool skip_vs_mix = skip.nrm == mix.nrm && skip.dvg == mix.dvg;
    bool dead_vs_mix = dead.nrm == mix.nrm && dead.dvg == mix.dvg;
    CHECK_FALSE(skip_vs_dead);
    CHECK_FALSE(skip_vs_mix);
    CHECK_FALSE(dead_vs_mix);
}

TEST_CASE("skip;skip and basic statements") {
    CDenote d = denote_while(P("skip; skip"), dom3);
    CHECK(d.nrm == id_rel(dom3.state_count()));
    CHECK(d.dvg.empty());

    CDenote h = denote_while(P("x := ?"), dom3);
    CHECK(h.nrm.size() == dom3.state_count() * 3);

    CHECK_THROWS(denote_while(P("print 1"), dom3));
    CHECK_THROWS(denote_while(P("x := 1 / y"), dom3));  // can abort
    CHECK_THROWS(denote_while(P("break"), dom3));
}

TEST_CASE("unbounded-ish nondeterminism: the havoc loop terminates from every state") {
    // while (y == 2 || x > 0) do if y == 2 then { y := 1; x := ? } else { x := x - 1 }
    StmtPtr s = P(
        "while y == 2 || x > 0 do { if y == 2 then { y := 1; x := ? } else { x := x - 1 } }");
    CDenote d = denote_while(s, dom3);
    CHECK(d.dvg.empty());
    for (StateId st = 0; st < dom3.state_count(); ++st) {
        bool has = false;
        for (const Step& step : d.nrm.steps()) has = has || step.src == st;
        CHECK(has);
    }
}

TEST_CASE("whilee: abort propagation through seq and if") {
    EDenote d = denote_whilee(P("x := 1 / y"), dom3);
    for (StateId s = 0; s < dom3.state_count(); ++s) {
        CHECK(d.err.contains(s) == (dom3.get(s, 1) == 0));
    }

    // abort happens before the branches run
    EDenote cond = denote_whilee(P("if 1 / y == 0 then { x := 0 } else { x := 1 }"), dom3);
    for (StateId s = 0; s < dom3.state_count(); ++s)
        CHECK(cond.err.contains(s) == (dom3.get(s, 1) == 0));

    // seq: err of the first statement wins; later errs need reachability
    EDenote seq = denote_whilee(P("x := 0; y := 1 / x"), dom3);
    CHECK(seq.err == StateSet::all(dom3.state_count()));
}

TEST_CASE("whilee totality: no lost states") {
    Rng rng(77);
    ProgramGenOptions opt;
    opt.vars = {"x", "y"};
    opt.allow_print = false;
    opt.allow_div = true;
    opt.depth = 4;
    for (int trial = 0; trial < 150; ++trial) {
        StmtPtr s = random_while_stmt(rng, opt);
        EDenote d = denote_whilee(s, dom3);
        for (StateId st = 0; st < dom3.state_count(); ++st) {
            bool in_nrm = false;
            for (const Step& step : d.nrm.steps()) in_nrm = in_nrm || step.src == st;
            CHECK((in_nrm || d.err.contains(st) || d.dvg.contains(st)));
        }
    }
}

TEST_CASE("sequential composition is definitional") {
    Rng rng(123);
    ProgramGenOptions opt;
    opt.vars = {"x", "y"};
    opt.depth = 3;
    for (int trial = 0; trial < 60; ++trial) {
        StmtPtr c1 = random_while_stmt(rng, opt);
        StmtPtr c2 = random_while_stmt(rng, opt);
        TDenote a = denote_twhile(c1, dom3);
        TDenote b = denote_twhile(c2, dom3);
        TDenote ab = denote_twhile(Stmt::seq(c1, c2), dom3);
        CHECK(ab.nrm == compose_rel(a.nrm, b.nrm));
        CHECK(ab.err == union_sts(a.err, compose_rel_set(a.nrm, b.err)));
    }
}

TEST_CASE("trace fidelity of the two divergent loops") {
    TDenote dead = denote_twhile(P("while true do { skip }"), dom3);
    CHECK(dead.nrm.empty());
    CHECK(dead.err.empty());
    CHECK(dead.inf_dvg.empty());
    CHECK(dead.fin_dvg.size() == dom3.state_count());
    for (StateId s = 0; s < dom3.state_count(); ++s) CHECK(dead.fin_dvg.contains(s, {}));
    CHECK_FALSE(dead.fin_dvg.truncated());
    CHECK_FALSE(dead.inf_dvg.truncated());

    TDenote chatty = denote_twhile(P("while true do { print 0 }"), dom3);
    CHECK(chatty.nrm.empty());
    CHECK(chatty.fin_dvg.empty());
    CHECK(chatty.inf_dvg.size() == dom3.state_count());
    for (StateId s = 0; s < dom3.state_count(); ++s)
        CHECK(chatty.inf_dvg.contains(s, Lasso({}, {0})));
    CHECK_FALSE(chatty.fin_dvg.truncated());
    CHECK_FALSE(chatty.inf_dvg.truncated());
}

TEST_CASE("print emits its value") {
    TDenote d = denote_twhile(P("print 1"), dom3);
    CHECK(d.nrm.size() == dom3.state_count());
    for (StateId s = 0; s < dom3.state_count(); ++s) CHECK(d.nrm.contains({s, {1}, s}));
    CHECK(d.err.empty());
    CHECK(d.fin_dvg.empty());
    CHECK(d.inf_dvg.empty());

    // print of an aborting expression aborts silently
    TDenote bad = denote_twhile(P("print 1 / 0"), dom3);
    CHECK(bad.nrm.empty());
    CHECK(bad.err.size() == dom3.state_count());
}

TEST_CASE("mixed loop: event prefix then silent divergence") {
    // prints x while counting down, then spins silently
    TDenote d = denote_twhile(P("while true do { if x > 0 then { print x; x := x - 1 } else { skip } }"), dom3);
    CHECK(d.nrm.empty());
    CHECK(d.inf_dvg.empty());
    // from x=2: trace [2 1], from x=1: [1], from x=0: []
    for (StateId s = 0; s < dom3.state_count(); ++s) {
        Trace expect;
        for (Value v = dom3.get(s, 0); v > 0; --v) expect.push_back(v);
        CHECK(d.fin_dvg.contains(s, expect));
    }
    CHECK(d.fin_dvg.size() == dom3.state_count());
}
