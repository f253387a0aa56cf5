#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "denokat/gen.hpp"
#include "denokat/parser.hpp"
#include "denokat/struct_sem.hpp"

using namespace denokat;

namespace {
const ValueDomain dom(3, {"x"});
const uint32_t N = 3;

StmtPtr P(const char* text) { return parse_stmt(text); }
}  // namespace

TEST_CASE("break and continue denotations") {
    SDenote b = denote_struct(P("break"), dom);
    CHECK(b.brk == id_rel(N));
    CHECK(b.nrm.empty());
    CHECK(b.ctn.empty());
    CHECK(b.err.empty());

    SDenote c = denote_struct(P("continue"), dom);
    CHECK(c.ctn == id_rel(N));
    CHECK(c.nrm.empty());
}

TEST_CASE("loop terminations") {
    SDenote d = denote_struct(P("loop { break } { skip }"), dom);
    CHECK(d.nrm == id_rel(N));
    CHECK(d.brk.empty());
    CHECK(d.ctn.empty());
    CHECK(d.fin_dvg.empty());

    SDenote silent = denote_struct(P("loop { skip } { skip }"), dom);
    CHECK(silent.nrm.empty());
    CHECK(silent.fin_dvg.size() == N);
    for (StateId s = 0; s < N; ++s) CHECK(silent.fin_dvg.contains(s, {}));

    // continue in the first body just moves on to the second body
    SDenote ctn = denote_struct(P("loop { if x > 0 then { continue } else { break } } { x := x - 1 }"), dom);
    // every state eventually breaks at x = 0
    for (StateId s = 0; s < N; ++s) CHECK(ctn.nrm.contains({s, {}, 0}));
    CHECK(ctn.fin_dvg.empty());
}

TEST_CASE("stray continue in the second body is stuck, not lost") {
    SDenote d = denote_struct(P("loop { skip } { continue }"), dom);
    CHECK(d.nrm.empty());
    CHECK(d.ctn.empty());
    for (StateId s = 0; s < N; ++s) CHECK(d.err.contains(s, {}));
}

TEST_CASE("seq propagation of break/continue is definitional") {
    Rng rng(42);
    ProgramGenOptions opt;
    opt.vars = {"x"};
    opt.depth = 3;
    opt.allow_print = true;
    for (int trial = 0; trial < 60; ++trial) {
        StmtPtr s1 = random_struct_stmt(rng, opt);
        StmtPtr s2 = random_struct_stmt(rng, opt);
        SDenote a = denote_struct(s1, dom);
        SDenote b = denote_struct(s2, dom);
        SDenote ab = denote_struct(Stmt::seq(s1, s2), dom);
        CHECK(ab.brk == union_rel(a.brk, compose_rel(a.nrm, b.brk)));
        CHECK(ab.ctn == union_rel(a.ctn, compose_rel(a.nrm, b.ctn)));
        CHECK(ab.nrm == compose_rel(a.nrm, b.nrm));
    }
}

TEST_CASE("exit and block") {
    UDenote e0 = denote_block(P("exit 0"), dom);
    CHECK(e0.nrm.empty());
    CHECK(e0.blk_at(0) == id_rel(N));
    CHECK(e0.blk_at(1).empty());
    CHECK(e0.blk_at(7).empty());

    UDenote blk = denote_block(P("block { exit 0 }"), dom);
    CHECK(blk.nrm == id_rel(N));
    CHECK(blk.blk_at(0).empty());

    UDenote pass = denote_block(P("block { exit 1 }"), dom);
    CHECK(pass.nrm.empty());
    CHECK(pass.blk_at(0) == id_rel(N));
}

TEST_CASE("the nested block/exit example runs like u1;u3") {
    // block { block { u1; exit 1 }; u2 }; u3  with event-free atoms
    StmtPtr whole = P("block { block { x := x + 1; exit 1 }; x := 0 }; x := x * 2");
    StmtPtr direct = P("x := x + 1; x := x * 2");
    UDenote a = denote_block(whole, dom);
    UDenote b = denote_block(direct, dom);
    CHECK(a.nrm == b.nrm);
    CHECK(a.blk.empty());
}

TEST_CASE("sloop") {
    UDenote spin = denote_block(P("sloop { skip }"), dom);
    CHECK(spin.nrm.empty());
    CHECK(spin.blk.empty());
    CHECK(spin.fin_dvg.size() == N);

    UDenote count = denote_block(P("sloop { block { if x > 0 then { x := x - 1 } else { exit 1 } } }"), dom);
    // exit 1 escapes the inner block and then the sloop via blk_0
    CHECK(count.blk_at(0).size() == N);
    for (StateId s = 0; s < N; ++s) CHECK(count.blk_at(0).contains({s, {}, 0}));

    UDenote chatty = denote_block(P("sloop { print 0 }"), dom);
    CHECK(chatty.fin_dvg.empty());
    for (StateId s = 0; s < N; ++s) CHECK(chatty.inf_dvg.contains(s, Lasso({}, {0})));
}

TEST_CASE("lowering rules") {
    CHECK(stmt_equal(*lower_struct(P("break"), 2, 5), P("exit 2")));
    CHECK(stmt_equal(*lower_struct(P("continue"), 2, 5), P("exit 5")));
    CHECK(stmt_equal(*lower_struct(P("skip"), 1, 0), P("skip")));

    // the while-shaped loop lowers to the block/sloop/block nest with exit 1
    StmtPtr t1 = *lower_struct(P("loop { if x == 0 then { skip } else { break } } { skip }"), 1, 0);
    StmtPtr expect = P("block { sloop { block { if x == 0 then { skip } else { exit 1 } }; skip } }");
    CHECK(stmt_equal(t1, expect));

    CHECK_FALSE(lower_struct(P("call f"), 1, 0).has_value());
    CHECK_FALSE(lower_struct(P("block { skip }"), 1, 0).has_value());
}

TEST_CASE("lowered loops preserve normal termination on samples") {
    Rng rng(2718);
    ProgramGenOptions opt;
    opt.vars = {"x"};
    opt.depth = 3;
    for (int trial = 0; trial < 80; ++trial) {
        StmtPtr s = random_struct_stmt(rng, opt);
        auto u = lower_struct(s, 1, 0);
        REQUIRE(u.has_value());
        SDenote src = denote_struct(s, dom);
        UDenote tgt = denote_block(*u, dom);
        // identity-state lowering: target normal runs are source normal runs,
        // break lands in blk_1, continue in blk_0
        CHECK(subset_rel(tgt.nrm, src.nrm));
        CHECK(subset_rel(tgt.blk_at(1), src.brk));
        CHECK(subset_rel(tgt.blk_at(0), src.ctn));
    }
}
