#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "denokat/parser.hpp"

using namespace denokat;

TEST_CASE("statement round trips") {
    const char* programs[] = {
        "skip",
        "x := 1",
        "x := ?",
        "print (x + 1)",
        "x := 1; y := (x + 1)",
        "choice { skip } or { x := 1 }",
        "if x == 0 then { skip } else { x := (x - 1) }",
        "while x > 0 do { x := (x - 1) }",
        "break",
        "continue",
        "loop { if x == 0 then { break } else { x := (x - 1) } } { skip }",
        "block { sloop { block { exit 0 }; exit 1 } }",
        "call f",
        "label L: { if x > 0 then { x := (x - 1); goto L } else { skip } }",
    };
    for (const char* p : programs) {
        StmtPtr s = parse_stmt(p);
        StmtPtr again = parse_stmt(print_stmt(s));
        CHECK(stmt_equal(s, again));
    }
}

TEST_CASE("precedence and sequencing") {
    StmtPtr s = parse_stmt("x := 1; y := 2; z := 3");
    REQUIRE(s->kind == StmtKind::Seq);
    // left-associated: ((x;y);z)
    CHECK(s->b->kind == StmtKind::Assign);
    CHECK(s->b->var == "z");

    StmtPtr t = parse_stmt("x := 1 + 2 * 3");
    CHECK(print_expr(t->expr) == "(1 + (2 * 3))");
}

TEST_CASE("boolean operators") {
    StmtPtr s = parse_stmt("if x == 0 && y > 1 || !(x < y) then { skip } else { skip }");
    CHECK(s->cond->kind == Bexp::Kind::Or);
    StmtPtr t = parse_stmt("while (x + 1) == y do { skip }");
    CHECK(t->cond->kind == Bexp::Kind::Cmp);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_stmt("x :="), ParseError);
    CHECK_THROWS_AS(parse_stmt("if x then { skip }"), ParseError);
    CHECK_THROWS_AS(parse_stmt("while do { skip }"), ParseError);
    CHECK_THROWS_AS(parse_stmt("skip skip"), ParseError);
    CHECK_THROWS_AS(parse_stmt("choice { skip }"), ParseError);
}

TEST_CASE("module files") {
    Module m = parse_module(
        "global x, y\n"
        "proc f(locals t) { t := x; call g; y := t }\n"
        "proc g() { x := x + 1 }\n");
    CHECK(m.globals == std::vector<std::string>{"x", "y"});
    REQUIRE(m.procs.size() == 2);
    CHECK(m.procs[0].name == "f");
    CHECK(m.procs[0].locals == std::vector<std::string>{"t"});
    CHECK(m.procs[1].locals.empty());

    Module again = parse_module(print_module(m));
    CHECK(again.procs.size() == 2);
    CHECK(stmt_equal(again.procs[0].body, m.procs[0].body));
}

TEST_CASE("cfg files") {
    CfgModule m = parse_cfg_module(
        "global x\n"
        "cfgproc count entry L0 exit LX {\n"
        "  L0: cond x > 0 -> L1, LX;\n"
        "  L1: do x := x - 1 -> L0;\n"
        "}\n");
    REQUIRE(m.procs.size() == 1);
    const CfgProc& p = m.procs[0];
    CHECK(p.entry == "L0");
    CHECK(p.exit == "LX");
    CHECK(p.graph.at("L0").kind == CfgInstr::Kind::Cond);
    CHECK(p.graph.at("L1").kind == CfgInstr::Kind::Do);

    CfgModule again = parse_cfg_module(print_cfg_module(m));
    CHECK(again.procs[0].graph.size() == 2);

    // exit label with an instruction is rejected
    CHECK_THROWS(parse_cfg_module(
        "cfgproc bad entry L0 exit L0 { L0: do skip -> L0; }"));
    // dangling successor is rejected
    CHECK_THROWS(parse_cfg_module(
        "cfgproc bad entry L0 exit LX { L0: do skip -> L9; }"));
}

TEST_CASE("file kind sniffing") {
    CHECK(sniff_file_kind("x := 1; skip") == FileKind::Stmt);
    CHECK(sniff_file_kind("global x\nproc f() { skip }") == FileKind::Module);
    CHECK(sniff_file_kind("global x\ncfgproc f entry L0 exit LX { L0: do skip -> LX; }") ==
          FileKind::Cfg);
}
