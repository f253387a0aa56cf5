#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "denokat/domain.hpp"

namespace denokat {

// --- expressions -------------------------------------------------------------

enum class ArithOp { Add, Sub, Mul, Div, Mod };
enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Const, Var, Bin } kind;
    Value value = 0;        // Const
    std::string var;        // Var
    ArithOp op = ArithOp::Add;
    ExprPtr lhs, rhs;       // Bin

    static ExprPtr constant(Value v);
    static ExprPtr variable(std::string name);
    static ExprPtr bin(ArithOp op, ExprPtr a, ExprPtr b);
};

struct Bexp;
using BexpPtr = std::shared_ptr<const Bexp>;

struct Bexp {
    enum class Kind { Lit, Cmp, Not, And, Or } kind;
    bool lit = false;
    CmpOp op = CmpOp::Eq;
    ExprPtr lhs, rhs;       // Cmp
    BexpPtr a, b;           // Not/And/Or

    static BexpPtr lit_true();
    static BexpPtr lit_false();
    static BexpPtr cmp(CmpOp op, ExprPtr a, ExprPtr b);
    static BexpPtr negate(BexpPtr x);
    static BexpPtr conj(BexpPtr x, BexpPtr y);
    static BexpPtr disj(BexpPtr x, BexpPtr y);
};

// --- statements ---------------------------------------------------------------

/// One statement tree shared by all toy languages; each denotation function
/// accepts its language's subset and rejects foreign constructs.
enum class StmtKind {
    Skip,
    Assign,    // var := expr
    Havoc,     // var := ?
    Print,     // print expr
    Seq,       // a ; b
    Choice,    // choice { a } or { b }
    If,        // if cond then { a } else { b }
    While,     // while cond do { a }
    Break,
    Continue,
    Loop,      // loop { a } { b }
    Block,     // block { a }
    Exit,      // exit n
    Sloop,     // sloop { a }
    Call,      // call name
    Label,     // label name: a
    Goto,      // goto name
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
    StmtKind kind;
    std::string var;     // Assign/Havoc target
    std::string name;    // Call target, Label/Goto label
    ExprPtr expr;        // Assign/Print
    BexpPtr cond;        // If/While
    int exit_n = 0;      // Exit
    StmtPtr a, b;

    static StmtPtr skip();
    static StmtPtr assign(std::string var, ExprPtr e);
    static StmtPtr havoc(std::string var);
    static StmtPtr print(ExprPtr e);
    static StmtPtr seq(StmtPtr x, StmtPtr y);
    static StmtPtr choice(StmtPtr x, StmtPtr y);
    static StmtPtr if_(BexpPtr c, StmtPtr x, StmtPtr y);
    static StmtPtr while_(BexpPtr c, StmtPtr body);
    static StmtPtr brk();
    static StmtPtr cont();
    static StmtPtr loop(StmtPtr x, StmtPtr y);
    static StmtPtr block(StmtPtr body);
    static StmtPtr exit(int n);
    static StmtPtr sloop(StmtPtr body);
    static StmtPtr call(std::string name);
    static StmtPtr label(std::string l, StmtPtr body);
    static StmtPtr goto_(std::string l);
};

bool stmt_equal(const StmtPtr& a, const StmtPtr& b);
bool expr_equal(const ExprPtr& a, const ExprPtr& b);
bool bexp_equal(const BexpPtr& a, const BexpPtr& b);

/// Structural predicates used for language gating and pass preconditions.
bool contains_kind(const StmtPtr& s, StmtKind k);
void collect_vars(const StmtPtr& s, std::vector<std::string>& out);
void collect_vars(const ExprPtr& e, std::vector<std::string>& out);
void collect_vars(const BexpPtr& b, std::vector<std::string>& out);
std::vector<std::string> program_vars(const StmtPtr& s);  // sorted, unique

// --- procedures and modules ----------------------------------------------------

struct Procedure {
    std::string name;
    std::vector<std::string> locals;
    StmtPtr body;
};

struct Module {
    std::vector<std::string> globals;
    std::vector<Procedure> procs;
};

/// Syntactic linking: concatenation with disjointness checks.
Module syntactic_link(const Module& m1, const Module& m2);

// --- control flow graphs ---------------------------------------------------------

struct CfgInstr {
    enum class Kind { Do, Call, Cond } kind;
    StmtPtr atom;        // Do: Skip/Assign/Havoc/Print leaf
    std::string callee;  // Call
    BexpPtr guard;       // Cond
    std::string next;    // Do/Call successor
    std::string next_true, next_false;  // Cond successors

    static CfgInstr do_(StmtPtr atom, std::string j);
    static CfgInstr call(std::string callee, std::string j);
    static CfgInstr cond(BexpPtr b, std::string j1, std::string j2);
};

struct CfgProc {
    std::string name;
    std::vector<std::string> locals;
    std::string entry;
    std::string exit;
    std::map<std::string, CfgInstr> graph;  // label -> instruction; exit has none
};

struct CfgModule {
    std::vector<std::string> globals;
    std::vector<CfgProc> procs;
};

CfgModule syntactic_link_cfg(const CfgModule& m1, const CfgModule& m2);

/// Checks label wiring (successors defined, exit carries no instruction).
void validate_cfg_proc(const CfgProc& p);

}  // namespace denokat
