#include "denokat/syntax.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace denokat {

ExprPtr Expr::constant(Value v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Const;
    e->value = v;
    return e;
}

ExprPtr Expr::variable(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Var;
    e->var = std::move(name);
    return e;
}

ExprPtr Expr::bin(ArithOp op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Bin;
    e->op = op;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

BexpPtr Bexp::lit_true() {
    auto b = std::make_shared<Bexp>();
    b->kind = Kind::Lit;
    b->lit = true;
    return b;
}

BexpPtr Bexp::lit_false() {
    auto b = std::make_shared<Bexp>();
    b->kind = Kind::Lit;
    b->lit = false;
    return b;
}

BexpPtr Bexp::cmp(CmpOp op, ExprPtr a, ExprPtr b) {
    auto x = std::make_shared<Bexp>();
    x->kind = Kind::Cmp;
    x->op = op;
    x->lhs = std::move(a);
    x->rhs = std::move(b);
    return x;
}

BexpPtr Bexp::negate(BexpPtr y) {
    auto x = std::make_shared<Bexp>();
    x->kind = Kind::Not;
    x->a = std::move(y);
    return x;
}

BexpPtr Bexp::conj(BexpPtr y, BexpPtr z) {
    auto x = std::make_shared<Bexp>();
    x->kind = Kind::And;
    x->a = std::move(y);
    x->b = std::move(z);
    return x;
}

BexpPtr Bexp::disj(BexpPtr y, BexpPtr z) {
    auto x = std::make_shared<Bexp>();
    x->kind = Kind::Or;
    x->a = std::move(y);
    x->b = std::move(z);
    return x;
}

namespace {
StmtPtr make(StmtKind k) {
    auto s = std::make_shared<Stmt>();
    s->kind = k;
    return s;
}
}  // namespace

StmtPtr Stmt::skip() { return make(StmtKind::Skip); }

StmtPtr Stmt::assign(std::string var, ExprPtr e) {
    auto s = std::make_shared<Stmt>();
    s->kind = StmtKind::Assign;
    s->var = std::move(var);
    s->expr = std::move(e);
    return s;
}

StmtPtr Stmt::havoc(std::string var) {
    auto s = std::make_shared<Stmt>();
    s->kind = StmtKind::Havoc;
    s->var = std::move(var);
    return s;
}

StmtPtr Stmt::print(ExprPtr e) {
    auto s = std::make_shared<Stmt>();
    s->kind = StmtKind::Print;
    s->expr = std::move(e);
    return s;
}

StmtPtr Stmt::seq(StmtPtr x, StmtPtr y) {
    auto s = std::make_shared<Stmt>();
    s->kind = StmtKind::Seq;
    s->a = std::move(x);
    s->b = std::move(y);
    return s;
}

StmtPtr Stmt::choice(StmtPtr x, StmtPtr y) {
    auto s = std::make_shared<Stmt>();
    s->kind = StmtKind::Choice;
    s->a = std::move(x);
    s->b = std::move(y);
    return s;
}

StmtPtr Stmt::if_(BexpPtr c, StmtPtr x, StmtPtr y) {
    auto s = std::make_shared<Stmt>();
    s->kind = StmtKind::If;
    s->cond = std::move(c);
    s->a = std::move(x);
    s->b = std::move(y);
    return s;
}

StmtPtr Stmt::while_(BexpPtr c, StmtPtr body) {
    auto s = std::make_shared<Stmt>();
    s->kind = StmtKind::While;
    s->cond = std::move(c);
    s->a = std::move(body);
    return s;
}

StmtPtr Stmt::brk() { return make(StmtKind::Break); }
StmtPtr Stmt::cont() { return make(StmtKind::Continue); }

StmtPtr Stmt::loop(StmtPtr x, StmtPtr y) {
    auto s = std::make_shared<Stmt>();
    s->kind = StmtKind::Loop;
    s->a = std::move(x);
    s->b = std::move(y);
    return s;
}

StmtPtr Stmt::block(StmtPtr body) {
    auto s = std::make_shared<Stmt>();
    s->kind = StmtKind::Block;
    s->a = std::move(body);
    return s;
}

StmtPtr Stmt::exit(int n) {
    auto s = std::make_shared<Stmt>();
    s->kind = StmtKind::Exit;
    s->exit_n = n;
    return s;
}

StmtPtr Stmt::sloop(StmtPtr body) {
    auto s = std::make_shared<Stmt>();
    s->kind = StmtKind::Sloop;
    s->a = std::move(body);
    return s;
}

StmtPtr Stmt::call(std::string name) {
    auto s = std::make_shared<Stmt>();
    s->kind = StmtKind::Call;
    s->name = std::move(name);
    return s;
}

StmtPtr Stmt::label(std::string l, StmtPtr body) {
    auto s = std::make_shared<Stmt>();
    s->kind = StmtKind::Label;
    s->name = std::move(l);
    s->a = std::move(body);
    return s;
}

StmtPtr Stmt::goto_(std::string l) {
    auto s = std::make_shared<Stmt>();
    s->kind = StmtKind::Goto;
    s->name = std::move(l);
    return s;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Expr::Kind::Const: return a->value == b->value;
        case Expr::Kind::Var: return a->var == b->var;
        case Expr::Kind::Bin:
            return a->op == b->op && expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
    }
    return false;
}

bool bexp_equal(const BexpPtr& a, const BexpPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Bexp::Kind::Lit: return a->lit == b->lit;
        case Bexp::Kind::Cmp:
            return a->op == b->op && expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
        case Bexp::Kind::Not: return bexp_equal(a->a, b->a);
        case Bexp::Kind::And:
        case Bexp::Kind::Or: return bexp_equal(a->a, b->a) && bexp_equal(a->b, b->b);
    }
    return false;
}

bool stmt_equal(const StmtPtr& a, const StmtPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    return a->var == b->var && a->name == b->name && a->exit_n == b->exit_n &&
           expr_equal(a->expr, b->expr) && bexp_equal(a->cond, b->cond) &&
           stmt_equal(a->a, b->a) && stmt_equal(a->b, b->b);
}

bool contains_kind(const StmtPtr& s, StmtKind k) {
    if (!s) return false;
    if (s->kind == k) return true;
    return contains_kind(s->a, k) || contains_kind(s->b, k);
}

void collect_vars(const ExprPtr& e, std::vector<std::string>& out) {
    if (!e) return;
    if (e->kind == Expr::Kind::Var) out.push_back(e->var);
    collect_vars(e->lhs, out);
    collect_vars(e->rhs, out);
}

void collect_vars(const BexpPtr& b, std::vector<std::string>& out) {
    if (!b) return;
    collect_vars(b->lhs, out);
    collect_vars(b->rhs, out);
    collect_vars(b->a, out);
    collect_vars(b->b, out);
}

void collect_vars(const StmtPtr& s, std::vector<std::string>& out) {
    if (!s) return;
    if (!s->var.empty()) out.push_back(s->var);
    collect_vars(s->expr, out);
    collect_vars(s->cond, out);
    collect_vars(s->a, out);
    collect_vars(s->b, out);
}

std::vector<std::string> program_vars(const StmtPtr& s) {
    std::vector<std::string> vars;
    collect_vars(s, vars);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

Module syntactic_link(const Module& m1, const Module& m2) {
    if (m1.globals != m2.globals)
        throw std::invalid_argument("syntactic_link: modules declare different globals");
    Module out = m1;
    std::set<std::string> names;
    for (const auto& p : m1.procs) names.insert(p.name);
    for (const auto& p : m2.procs) {
        if (!names.insert(p.name).second)
            throw std::invalid_argument("syntactic_link: duplicate procedure " + p.name);
        out.procs.push_back(p);
    }
    return out;
}

CfgModule syntactic_link_cfg(const CfgModule& m1, const CfgModule& m2) {
    if (m1.globals != m2.globals)
        throw std::invalid_argument("syntactic_link_cfg: modules declare different globals");
    CfgModule out = m1;
    std::set<std::string> names;
    for (const auto& p : m1.procs) names.insert(p.name);
    for (const auto& p : m2.procs) {
        if (!names.insert(p.name).second)
            throw std::invalid_argument("syntactic_link_cfg: duplicate procedure " + p.name);
        out.procs.push_back(p);
    }
    return out;
}

CfgInstr CfgInstr::do_(StmtPtr atom, std::string j) {
    CfgInstr i;
    i.kind = Kind::Do;
    i.atom = std::move(atom);
    i.next = std::move(j);
    return i;
}

CfgInstr CfgInstr::call(std::string callee, std::string j) {
    CfgInstr i;
    i.kind = Kind::Call;
    i.callee = std::move(callee);
    i.next = std::move(j);
    return i;
}

CfgInstr CfgInstr::cond(BexpPtr b, std::string j1, std::string j2) {
    CfgInstr i;
    i.kind = Kind::Cond;
    i.guard = std::move(b);
    i.next_true = std::move(j1);
    i.next_false = std::move(j2);
    return i;
}

void validate_cfg_proc(const CfgProc& p) {
    auto defined = [&](const std::string& l) { return l == p.exit || p.graph.count(l) != 0; };
    if (p.graph.count(p.exit))
        throw std::invalid_argument("cfg " + p.name + ": exit label carries an instruction");
    if (!defined(p.entry)) throw std::invalid_argument("cfg " + p.name + ": entry label undefined");
    for (const auto& [label, ins] : p.graph) {
        switch (ins.kind) {
            case CfgInstr::Kind::Do:
            case CfgInstr::Kind::Call:
                if (!defined(ins.next))
                    throw std::invalid_argument("cfg " + p.name + ": undefined successor at " + label);
                break;
            case CfgInstr::Kind::Cond:
                if (!defined(ins.next_true) || !defined(ins.next_false))
                    throw std::invalid_argument("cfg " + p.name + ": undefined successor at " + label);
                break;
        }
    }
}

}  // namespace denokat
