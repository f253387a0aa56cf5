#include "denokat/parser.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace denokat {

namespace {

struct Token {
    enum class Kind { Ident, Num, Sym, End } kind;
    std::string text;
    int num = 0;
    size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { tokenize(); }

    const Token& peek(size_t ahead = 0) const {
        size_t i = idx_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    Token next() {
        Token t = peek();
        if (idx_ < tokens_.size() - 1) ++idx_;
        return t;
    }
    size_t mark() const { return idx_; }
    void rewind(size_t m) { idx_ = m; }

    bool at_sym(const std::string& s) const {
        return peek().kind == Token::Kind::Sym && peek().text == s;
    }
    bool at_word(const std::string& s) const {
        return peek().kind == Token::Kind::Ident && peek().text == s;
    }
    bool eat_sym(const std::string& s) {
        if (!at_sym(s)) return false;
        next();
        return true;
    }
    bool eat_word(const std::string& s) {
        if (!at_word(s)) return false;
        next();
        return true;
    }
    void expect_sym(const std::string& s) {
        if (!eat_sym(s)) fail("expected '" + s + "'");
    }
    void expect_word(const std::string& s) {
        if (!eat_word(s)) fail("expected '" + s + "'");
    }
    std::string expect_ident() {
        if (peek().kind != Token::Kind::Ident) fail("expected identifier");
        return next().text;
    }
    int expect_num() {
        if (peek().kind != Token::Kind::Num) fail("expected number");
        return next().num;
    }
    bool done() const { return peek().kind == Token::Kind::End; }

    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream os;
        os << "parse error at offset " << peek().pos << ": " << msg;
        if (peek().kind != Token::Kind::End) os << " (found '" << peek().text << "')";
        throw ParseError(os.str());
    }

private:
    void tokenize() {
        size_t i = 0;
        while (i < text_.size()) {
            char c = text_[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            if (c == '#' || (c == '/' && i + 1 < text_.size() && text_[i + 1] == '/')) {
                while (i < text_.size() && text_[i] != '\n') ++i;
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
                size_t j = i;
                while (j < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_' ||
                        text_[j] == '$'))
                    ++j;
                tokens_.push_back({Token::Kind::Ident, text_.substr(i, j - i), 0, i});
                i = j;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                size_t j = i;
                int v = 0;
                while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) {
                    v = v * 10 + (text_[j] - '0');
                    ++j;
                }
                tokens_.push_back({Token::Kind::Num, text_.substr(i, j - i), v, i});
                i = j;
                continue;
            }
            static const char* two[] = {":=", "==", "!=", "<=", ">=", "&&", "||", "->", "^w"};
            bool matched = false;
            for (const char* t : two) {
                if (text_.compare(i, 2, t) == 0) {
                    tokens_.push_back({Token::Kind::Sym, t, 0, i});
                    i += 2;
                    matched = true;
                    break;
                }
            }
            if (matched) continue;
            tokens_.push_back({Token::Kind::Sym, std::string(1, c), 0, i});
            ++i;
        }
        tokens_.push_back({Token::Kind::End, "<end>", 0, text_.size()});
    }

    const std::string& text_;
    std::vector<Token> tokens_;
    size_t idx_ = 0;
};

const char* kKeywords[] = {"skip",  "print", "break", "continue", "exit",  "call",
                           "goto",  "label", "choice", "or",       "if",    "then",
                           "else",  "while", "do",     "loop",     "block", "sloop",
                           "true",  "false", "proc",   "global",   "locals", "cfgproc",
                           "entry", "exit",  "cond"};

bool is_keyword(const std::string& w) {
    for (const char* k : kKeywords)
        if (w == k) return true;
    return false;
}

class Parser {
public:
    explicit Parser(Lexer& lex) : lex_(lex) {}

    // ---- expressions ----

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (lex_.eat_sym("+"))
                e = Expr::bin(ArithOp::Add, e, term());
            else if (lex_.eat_sym("-"))
                e = Expr::bin(ArithOp::Sub, e, term());
            else
                return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            if (lex_.eat_sym("*"))
                e = Expr::bin(ArithOp::Mul, e, factor());
            else if (lex_.eat_sym("/"))
                e = Expr::bin(ArithOp::Div, e, factor());
            else if (lex_.eat_sym("%"))
                e = Expr::bin(ArithOp::Mod, e, factor());
            else
                return e;
        }
    }

    ExprPtr factor() {
        if (lex_.peek().kind == Token::Kind::Num) return Expr::constant(lex_.next().num);
        if (lex_.peek().kind == Token::Kind::Ident && !is_keyword(lex_.peek().text))
            return Expr::variable(lex_.next().text);
        if (lex_.eat_sym("(")) {
            ExprPtr e = expr();
            lex_.expect_sym(")");
            return e;
        }
        lex_.fail("expected expression");
    }

    // ---- boolean expressions ----

    BexpPtr bexp() {
        BexpPtr b = bterm();
        while (lex_.eat_sym("||")) b = Bexp::disj(b, bterm());
        return b;
    }

    BexpPtr bterm() {
        BexpPtr b = bfactor();
        while (lex_.eat_sym("&&")) b = Bexp::conj(b, bfactor());
        return b;
    }

    BexpPtr bfactor() {
        if (lex_.eat_sym("!")) return Bexp::negate(bfactor());
        if (lex_.eat_word("true")) return Bexp::lit_true();
        if (lex_.eat_word("false")) return Bexp::lit_false();
        if (lex_.at_sym("(")) {
            // either a parenthesized boolean or the left operand of a comparison
            size_t m = lex_.mark();
            lex_.eat_sym("(");
            try {
                BexpPtr b = bexp();
                lex_.expect_sym(")");
                if (comparison_ahead()) lex_.fail("comparison after boolean");
                return b;
            } catch (const ParseError&) {
                lex_.rewind(m);
            }
        }
        ExprPtr l = expr();
        CmpOp op = cmp_op();
        return Bexp::cmp(op, l, expr());
    }

    bool comparison_ahead() {
        for (const char* s : {"==", "!=", "<=", ">=", "<", ">"})
            if (lex_.at_sym(s)) return true;
        return false;
    }

    CmpOp cmp_op() {
        if (lex_.eat_sym("==")) return CmpOp::Eq;
        if (lex_.eat_sym("!=")) return CmpOp::Ne;
        if (lex_.eat_sym("<=")) return CmpOp::Le;
        if (lex_.eat_sym(">=")) return CmpOp::Ge;
        if (lex_.eat_sym("<")) return CmpOp::Lt;
        if (lex_.eat_sym(">")) return CmpOp::Gt;
        lex_.fail("expected comparison operator");
    }

    // ---- statements ----

    StmtPtr stmt() {
        StmtPtr s = item();
        while (lex_.eat_sym(";")) {
            if (lex_.at_sym("}") || lex_.done()) break;  // tolerate trailing ';'
            s = Stmt::seq(s, item());
        }
        return s;
    }

    StmtPtr block() {
        lex_.expect_sym("{");
        StmtPtr s = stmt();
        lex_.expect_sym("}");
        return s;
    }

    StmtPtr item() {
        if (lex_.eat_word("skip")) return Stmt::skip();
        if (lex_.eat_word("break")) return Stmt::brk();
        if (lex_.eat_word("continue")) return Stmt::cont();
        if (lex_.eat_word("print")) return Stmt::print(expr());
        if (lex_.eat_word("exit")) return Stmt::exit(lex_.expect_num());
        if (lex_.eat_word("call")) return Stmt::call(lex_.expect_ident());
        if (lex_.eat_word("goto")) return Stmt::goto_(lex_.expect_ident());
        if (lex_.eat_word("label")) {
            std::string l = lex_.expect_ident();
            lex_.expect_sym(":");
            return Stmt::label(std::move(l), lex_.at_sym("{") ? block() : item());
        }
        if (lex_.eat_word("choice")) {
            StmtPtr a = block();
            lex_.expect_word("or");
            return Stmt::choice(a, block());
        }
        if (lex_.eat_word("if")) {
            BexpPtr c = bexp();
            lex_.expect_word("then");
            StmtPtr a = block();
            lex_.expect_word("else");
            return Stmt::if_(c, a, block());
        }
        if (lex_.eat_word("while")) {
            BexpPtr c = bexp();
            lex_.expect_word("do");
            return Stmt::while_(c, block());
        }
        if (lex_.eat_word("loop")) {
            StmtPtr a = block();
            return Stmt::loop(a, block());
        }
        if (lex_.eat_word("block")) return Stmt::block(block());
        if (lex_.eat_word("sloop")) return Stmt::sloop(block());
        if (lex_.at_sym("{")) return block();
        if (lex_.peek().kind == Token::Kind::Ident && !is_keyword(lex_.peek().text)) {
            std::string var = lex_.next().text;
            lex_.expect_sym(":=");
            if (lex_.eat_sym("?")) return Stmt::havoc(std::move(var));
            return Stmt::assign(std::move(var), expr());
        }
        lex_.fail("expected statement");
    }

    // ---- modules ----

    std::vector<std::string> ident_list() {
        std::vector<std::string> out{lex_.expect_ident()};
        while (lex_.eat_sym(",")) out.push_back(lex_.expect_ident());
        return out;
    }

    Module module() {
        Module m;
        if (lex_.eat_word("global")) m.globals = ident_list();
        while (lex_.at_word("proc")) {
            lex_.eat_word("proc");
            Procedure p;
            p.name = lex_.expect_ident();
            if (lex_.eat_sym("(")) {
                if (lex_.eat_word("locals")) p.locals = ident_list();
                lex_.expect_sym(")");
            }
            p.body = block();
            m.procs.push_back(std::move(p));
        }
        if (!lex_.done()) lex_.fail("expected 'proc'");
        return m;
    }

    CfgModule cfg_module() {
        CfgModule m;
        if (lex_.eat_word("global")) m.globals = ident_list();
        while (lex_.at_word("cfgproc")) {
            lex_.eat_word("cfgproc");
            CfgProc p;
            p.name = lex_.expect_ident();
            if (lex_.eat_sym("(")) {
                if (lex_.eat_word("locals")) p.locals = ident_list();
                lex_.expect_sym(")");
            }
            lex_.expect_word("entry");
            p.entry = lex_.expect_ident();
            lex_.expect_word("exit");
            p.exit = lex_.expect_ident();
            lex_.expect_sym("{");
            while (!lex_.eat_sym("}")) {
                std::string label = lex_.expect_ident();
                lex_.expect_sym(":");
                CfgInstr ins = cfg_instr();
                if (!p.graph.emplace(label, std::move(ins)).second)
                    lex_.fail("duplicate label " + label);
                lex_.eat_sym(";");
            }
            validate_cfg_proc(p);
            m.procs.push_back(std::move(p));
        }
        if (!lex_.done()) lex_.fail("expected 'cfgproc'");
        return m;
    }

    CfgInstr cfg_instr() {
        if (lex_.eat_word("do")) {
            StmtPtr atom = item();
            switch (atom->kind) {
                case StmtKind::Skip:
                case StmtKind::Assign:
                case StmtKind::Havoc:
                case StmtKind::Print: break;
                default: lex_.fail("cfg 'do' expects an atomic statement");
            }
            lex_.expect_sym("->");
            return CfgInstr::do_(atom, lex_.expect_ident());
        }
        if (lex_.eat_word("call")) {
            std::string callee = lex_.expect_ident();
            lex_.expect_sym("->");
            return CfgInstr::call(std::move(callee), lex_.expect_ident());
        }
        if (lex_.eat_word("cond")) {
            BexpPtr b = bexp();
            lex_.expect_sym("->");
            std::string j1 = lex_.expect_ident();
            lex_.expect_sym(",");
            return CfgInstr::cond(b, std::move(j1), lex_.expect_ident());
        }
        lex_.fail("expected 'do', 'call' or 'cond'");
    }

private:
    Lexer& lex_;
};

}  // namespace

StmtPtr parse_stmt(const std::string& text) {
    Lexer lex(text);
    Parser p(lex);
    StmtPtr s = p.stmt();
    if (!lex.done()) lex.fail("trailing input");
    return s;
}

Module parse_module(const std::string& text) {
    Lexer lex(text);
    return Parser(lex).module();
}

CfgModule parse_cfg_module(const std::string& text) {
    Lexer lex(text);
    return Parser(lex).cfg_module();
}

// ---- printing ----------------------------------------------------------------

namespace {
const char* arith_sym(ArithOp op) {
    switch (op) {
        case ArithOp::Add: return "+";
        case ArithOp::Sub: return "-";
        case ArithOp::Mul: return "*";
        case ArithOp::Div: return "/";
        case ArithOp::Mod: return "%";
    }
    return "?";
}
const char* cmp_sym(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return "==";
        case CmpOp::Ne: return "!=";
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
    }
    return "?";
}
}  // namespace

std::string print_expr(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Const: return std::to_string(e->value);
        case Expr::Kind::Var: return e->var;
        case Expr::Kind::Bin:
            return "(" + print_expr(e->lhs) + " " + arith_sym(e->op) + " " + print_expr(e->rhs) + ")";
    }
    return "?";
}

std::string print_bexp(const BexpPtr& b) {
    switch (b->kind) {
        case Bexp::Kind::Lit: return b->lit ? "true" : "false";
        case Bexp::Kind::Cmp:
            return print_expr(b->lhs) + " " + cmp_sym(b->op) + " " + print_expr(b->rhs);
        case Bexp::Kind::Not: return "!(" + print_bexp(b->a) + ")";
        case Bexp::Kind::And: return "(" + print_bexp(b->a) + ") && (" + print_bexp(b->b) + ")";
        case Bexp::Kind::Or: return "(" + print_bexp(b->a) + ") || (" + print_bexp(b->b) + ")";
    }
    return "?";
}

std::string print_stmt(const StmtPtr& s) {
    switch (s->kind) {
        case StmtKind::Skip: return "skip";
        case StmtKind::Assign: return s->var + " := " + print_expr(s->expr);
        case StmtKind::Havoc: return s->var + " := ?";
        case StmtKind::Print: return "print " + print_expr(s->expr);
        case StmtKind::Seq: return print_stmt(s->a) + "; " + print_stmt(s->b);
        case StmtKind::Choice:
            return "choice { " + print_stmt(s->a) + " } or { " + print_stmt(s->b) + " }";
        case StmtKind::If:
            return "if " + print_bexp(s->cond) + " then { " + print_stmt(s->a) + " } else { " +
                   print_stmt(s->b) + " }";
        case StmtKind::While:
            return "while " + print_bexp(s->cond) + " do { " + print_stmt(s->a) + " }";
        case StmtKind::Break: return "break";
        case StmtKind::Continue: return "continue";
        case StmtKind::Loop:
            return "loop { " + print_stmt(s->a) + " } { " + print_stmt(s->b) + " }";
        case StmtKind::Block: return "block { " + print_stmt(s->a) + " }";
        case StmtKind::Exit: return "exit " + std::to_string(s->exit_n);
        case StmtKind::Sloop: return "sloop { " + print_stmt(s->a) + " }";
        case StmtKind::Call: return "call " + s->name;
        case StmtKind::Label: return "label " + s->name + ": { " + print_stmt(s->a) + " }";
        case StmtKind::Goto: return "goto " + s->name;
    }
    return "?";
}

std::string print_module(const Module& m) {
    std::ostringstream os;
    if (!m.globals.empty()) {
        os << "global ";
        for (size_t i = 0; i < m.globals.size(); ++i) os << (i ? ", " : "") << m.globals[i];
        os << "\n";
    }
    for (const auto& p : m.procs) {
        os << "proc " << p.name << "(";
        if (!p.locals.empty()) {
            os << "locals ";
            for (size_t i = 0; i < p.locals.size(); ++i) os << (i ? ", " : "") << p.locals[i];
        }
        os << ") { " << print_stmt(p.body) << " }\n";
    }
    return os.str();
}

std::string print_cfg_module(const CfgModule& m) {
    std::ostringstream os;
    if (!m.globals.empty()) {
        os << "global ";
        for (size_t i = 0; i < m.globals.size(); ++i) os << (i ? ", " : "") << m.globals[i];
        os << "\n";
    }
    for (const auto& p : m.procs) {
        os << "cfgproc " << p.name << " (";
        if (!p.locals.empty()) {
            os << "locals ";
            for (size_t i = 0; i < p.locals.size(); ++i) os << (i ? ", " : "") << p.locals[i];
        }
        os << ") entry " << p.entry << " exit " << p.exit << " {\n";
        for (const auto& [label, ins] : p.graph) {
            os << "  " << label << ": ";
            switch (ins.kind) {
                case CfgInstr::Kind::Do:
                    os << "do " << print_stmt(ins.atom) << " -> " << ins.next;
                    break;
                case CfgInstr::Kind::Call:
                    os << "call " << ins.callee << " -> " << ins.next;
                    break;
                case CfgInstr::Kind::Cond:
                    os << "cond " << print_bexp(ins.guard) << " -> " << ins.next_true << ", "
                       << ins.next_false;
                    break;
            }
            os << ";\n";
        }
        os << "}\n";
    }
    return os.str();
}

FileKind sniff_file_kind(const std::string& text) {
    Lexer lex(text);
    bool has_proc = false;
    for (;;) {
        const Token& t = lex.peek();
        if (t.kind == Token::Kind::End) break;
        if (t.kind == Token::Kind::Ident) {
            if (t.text == "cfgproc") return FileKind::Cfg;
            if (t.text == "proc") has_proc = true;
        }
        lex.next();
    }
    return has_proc ? FileKind::Module : FileKind::Stmt;
}

}  // namespace denokat
