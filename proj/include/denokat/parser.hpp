#pragma once

#include <string>

#include "denokat/syntax.hpp"

namespace denokat {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shared statement grammar:
///   skip | x := e | x := ? | print e | break | continue | exit n
///   call f | goto L | label L: s | choice { s } or { s }
///   if b then { s } else { s } | while b do { s }
///   loop { s } { s } | block { s } | sloop { s } | s ; s
StmtPtr parse_stmt(const std::string& text);

/// Module file: optional `global x, y` header, then `proc f(locals a) { ... }`.
Module parse_module(const std::string& text);

/// CFG file: optional `global` header, then
///   cfgproc f entry L0 exit LX { L0: do x := 1 -> L1; L1: cond x > 0 -> L0, LX; }
CfgModule parse_cfg_module(const std::string& text);

std::string print_expr(const ExprPtr& e);
std::string print_bexp(const BexpPtr& b);
std::string print_stmt(const StmtPtr& s);         // single line
std::string print_module(const Module& m);
std::string print_cfg_module(const CfgModule& m);

enum class FileKind { Stmt, Module, Cfg };
FileKind sniff_file_kind(const std::string& text);

}  // namespace denokat
