// Concrete syntax for formulas and 2-counter machine descriptions.
//
// Formula grammar:
//   formula := body
//   body    := ("exists" | "forall") ident* "." body | disj
//   disj    := conj ("|" conj)*
//   conj    := lit ("&" lit)*
//   lit     := "!" lit | "(" body ")" | atom
//   atom    := term rel term | "powA" "(" term ")" | "powB" "(" term ")"
//            | "true" | "false"
//   rel     := "<" | "<=" | "=" | "!=" | ">=" | ">"
//   term    := addend (("+" | "-") addend)*
//   addend  := integer | ident | integer "*" ident | "-" addend
//
// Nested quantifiers are accepted so that the machine encoder's output can be
// read back; the decision procedure itself only takes one leading "exists".
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "powpres/core.h"

namespace powpres {

struct SourceSpan
{
  size_t start = 0;
  size_t end = 0;
  size_t line = 1;
  size_t column = 1;
};

class ParseError : public std::runtime_error
{
 public:
  ParseError(const std::string& msg, SourceSpan span);
  const SourceSpan& span() const { return d_span; }
  const std::string& message() const { return d_msg; }

 private:
  std::string d_msg;
  SourceSpan d_span;
};

struct ParsedFormula
{
  Symbols syms;
  FormulaPtr formula;
};

ParsedFormula parseFormula(const std::string& text);
/// Parse into an existing symbol table, so ids match a previous parse.
FormulaPtr parseFormula(const std::string& text, Symbols& syms);

std::string printTerm(const LinearTerm& t, const Symbols& syms);
std::string printFormula(const Formula& f, const Symbols& syms);

struct MinskyInstr
{
  enum class Kind { Inc, TstDec };
  Kind kind = Kind::Inc;
  int counter = 1;     // 1 or 2
  int target = 1;      // GOTO for Inc, ZERO branch for TstDec
  int elseTarget = 1;  // TstDec only
};

/// Instructions 1..R-1 are stored at index 0..R-2; line R halts.
struct MinskyMachine
{
  int R = 1;
  std::vector<MinskyInstr> instrs;
};

/// Line r holds `INC c<i> GOTO r'` or `TSTDEC c<i> ZERO r' ELSE r''`.
/// The last line is `HALT` or blank; a missing final line counts as blank.
MinskyMachine parseMinsky(const std::string& text);
std::string printMinsky(const MinskyMachine& m);
/// Throws std::invalid_argument describing the first problem found.
void validateMinsky(const MinskyMachine& m);

}  // namespace powpres
