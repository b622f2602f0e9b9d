#include "powpres/textio.h"

#include <cctype>
#include <sstream>

namespace powpres {

ParseError::ParseError(const std::string& msg, SourceSpan span)
    : std::runtime_error(msg + " at line " + std::to_string(span.line) +
                         ", column " + std::to_string(span.column)),
      d_msg(msg),
      d_span(span)
{
}

namespace {

enum class Tok
{
  Ident,
  Int,
  LParen,
  RParen,
  Dot,
  Amp,
  Bar,
  Bang,
  Plus,
  Minus,
  Star,
  Rel,
  End
};

struct Token
{
  Tok kind;
  std::string text;
  Rel rel = Rel::Eq;
  SourceSpan span;
};

class Lexer
{
 public:
  explicit Lexer(const std::string& s) : d_s(s) {}

  std::vector<Token> run()
  {
    std::vector<Token> out;
    for (;;)
    {
      skipSpace();
      SourceSpan sp{d_pos, d_pos, d_line, d_col};
      if (d_pos >= d_s.size())
      {
        out.push_back({Tok::End, "", Rel::Eq, sp});
        return out;
      }
      char c = d_s[d_pos];
      Token t{Tok::End, "", Rel::Eq, sp};
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      {
        size_t b = d_pos;
        while (d_pos < d_s.size() &&
               (std::isalnum(static_cast<unsigned char>(d_s[d_pos])) ||
                d_s[d_pos] == '_'))
          advance();
        t.kind = Tok::Ident;
        t.text = d_s.substr(b, d_pos - b);
      }
      else if (std::isdigit(static_cast<unsigned char>(c)))
      {
        size_t b = d_pos;
        while (d_pos < d_s.size() &&
               std::isdigit(static_cast<unsigned char>(d_s[d_pos])))
          advance();
        t.kind = Tok::Int;
        t.text = d_s.substr(b, d_pos - b);
      }
      else
      {
        auto two = d_s.substr(d_pos, 2);
        if (two == "<=" || two == ">=" || two == "!=")
        {
          t.kind = Tok::Rel;
          t.rel = two == "<=" ? Rel::Le : two == ">=" ? Rel::Ge : Rel::Ne;
          t.text = two;
          advance();
          advance();
        }
        else
        {
          advance();
          t.text = std::string(1, c);
          switch (c)
          {
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            case '.': t.kind = Tok::Dot; break;
            case '&': t.kind = Tok::Amp; break;
            case '|': t.kind = Tok::Bar; break;
            case '!': t.kind = Tok::Bang; break;
            case '+': t.kind = Tok::Plus; break;
            case '-': t.kind = Tok::Minus; break;
            case '*': t.kind = Tok::Star; break;
            case '<': t.kind = Tok::Rel; t.rel = Rel::Lt; break;
            case '>': t.kind = Tok::Rel; t.rel = Rel::Gt; break;
            case '=': t.kind = Tok::Rel; t.rel = Rel::Eq; break;
            default:
              sp.end = d_pos;
              throw ParseError(std::string("unexpected character '") + c + "'",
                               sp);
          }
        }
      }
      t.span.end = d_pos;
      out.push_back(t);
    }
  }

 private:
  void advance()
  {
    if (d_s[d_pos] == '\n')
    {
      ++d_line;
      d_col = 1;
    }
    else
      ++d_col;
    ++d_pos;
  }
  void skipSpace()
  {
    while (d_pos < d_s.size() &&
           std::isspace(static_cast<unsigned char>(d_s[d_pos])))
      advance();
  }

  const std::string& d_s;
  size_t d_pos = 0, d_line = 1, d_col = 1;
};

bool isKeyword(const std::string& s)
{
  return s == "exists" || s == "forall" || s == "true" || s == "false" ||
         s == "powA" || s == "powB";
}

class Parser
{
 public:
  Parser(std::vector<Token> toks, Symbols& syms)
      : d_toks(std::move(toks)), d_syms(syms)
  {
  }

  FormulaPtr parseAll()
  {
    FormulaPtr f = body();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return d_toks[d_i]; }
  Token next() { return d_toks[d_i++]; }
  bool isIdent(const char* kw) const
  {
    return peek().kind == Tok::Ident && peek().text == kw;
  }
  [[noreturn]] void fail(const std::string& msg) const
  {
    const Token& t = peek();
    std::string m = t.kind == Tok::End ? msg + " (end of input)" : msg;
    throw ParseError(m, t.span);
  }
  void expect(Tok k, const char* what)
  {
    if (peek().kind != k) fail(std::string("expected ") + what);
    next();
  }

  FormulaPtr body()
  {
    if (isIdent("exists") || isIdent("forall"))
    {
      bool ex = next().text == "exists";
      std::vector<VarId> vars;
      while (peek().kind == Tok::Ident)
      {
        if (isKeyword(peek().text))
          fail("keyword '" + peek().text + "' used as a variable");
        vars.push_back(d_syms.intern(next().text));
      }
      expect(Tok::Dot, "'.'");
      FormulaPtr b = body();
      return ex ? mkExists(std::move(vars), b) : mkForall(std::move(vars), b);
    }
    std::vector<FormulaPtr> kids{conj()};
    while (peek().kind == Tok::Bar)
    {
      next();
      kids.push_back(conj());
    }
    return mkOr(std::move(kids));
  }

  FormulaPtr conj()
  {
    std::vector<FormulaPtr> kids{lit()};
    while (peek().kind == Tok::Amp)
    {
      next();
      kids.push_back(lit());
    }
    return mkAnd(std::move(kids));
  }

  FormulaPtr lit()
  {
    if (peek().kind == Tok::Bang)
    {
      next();
      return mkNot(lit());
    }
    if (peek().kind == Tok::LParen)
    {
      next();
      FormulaPtr f = body();
      expect(Tok::RParen, "')'");
      return f;
    }
    return atom();
  }

  FormulaPtr atom()
  {
    if (isIdent("true"))
    {
      next();
      return mkTrue();
    }
    if (isIdent("false"))
    {
      next();
      return mkFalse();
    }
    if (isIdent("powA") || isIdent("powB"))
    {
      BaseTag tag = next().text == "powA" ? BaseTag::A : BaseTag::B;
      expect(Tok::LParen, "'('");
      LinearTerm t = term();
      expect(Tok::RParen, "')'");
      return mkPower(t, tag);
    }
    if (isIdent("exists") || isIdent("forall"))
      fail("quantifier must be parenthesised here");
    LinearTerm lhs = term();
    if (peek().kind != Tok::Rel) fail("expected relation");
    Rel r = next().rel;
    LinearTerm rhs = term();
    return mkCmp(lhs - rhs, r);
  }

  LinearTerm term()
  {
    LinearTerm t = addend();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus)
    {
      bool minus = next().kind == Tok::Minus;
      LinearTerm a = addend();
      if (minus)
        t -= a;
      else
        t += a;
    }
    return t;
  }

  LinearTerm addend()
  {
    if (peek().kind == Tok::Minus)
    {
      next();
      return -addend();
    }
    if (peek().kind == Tok::Int)
    {
      BigInt c(next().text);
      if (peek().kind == Tok::Star)
      {
        next();
        return LinearTerm::var(identifier(), c);
      }
      return LinearTerm(c);
    }
    if (peek().kind == Tok::Ident) return LinearTerm::var(identifier());
    fail("expected term");
  }

  VarId identifier()
  {
    if (peek().kind != Tok::Ident) fail("expected identifier");
    if (isKeyword(peek().text))
      fail("keyword '" + peek().text + "' used as a variable");
    return d_syms.intern(next().text);
  }

  std::vector<Token> d_toks;
  size_t d_i = 0;
  Symbols& d_syms;
};

void appendMonomial(std::string& out, const BigInt& c, const std::string& v)
{
  bool first = out.empty();
  BigInt a = abs(c);
  if (first)
    out += c < 0 ? "-" : "";
  else
    out += c < 0 ? " - " : " + ";
  if (v.empty())
    out += a.get_str();
  else if (a == 1)
    out += v;
  else
    out += a.get_str() + "*" + v;
}

std::string atomText(const Atom& a, const Symbols& syms)
{
  if (a.kind == Atom::Kind::Power)
    return std::string(a.tag == BaseTag::A ? "powA(" : "powB(") +
           printTerm(a.term, syms) + ")";
  LinearTerm lhs = a.term;
  lhs.setConstant(0);
  std::string l = lhs.isConstant() ? "0" : printTerm(lhs, syms);
  BigInt rhs = -a.term.constant();
  return l + " " + relText(a.rel) + " " + rhs.get_str();
}

std::string printBody(const Formula& f, const Symbols& syms);

std::string printLit(const Formula& f, const Symbols& syms)
{
  switch (f.kind)
  {
    case Formula::Kind::Atom: return atomText(f.atom, syms);
    case Formula::Kind::Not:
    {
      const Formula& k = *f.kids[0];
      if (k.kind == Formula::Kind::Not) return "!" + printLit(k, syms);
      return "!(" + printBody(k, syms) + ")";
    }
    case Formula::Kind::And:
      if (f.kids.empty()) return "true";
      break;
    case Formula::Kind::Or:
      if (f.kids.empty()) return "false";
      break;
    default: break;
  }
  return "(" + printBody(f, syms) + ")";
}

std::string printConj(const Formula& f, const Symbols& syms)
{
  if (f.kind != Formula::Kind::And || f.kids.size() < 2)
    return printLit(f, syms);
  std::string out;
  for (size_t i = 0; i < f.kids.size(); ++i)
  {
    if (i) out += " & ";
    out += printLit(*f.kids[i], syms);
  }
  return out;
}

std::string printBody(const Formula& f, const Symbols& syms)
{
  if (f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall)
  {
    std::string out = f.kind == Formula::Kind::Exists ? "exists" : "forall";
    for (VarId v : f.vars) out += " " + syms.name(v);
    return out + " . " + printBody(*f.kids[0], syms);
  }
  if (f.kind != Formula::Kind::Or || f.kids.size() < 2)
    return printConj(f, syms);
  std::string out;
  for (size_t i = 0; i < f.kids.size(); ++i)
  {
    if (i) out += " | ";
    out += printConj(*f.kids[i], syms);
  }
  return out;
}

std::string trim(const std::string& s)
{
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parseLineNo(const std::string& tok, int line)
{
  try
  {
    size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  }
  catch (const std::exception&)
  {
    throw std::invalid_argument("line " + std::to_string(line) +
                                ": expected a line number, got '" + tok + "'");
  }
}

int parseCounter(const std::string& tok, int line)
{
  if (tok == "c1") return 1;
  if (tok == "c2") return 2;
  throw std::invalid_argument("line " + std::to_string(line) +
                              ": expected c1 or c2, got '" + tok + "'");
}

}  // namespace

ParsedFormula parseFormula(const std::string& text)
{
  ParsedFormula pf;
  pf.formula = parseFormula(text, pf.syms);
  return pf;
}

FormulaPtr parseFormula(const std::string& text, Symbols& syms)
{
  Parser p(Lexer(text).run(), syms);
  return p.parseAll();
}

std::string printTerm(const LinearTerm& t, const Symbols& syms)
{
  std::string out;
  for (const auto& [v, c] : t.coeffs()) appendMonomial(out, c, syms.name(v));
  if (t.constant() != 0 || out.empty())
  {
    if (out.empty())
      out = t.constant().get_str();
    else
      appendMonomial(out, t.constant(), "");
  }
  return out;
}

std::string printFormula(const Formula& f, const Symbols& syms)
{
  return printBody(f, syms);
}

MinskyMachine parseMinsky(const std::string& text)
{
  std::vector<std::string> lines;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur))
  {
    auto hash = cur.find('#');
    if (hash != std::string::npos) cur = cur.substr(0, hash);
    lines.push_back(trim(cur));
  }
  MinskyMachine m;
  if (lines.empty() || (lines.back() != "HALT" && !lines.back().empty()))
    lines.push_back("");
  m.R = static_cast<int>(lines.size());
  for (int r = 1; r < m.R; ++r)
  {
    std::istringstream ls(lines[r - 1]);
    std::vector<std::string> w;
    for (std::string s; ls >> s;) w.push_back(s);
    MinskyInstr ins;
    if (w.size() == 4 && w[0] == "INC" && w[2] == "GOTO")
    {
      ins.kind = MinskyInstr::Kind::Inc;
      ins.counter = parseCounter(w[1], r);
      ins.target = parseLineNo(w[3], r);
    }
    else if (w.size() == 6 && w[0] == "TSTDEC" && w[2] == "ZERO" &&
             w[4] == "ELSE")
    {
      ins.kind = MinskyInstr::Kind::TstDec;
      ins.counter = parseCounter(w[1], r);
      ins.target = parseLineNo(w[3], r);
      ins.elseTarget = parseLineNo(w[5], r);
    }
    else
    {
      throw std::invalid_argument("line " + std::to_string(r) +
                                  ": malformed instruction '" +
                                  lines[r - 1] + "'");
    }
    m.instrs.push_back(ins);
  }
  validateMinsky(m);
  return m;
}

void validateMinsky(const MinskyMachine& m)
{
  if (m.R < 1) throw std::invalid_argument("machine needs R >= 1");
  if (static_cast<int>(m.instrs.size()) != m.R - 1)
    throw std::invalid_argument("machine must have exactly R-1 instructions");
  for (int r = 1; r < m.R; ++r)
  {
    const auto& ins = m.instrs[r - 1];
    auto bad = [&](const std::string& why) {
      throw std::invalid_argument("line " + std::to_string(r) + ": " + why);
    };
    if (ins.counter != 1 && ins.counter != 2) bad("counter must be 1 or 2");
    if (ins.target < 1 || ins.target > m.R) bad("jump target out of range");
    if (ins.kind == MinskyInstr::Kind::TstDec &&
        (ins.elseTarget < 1 || ins.elseTarget > m.R))
      bad("jump target out of range");
  }
}

std::string printMinsky(const MinskyMachine& m)
{
  std::string out;
  for (const auto& ins : m.instrs)
  {
    std::string c = "c" + std::to_string(ins.counter);
    if (ins.kind == MinskyInstr::Kind::Inc)
      out += "INC " + c + " GOTO " + std::to_string(ins.target) + "\n";
    else
      out += "TSTDEC " + c + " ZERO " + std::to_string(ins.target) +
             " ELSE " + std::to_string(ins.elseTarget) + "\n";
  }
  return out + "HALT\n";
}

}  // namespace powpres
