#include "powpres/cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <climits>
#include <fstream>
#include <iostream>
#include <sstream>

#include "powpres/driver.h"
#include "powpres/numth.h"
#include "powpres/oracle.h"
#include "powpres/reductions.h"
#include "powpres/textio.h"

namespace powpres {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

BigInt parseBig(const std::string& s, const char* what)
{
  BigInt v;
  if (s.empty() || v.set_str(s, 10) != 0) throw UsageError(std::string("bad integer for ") + what + ": " + s);
  return v;
}

BigInt jsonBig(const json& j)
{
  if (j.is_string()) return parseBig(j.get<std::string>(), "matrix entry");
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
  throw UsageError("matrix entries must be integers or decimal strings");
}

Matrix jsonMatrix(const json& j, const char* key, size_t width)
{
  Matrix m;
  if (!j.contains(key)) return m;
  for (const auto& row : j.at(key))
  {
    Row r;
    for (const auto& x : row) r.push_back(jsonBig(x));
    if (r.size() != width) throw UsageError(std::string("row of ") + key + " has the wrong length");
    m.push_back(r);
  }
  return m;
}

Row jsonRow(const json& j, const char* key)
{
  Row r;
  if (!j.contains(key)) return r;
  for (const auto& x : j.at(key)) r.push_back(jsonBig(x));
  return r;
}

std::string readFile(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct System
{
  std::vector<BigInt> z;
  Matrix A, C;
  Row b, d;
};

System loadSystem(const std::string& path, const BigInt& alpha, const BigInt& beta)
{
  json j;
  try
  {
    j = json::parse(readFile(path));
  }
  catch (const json::parse_error& e)
  {
    throw UsageError(std::string("bad JSON: ") + e.what());
  }
  System s;
  if (!j.contains("bases")) throw UsageError("system needs a \"bases\" list");
  for (const auto& b : j.at("bases"))
  {
    std::string t = b.is_string() ? b.get<std::string>() : b.dump();
    if (t == "a")
      s.z.push_back(alpha);
    else if (t == "b")
      s.z.push_back(beta);
    else
      s.z.push_back(parseBig(t, "base"));
  }
  s.A = jsonMatrix(j, "A", s.z.size());
  s.b = jsonRow(j, "b");
  s.C = jsonMatrix(j, "C", s.z.size());
  s.d = jsonRow(j, "d");
  if (s.A.size() != s.b.size()) throw UsageError("A and b differ in length");
  if (s.C.size() != s.d.size()) throw UsageError("C and d differ in length");
  return s;
}

int exitFor(Verdict v)
{
  switch (v)
  {
    case Verdict::Sat: return kExitSat;
    case Verdict::Unsat: return kExitUnsat;
    case Verdict::Unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

json statsJson(const SolveStats& s)
{
  return {{"instances", s.instances},
          {"cells", s.cells},
          {"enumerated", s.enumerated},
          {"budgetTruncated", s.budgetTruncated}};
}

struct Common
{
  std::string alpha = "2", beta = "3";
  bool json = false;
  std::string mode = "budget";
  unsigned long budget = 1000000;
  unsigned precisionBits = 64;

  void attach(CLI::App* app, bool solverFlags)
  {
    app->add_option("--alpha", alpha, "first base")->capture_default_str();
    app->add_option("--beta", beta, "second base")->capture_default_str();
    app->add_flag("--json", json, "machine-readable output");
    if (!solverFlags) return;
    app->add_option("--mode", mode, "complete or budget")
        ->check(CLI::IsMember({"complete", "budget"}))
        ->capture_default_str();
    app->add_option("--budget", budget, "search steps per enumeration")->capture_default_str();
    app->add_option("--precision-bits", precisionBits, "bits for logarithm enclosures")
        ->capture_default_str();
  }
  BigInt a() const { return parseBig(alpha, "--alpha"); }
  BigInt b() const { return parseBig(beta, "--beta"); }
  SolveOptions options() const
  {
    SolveOptions o;
    o.budget = budget;
    o.precisionBits = precisionBits;
    if (mode == "complete")
    {
      o.budget = ULONG_MAX;
      o.kroneckerSteps = ULONG_MAX;
      o.maxThresholdSplit = ULONG_MAX;
    }
    return o;
  }
};

std::string formulaText(const std::string& expr, const std::string& file)
{
  if (!expr.empty() && !file.empty()) throw UsageError("give either --expr or --file");
  if (!file.empty()) return readFile(file);
  if (expr.empty()) throw UsageError("a formula is required (--expr or --file)");
  return expr;
}

int cmdDecide(const Common& c, const std::string& expr, const std::string& file,
              std::ostream& out)
{
  ParsedFormula p = parseFormula(formulaText(expr, file));
  DecideResult r = decide(p.formula, p.syms, c.a(), c.b(), c.options());
  if (c.json)
  {
    json model = json::object();
    for (const auto& [v, x] : r.model) model[p.syms.name(v)] = x.get_str();
    json j{{"verdict", verdictText(r.verdict)}, {"model", model}, {"stats", statsJson(r.stats)}};
    if (r.verdict == Verdict::Unknown) j["reason"] = r.reason;
    out << j.dump() << "\n";
  }
  else
  {
    out << verdictText(r.verdict) << "\n";
    for (const auto& [v, x] : r.model) out << "  " << p.syms.name(v) << " = " << x << "\n";
    if (r.verdict == Verdict::Unknown) out << "  (" << r.reason << ")\n";
  }
  return exitFor(r.verdict);
}

int cmdSolveSystem(const Common& c, const std::string& path, std::ostream& out)
{
  System s = loadSystem(path, c.a(), c.b());
  SolveStats st;
  ProblemResult r = solveProblem1(s.z, s.A, s.b, s.C, s.d, c.options(), &st);
  if (c.json)
  {
    json w = json::array();
    json model = json::object();
    for (size_t i = 0; i < r.witness.size(); ++i)
    {
      w.push_back(std::to_string(r.witness[i]));
      model["n" + std::to_string(i)] = std::to_string(r.witness[i]);
    }
    json j{{"verdict", verdictText(r.verdict)}, {"model", model}, {"witness", w},
           {"stats", statsJson(st)}};
    if (r.verdict == Verdict::Unknown) j["reason"] = r.reason;
    out << j.dump() << "\n";
  }
  else
  {
    out << verdictText(r.verdict) << "\n";
    if (r.verdict == Verdict::Sat)
    {
      out << "  exponents:";
      for (auto e : r.witness) out << " " << e;
      out << "\n";
    }
    if (r.verdict == Verdict::Unknown) out << "  (" << r.reason << ")\n";
  }
  return exitFor(r.verdict);
}

int cmdOracle(const Common& c, const std::string& system, const std::string& expr,
              const std::string& file, unsigned long box, unsigned long linBox,
              std::ostream& out)
{
  if (!system.empty())
  {
    if (!expr.empty() || !file.empty()) throw UsageError("give either --system or a formula");
    System s = loadSystem(system, c.a(), c.b());
    auto sols = enumerateBoxSolutions(s.z, s.A, s.b, s.C, s.d, box);
    if (c.json)
    {
      json j = json::array();
      for (const auto& n : sols) j.push_back(n);
      out << j.dump() << "\n";
    }
    else
    {
      for (const auto& n : sols)
      {
        for (size_t i = 0; i < n.size(); ++i) out << (i ? " " : "") << n[i];
        out << "\n";
      }
    }
    return sols.empty() ? kExitUnsat : kExitSat;
  }
  ParsedFormula p = parseFormula(formulaText(expr, file));
  checkExistentialSentence(*p.formula, p.syms);
  auto m = semiDecide(p.formula, c.a(), c.b(), box, linBox);
  if (c.json)
  {
    json j = json::object();
    j["found"] = bool(m);
    json model = json::object();
    if (m)
      for (const auto& [v, x] : *m) model[p.syms.name(v)] = x.get_str();
    j["model"] = model;
    out << j.dump() << "\n";
  }
  else
  {
    out << (m ? "found" : "nothing in the box") << "\n";
    if (m)
      for (const auto& [v, x] : *m) out << "  " << p.syms.name(v) << " = " << x << "\n";
  }
  return m ? kExitSat : kExitUnsat;
}

int cmdEncode(const Common& c, const std::string& machine, std::ostream& out)
{
  MinskyMachine m = parseMinsky(readFile(machine));
  Symbols syms;
  FormulaPtr f = encodeMinsky(m, c.a(), c.b(), syms);
  std::string text = printFormula(*f, syms);
  if (c.json)
  {
    SkeletonCounts k = skeletonCounts(*f);
    json j{{"formula", text},
           {"quantifierBlocks", quantifierBlocks(*f)},
           {"phi", {{"outer", k.phiOuter}, {"inner", k.phiInner}}},
           {"psi", {{"outer", k.psiOuter}, {"inner", k.psiInner}}}};
    out << j.dump() << "\n";
  }
  else
    out << text << "\n";
  return kExitSat;
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Decision procedure for Presburger arithmetic with two power predicates"};
  app.require_subcommand(1);
  Common common;
  std::string expr, file, system, machine;
  unsigned long box = 10, linBox = 10;

  auto* dec = app.add_subcommand("decide", "decide an existential sentence");
  common.attach(dec, true);
  dec->add_option("--expr", expr, "sentence text");
  dec->add_option("--file", file, "file holding the sentence");

  auto* sys = app.add_subcommand("solve-system", "solve A z > b, C z = d from JSON");
  common.attach(sys, true);
  sys->add_option("--system", system, "JSON file")->required();

  auto* ora = app.add_subcommand("oracle", "brute-force search in a box");
  common.attach(ora, false);
  ora->add_option("--system", system, "JSON system file");
  ora->add_option("--expr", expr, "sentence text");
  ora->add_option("--file", file, "file holding the sentence");
  ora->add_option("--box", box, "largest exponent")->capture_default_str();
  ora->add_option("--lin-box", linBox, "range of non-power variables")->capture_default_str();

  auto* enc = app.add_subcommand("encode-minsky", "print the halting sentence of a machine");
  common.attach(enc, false);
  enc->add_option("--machine", machine, "machine description file")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try
  {
    app.parse(static_cast<int>(argv.size()), argv.data());
  }
  catch (const CLI::CallForHelp&)
  {
    out << app.help();
    return kExitSat;
  }
  catch (const CLI::CallForAllHelp&)
  {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitSat;
  }
  catch (const CLI::ParseError& e)
  {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try
  {
    if (dec->parsed()) return cmdDecide(common, expr, file, out);
    if (sys->parsed()) return cmdSolveSystem(common, system, out);
    if (ora->parsed()) return cmdOracle(common, system, expr, file, box, linBox, out);
    if (enc->parsed()) return cmdEncode(common, machine, out);
  }
  catch (const ParseError& e)
  {
    err << "parse error at line " << e.span().line << ", column " << e.span().column << ": "
        << e.message() << "\n";
    return kExitError;
  }
  catch (const std::invalid_argument& e)
  {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  catch (const UsageError& e)
  {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  catch (const std::exception& e)
  {
    err << "internal error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace powpres
