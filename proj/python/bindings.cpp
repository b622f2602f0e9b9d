#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <climits>
#include <sstream>

#include "powpres/cli.h"
#include "powpres/driver.h"
#include "powpres/eqsolver.h"
#include "powpres/oracle.h"
#include "powpres/reductions.h"
#include "powpres/textio.h"

namespace py = pybind11;
using namespace powpres;

namespace {

// Python ints of any size travel as decimal strings.
BigInt toBig(const py::int_& x) { return BigInt(py::str(x).cast<std::string>()); }

py::int_ toPy(const BigInt& x)
{
  return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

std::vector<BigInt> toRow(const std::vector<py::int_>& v)
{
  std::vector<BigInt> r;
  for (const auto& x : v) r.push_back(toBig(x));
  return r;
}

Matrix toMatrix(const std::vector<std::vector<py::int_>>& m)
{
  Matrix out;
  for (const auto& r : m) out.push_back(toRow(r));
  return out;
}

SolveOptions makeOptions(const std::string& mode, unsigned long budget)
{
  SolveOptions o;
  o.budget = budget;
  if (mode == "complete")
  {
    o.budget = ULONG_MAX;
    o.kroneckerSteps = ULONG_MAX;
    o.maxThresholdSplit = ULONG_MAX;
  }
  else if (mode != "budget")
    throw std::invalid_argument("mode must be \"budget\" or \"complete\"");
  return o;
}

py::dict statsDict(const SolveStats& s)
{
  py::dict d;
  d["instances"] = s.instances;
  d["cells"] = s.cells;
  d["enumerated"] = s.enumerated;
  d["budget_truncated"] = s.budgetTruncated;
  return d;
}

py::dict decidePy(const std::string& text, const py::int_& alpha, const py::int_& beta,
                  const std::string& mode, unsigned long budget)
{
  ParsedFormula p = parseFormula(text);
  DecideResult r = decide(p.formula, p.syms, toBig(alpha), toBig(beta), makeOptions(mode, budget));
  py::dict model;
  for (const auto& [v, x] : r.model) model[py::str(p.syms.name(v))] = toPy(x);
  py::dict d;
  d["verdict"] = verdictText(r.verdict);
  d["model"] = model;
  d["stats"] = statsDict(r.stats);
  d["reason"] = r.reason;
  return d;
}

py::dict solveSystemPy(const std::vector<py::int_>& bases,
                       const std::vector<std::vector<py::int_>>& A, const std::vector<py::int_>& b,
                       const std::vector<std::vector<py::int_>>& C, const std::vector<py::int_>& d,
                       const std::string& mode, unsigned long budget)
{
  SolveStats st;
  ProblemResult r = solveProblem1(toRow(bases), toMatrix(A), toRow(b), toMatrix(C), toRow(d),
                                  makeOptions(mode, budget), &st);
  py::dict out;
  out["verdict"] = verdictText(r.verdict);
  out["witness"] = r.witness;
  out["stats"] = statsDict(st);
  out["reason"] = r.reason;
  return out;
}

py::dict solveEquationPy(const std::vector<py::int_>& coeffs, const std::vector<py::int_>& bases,
                         const py::int_& d, unsigned long budget)
{
  EqOptions o;
  o.budget = budget;
  AClassRepr r = solveEquation(toRow(coeffs), toRow(bases), toBig(d), o);
  py::list cells;
  for (const auto& c : r.cells)
  {
    py::list offsets, fixes;
    for (const auto& x : c.offsets) offsets.append(py::make_tuple(x.a, x.b, x.c));
    for (const auto& x : c.fixes) fixes.append(py::make_tuple(x.a, x.v));
    py::dict cell;
    cell["offsets"] = offsets;
    cell["fixes"] = fixes;
    cells.append(cell);
  }
  py::dict out;
  out["complete"] = r.complete;
  out["cells"] = cells;
  return out;
}

std::vector<Exponents> oracleBoxPy(const std::vector<py::int_>& bases,
                                   const std::vector<std::vector<py::int_>>& A,
                                   const std::vector<py::int_>& b,
                                   const std::vector<std::vector<py::int_>>& C,
                                   const std::vector<py::int_>& d, unsigned long box)
{
  return enumerateBoxSolutions(toRow(bases), toMatrix(A), toRow(b), toMatrix(C), toRow(d), box);
}

std::string encodeMinskyPy(const std::string& machine, const py::int_& alpha,
                           const py::int_& beta)
{
  Symbols syms;
  FormulaPtr f = encodeMinsky(parseMinsky(machine), toBig(alpha), toBig(beta), syms);
  return printFormula(*f, syms);
}

py::tuple runCliPy(std::vector<std::string> args)
{
  args.insert(args.begin(), "powpres");
  std::ostringstream out, err;
  int code = runCli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Presburger arithmetic with two power predicates";

  py::register_exception_translator([](std::exception_ptr p) {
    try
    {
      if (p) std::rethrow_exception(p);
    }
    catch (const ParseError& e)
    {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::list empty;
  m.def("decide", &decidePy, py::arg("sentence"), py::arg("alpha") = 2, py::arg("beta") = 3,
        py::arg("mode") = "budget", py::arg("budget") = 1000000,
        "Decide an existential sentence; returns verdict, model and stats.");
  m.def("solve_system", &solveSystemPy, py::arg("bases"), py::arg("A") = empty,
        py::arg("b") = empty, py::arg("C") = empty, py::arg("d") = empty,
        py::arg("mode") = "budget", py::arg("budget") = 1000000,
        "Solve A z > b, C z = d over z_i = bases[i]^n_i.");
  m.def("solve_equation", &solveEquationPy, py::arg("coeffs"), py::arg("bases"), py::arg("d"),
        py::arg("budget") = 1000000,
        "Solution cells of sum c_i z_i^n_i = d.");
  m.def("oracle_box", &oracleBoxPy, py::arg("bases"), py::arg("A") = empty,
        py::arg("b") = empty, py::arg("C") = empty, py::arg("d") = empty, py::arg("box") = 10,
        "Every exponent tuple in [0, box]^l solving the system.");
  m.def("encode_minsky", &encodeMinskyPy, py::arg("machine"), py::arg("alpha") = 2,
        py::arg("beta") = 3, "Sentence that holds iff the machine halts.");
  m.def("run_cli", &runCliPy, py::arg("args"),
        "Run the command-line front end; returns (exit code, stdout, stderr).");
}
