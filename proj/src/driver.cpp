#include "powpres/driver.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "powpres/linarith.h"
#include "powpres/numth.h"

namespace powpres {

namespace {

ProblemResult unsat() { return {Verdict::Unsat, {}, ""}; }
ProblemResult sat(Exponents n) { return {Verdict::Sat, std::move(n), ""}; }

class Engine
{
 public:
  Engine(const SolveOptions& o, SolveStats* s) : opts_(o), stats_(s) {}

  ProblemResult run(const std::vector<BigInt>& z, const Matrix& A, const Row& b,
                    const Matrix& C, const Row& d)
  {
    if (auto w = probe(z, A, b, C, d)) return sat(*w);
    ProblemResult r = C.empty() ? strictPart(z, A, b) : withEqualities(z, A, b, C, d);
    if (r.verdict == Verdict::Sat && !satisfies(z, A, b, C, d, r.witness))
      throw std::logic_error("solver returned a witness that does not verify");
    return r;
  }

 private:
  // Small exponents first; many instances have tiny witnesses.
  std::optional<Exponents> probe(const std::vector<BigInt>& z, const Matrix& A,
                                 const Row& b, const Matrix& C, const Row& d)
  {
    const size_t l = z.size();
    unsigned long box = l == 0 ? 0 : std::min<unsigned long>(
        12, static_cast<unsigned long>(std::pow(20000.0, 1.0 / static_cast<double>(l))) - 1);
    if (l > 0 && box == 0) box = 1;
    Exponents n(l, 0);
    for (;;)
    {
      if (satisfies(z, A, b, C, d, n)) return n;
      size_t j = 0;
      while (j < l && n[j] == box) n[j++] = 0;
      if (j == l) return std::nullopt;
      ++n[j];
    }
  }

  void note(ProblemResult& r, const std::string& why)
  {
    if (r.reason.empty()) r.reason = why;
  }

  ProblemResult withEqualities(const std::vector<BigInt>& z, const Matrix& A, const Row& b,
                               const Matrix& C, const Row& d)
  {
    const size_t l = z.size();
    Matrix C2;
    Row d2;
    for (size_t j = 0; j < C.size(); ++j)
    {
      bool zero = std::all_of(C[j].begin(), C[j].end(), [](const BigInt& x) { return x == 0; });
      if (!zero)
      {
        C2.push_back(C[j]);
        d2.push_back(d[j]);
      }
      else if (d[j] != 0)
        return unsat();
    }
    if (C2.empty()) return strictPart(z, A, b);
    // cheap refutation: the inequalities alone may already be unsolvable
    if (!A.empty() && strictPart(z, A, b).verdict == Verdict::Unsat) return unsat();

    EqStats es;
    AClassRepr rep = solveEqualities(C2, d2, z, {opts_.budget, static_cast<long>(opts_.precisionBits)}, &es);
    if (stats_)
    {
      stats_->enumerated += es.enumerated;
      stats_->budgetTruncated = stats_->budgetTruncated || !rep.complete;
    }
    ProblemResult out = unsat();
    if (!rep.complete)
    {
      out.verdict = Verdict::Unknown;
      out.reason = "equality search stopped at its budget";
    }
    for (const auto& raw : rep.cells)
    {
      if (stats_) ++stats_->cells;
      auto cell = cellNormalize(raw, l);
      if (!cell) continue;
      // substitute n_a = n_b + c and n_a = v, keep the free columns
      std::vector<int> red(l, -1);
      std::vector<bool> bound(l, false);
      for (const auto& o : cell->offsets) bound[o.a] = true;
      for (const auto& f : cell->fixes) bound[f.a] = true;
      std::vector<BigInt> z2;
      std::vector<size_t> back;
      for (size_t i = 0; i < l; ++i)
        if (!bound[i])
        {
          red[i] = static_cast<int>(z2.size());
          z2.push_back(z[i]);
          back.push_back(i);
        }
      Matrix A2;
      Row b2 = b;
      for (size_t j = 0; j < A.size(); ++j)
      {
        Row r(z2.size(), 0);
        for (size_t i = 0; i < l; ++i)
          if (!bound[i]) r[red[i]] += A[j][i];
        for (const auto& o : cell->offsets) r[red[o.b]] += A[j][o.a] * ipow(z[o.a], o.c);
        for (const auto& f : cell->fixes) b2[j] -= A[j][f.a] * ipow(z[f.a], f.v);
        A2.push_back(r);
      }
      ProblemResult sub = strictPart(z2, A2, b2);
      if (sub.verdict == Verdict::Sat)
      {
        Exponents n(l, 0);
        for (size_t k = 0; k < back.size(); ++k) n[back[k]] = sub.witness[k];
        for (const auto& o : cell->offsets) n[o.a] = n[o.b] + o.c;
        for (const auto& f : cell->fixes) n[f.a] = f.v;
        return sat(n);
      }
      if (sub.verdict == Verdict::Unknown)
      {
        out.verdict = Verdict::Unknown;
        note(out, sub.reason);
      }
    }
    return out;
  }

  ProblemResult strictPart(const std::vector<BigInt>& z, const Matrix& A, const Row& b)
  {
    const size_t l = z.size();
    Matrix A2;
    Row b2;
    for (size_t j = 0; j < A.size(); ++j)
    {
      bool zero = std::all_of(A[j].begin(), A[j].end(), [](const BigInt& x) { return x == 0; });
      if (!zero)
      {
        A2.push_back(A[j]);
        b2.push_back(b[j]);
      }
      else if (b[j] >= 0)
        return unsat();
    }
    if (A2.empty()) return sat(Exponents(l, 0));

    // negative threshold: r.z > b_j splits into r.z > 0 or r.z = e, b_j < e <= 0
    size_t pick = A2.size();
    for (size_t j = 0; j < A2.size(); ++j)
      if (b2[j] < 0 && (pick == A2.size() || b2[j] > b2[pick])) pick = j;
    if (pick < A2.size())
    {
      Row b3 = b2;
      b3[pick] = 0;
      ProblemResult out = strictPart(z, A2, b3);
      if (out.verdict == Verdict::Sat) return out;
      if (-b2[pick] > BigInt(opts_.maxThresholdSplit))
      {
        out.verdict = Verdict::Unknown;
        note(out, "negative threshold too large to split");
        return out;
      }
      Matrix A4;
      Row b4;
      for (size_t j = 0; j < A2.size(); ++j)
        if (j != pick)
        {
          A4.push_back(A2[j]);
          b4.push_back(b2[j]);
        }
      for (BigInt e = b2[pick] + 1; e <= 0; ++e)
      {
        ProblemResult r = withEqualities(z, A4, b4, {A2[pick]}, {e});
        if (r.verdict == Verdict::Sat) return r;
        if (r.verdict == Verdict::Unknown)
        {
          out.verdict = Verdict::Unknown;
          note(out, r.reason);
        }
      }
      return out;
    }

    // b >= 0: solve A z > 0, then push the witness above b
    StrictOptions so;
    so.kroneckerSteps = opts_.kroneckerSteps;
    so.affine = [this](const std::vector<BigInt>& z3, const Matrix& A3, const Row& b3) {
      ProblemResult r = strictPart(z3, A3, b3);
      return StrictResult{r.verdict, r.witness};
    };
    StrictResult sr = solveStrict({z, A2}, so);
    if (sr.verdict == Verdict::Unsat) return unsat();
    if (sr.verdict == Verdict::Unknown)
      return {Verdict::Unknown, {}, "approximation search stopped at its step limit"};
    auto w = inflateWitness(z, A2, b2, sr.witness, so);
    if (!w) return {Verdict::Unknown, {}, "could not lift a witness above the thresholds"};
    return sat(*w);
  }

  SolveOptions opts_;
  SolveStats* stats_;
};

void checkBases(const std::vector<BigInt>& z)
{
  for (const auto& g : z)
    if (g < 2) throw DomainError("bases must exceed 1");
}

void checkShapes(size_t l, const Matrix& A, const Row& b, const Matrix& C, const Row& d)
{
  if (A.size() != b.size() || C.size() != d.size())
    throw DomainError("row count does not match the right-hand side");
  for (const auto& r : A)
    if (r.size() != l) throw DomainError("row length does not match the number of bases");
  for (const auto& r : C)
    if (r.size() != l) throw DomainError("row length does not match the number of bases");
}

void scanExistential(const Formula& f, bool positive)
{
  switch (f.kind)
  {
    case Formula::Kind::Atom: return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      for (const auto& k : f.kids) scanExistential(*k, positive);
      return;
    case Formula::Kind::Not: scanExistential(*f.kids[0], !positive); return;
    case Formula::Kind::Exists:
      if (!positive) throw std::invalid_argument("not an existential sentence: negated exists");
      scanExistential(*f.kids[0], positive);
      return;
    case Formula::Kind::Forall:
      throw std::invalid_argument("not an existential sentence: universal quantifier");
  }
}

FormulaPtr strip(const FormulaPtr& f, std::vector<VarId>* bound)
{
  switch (f->kind)
  {
    case Formula::Kind::Atom: return f;
    case Formula::Kind::Exists:
      if (bound)
        for (VarId v : f->vars)
          if (std::find(bound->begin(), bound->end(), v) == bound->end()) bound->push_back(v);
      return strip(f->kids[0], bound);
    default:
    {
      auto g = std::make_shared<Formula>(*f);
      for (auto& k : g->kids) k = strip(k, bound);
      return g;
    }
  }
}

}  // namespace

ProblemResult solveProblem1(const std::vector<BigInt>& z, const Matrix& A, const Row& b,
                            const Matrix& C, const Row& d, const SolveOptions& opts,
                            SolveStats* stats)
{
  checkBases(z);
  checkShapes(z.size(), A, b, C, d);
  std::vector<BigInt> distinct;
  for (const auto& g : z)
    if (std::find(distinct.begin(), distinct.end(), g) == distinct.end()) distinct.push_back(g);
  if (distinct.size() > 2) throw DomainError("at most two bases");
  if (distinct.size() == 2 && multDependence(distinct[0], distinct[1]).dependent)
    throw DomainError("bases must be multiplicatively independent");
  if (stats) ++stats->instances;
  Engine e(opts, stats);
  return e.run(z, A, b, C, d);
}

ProblemResult solveProblem1(const ProblemOneInstance& inst, const SolveOptions& opts,
                            SolveStats* stats)
{
  return solveProblem1(inst.z, inst.A, inst.b, inst.C, inst.d, opts, stats);
}

void checkExistentialSentence(const Formula& f, const Symbols& syms)
{
  auto free = freeVars(f);
  if (!free.empty())
    throw std::invalid_argument("not a sentence: free variable " + syms.name(*free.begin()));
  scanExistential(f, true);
}

FormulaPtr existentialMatrix(const FormulaPtr& f, std::vector<VarId>* bound)
{
  return strip(f, bound);
}

DecideResult decide(const FormulaPtr& f, Symbols& syms, const BigInt& alpha,
                    const BigInt& beta, const SolveOptions& opts)
{
  if (alpha < 2 || beta < 2) throw DomainError("alpha and beta must exceed 1");
  checkExistentialSentence(*f, syms);
  std::vector<VarId> bound;
  FormulaPtr matrix = existentialMatrix(f, &bound);

  DecideResult out;
  out.verdict = Verdict::Unsat;
  FormulaPtr g = normalizeNegations(f, syms, alpha, beta);
  PowerTaggedFormula tagged = toPowerTaggedDnf(g, syms);
  for (const auto& disj : tagged.disjuncts)
  {
    std::set<VarId> powerSet;
    for (const auto& [v, tag] : disj.powerVars) powerSet.insert(v);
    std::set<VarId> elim;
    for (const auto& c : disj.comparisons)
      for (const auto& [v, k] : c.form.coeffs())
        if (!powerSet.count(v)) elim.insert(v);
    GuardedSystem gs = eliminateIntegerVars(disj.comparisons, elim);
    for (const auto& conj : gs.disjuncts)
    {
      for (const auto& inst : unfoldToProblem1(conj, disj.powerVars, alpha, beta))
      {
        ProblemResult r = solveProblem1(inst, opts, &out.stats);
        if (r.verdict == Verdict::Unknown)
        {
          out.verdict = Verdict::Unknown;
          if (out.reason.empty()) out.reason = r.reason;
          continue;
        }
        if (r.verdict != Verdict::Sat) continue;
        Model m = powerValues(inst, alpha, beta, r.witness);
        recoverWitness(conj, m);
        Model model;
        for (VarId v : bound)
        {
          auto it = m.find(v);
          model[v] = it == m.end() ? BigInt(0) : it->second;
        }
        if (!evalFormula(*matrix, model, alpha, beta, &syms))
          throw std::logic_error("model failed re-verification");
        out.verdict = Verdict::Sat;
        out.model = std::move(model);
        out.reason.clear();
        return out;
      }
    }
  }
  return out;
}

}  // namespace powpres
