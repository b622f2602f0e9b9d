// Formulas of Presburger arithmetic with two power predicates, and their
// exact evaluation.
#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace powpres {

using BigInt = mpz_class;
using BigRat = mpq_class;
using VarId = int;

/// constant + sum of coeff * var. Zero coefficients are never stored.
class LinearTerm
{
 public:
  LinearTerm() = default;
  explicit LinearTerm(const BigInt& c) : d_const(c) {}

  static LinearTerm var(VarId v, const BigInt& c = 1);

  const BigInt& constant() const { return d_const; }
  const std::map<VarId, BigInt>& coeffs() const { return d_coeffs; }
  BigInt coeff(VarId v) const;
  bool isConstant() const { return d_coeffs.empty(); }

  void setConstant(const BigInt& c) { d_const = c; }
  void setCoeff(VarId v, const BigInt& c);
  void addCoeff(VarId v, const BigInt& c);

  LinearTerm& operator+=(const LinearTerm& o);
  LinearTerm& operator-=(const LinearTerm& o);
  LinearTerm& operator*=(const BigInt& k);
  LinearTerm operator-() const;

  /// Replace v by the term t (t must not mention v).
  LinearTerm substitute(VarId v, const LinearTerm& t) const;

  bool operator==(const LinearTerm& o) const
  {
    return d_const == o.d_const && d_coeffs == o.d_coeffs;
  }

 private:
  BigInt d_const = 0;
  std::map<VarId, BigInt> d_coeffs;
};

LinearTerm operator+(LinearTerm a, const LinearTerm& b);
LinearTerm operator-(LinearTerm a, const LinearTerm& b);
LinearTerm operator*(LinearTerm a, const BigInt& k);

/// Relations are read as "term rel 0".
enum class Rel { Lt, Le, Eq, Ne, Ge, Gt };
enum class BaseTag { A, B };

const char* relText(Rel r);
bool relHolds(const BigInt& v, Rel r);

struct Atom
{
  enum class Kind { Cmp, Power };
  Kind kind = Kind::Cmp;
  LinearTerm term;
  Rel rel = Rel::Eq;
  BaseTag tag = BaseTag::A;

  bool operator==(const Atom& o) const;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// true is And() and false is Or().
struct Formula
{
  enum class Kind { Atom, And, Or, Not, Exists, Forall };
  Kind kind = Kind::And;
  Atom atom;
  std::vector<FormulaPtr> kids;
  std::vector<VarId> vars;
};

FormulaPtr mkAtom(const Atom& a);
FormulaPtr mkCmp(const LinearTerm& t, Rel r);
FormulaPtr mkPower(const LinearTerm& t, BaseTag tag);
FormulaPtr mkTrue();
FormulaPtr mkFalse();
/// A single child is returned as is.
FormulaPtr mkAnd(std::vector<FormulaPtr> kids);
FormulaPtr mkOr(std::vector<FormulaPtr> kids);
FormulaPtr mkNot(FormulaPtr f);
FormulaPtr mkExists(std::vector<VarId> vars, FormulaPtr body);
FormulaPtr mkForall(std::vector<VarId> vars, FormulaPtr body);
FormulaPtr mkImplies(FormulaPtr a, FormulaPtr b);

bool structurallyEqual(const Formula& a, const Formula& b);
bool isQuantifierFree(const Formula& f);
std::set<VarId> freeVars(const Formula& f);

/// Interned variable names; ids are dense indices.
class Symbols
{
 public:
  VarId intern(const std::string& name);
  /// A new id whose name starts with hint and is not yet taken.
  VarId fresh(const std::string& hint);
  const std::string& name(VarId v) const { return d_names.at(v); }
  bool has(const std::string& name) const { return d_ids.count(name) > 0; }
  VarId lookup(const std::string& name) const { return d_ids.at(name); }
  size_t size() const { return d_names.size(); }

 private:
  std::vector<std::string> d_names;
  std::unordered_map<std::string, VarId> d_ids;
};

using Model = std::map<VarId, BigInt>;

class EvalError : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

BigInt evalTerm(const LinearTerm& t, const Model& m,
                const Symbols* syms = nullptr);

/// x in gamma^N, decided by repeated exact division.
bool isPowerOf(const BigInt& x, const BigInt& gamma);

bool evalFormula(const Formula& f, const Model& m, const BigInt& alpha,
                 const BigInt& beta, const Symbols* syms = nullptr);

BigInt ipow(const BigInt& base, unsigned long e);

}  // namespace powpres
