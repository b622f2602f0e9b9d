// Brute-force search over bounded boxes. Kept apart from the solver code so
// it can serve as ground truth in tests.
#pragma once

#include <optional>
#include <vector>

#include "powpres/core.h"
#include "powpres/powerprep.h"

namespace powpres {

/// Tries every assignment of the bound variables of an existential sentence:
/// a variable asserted to be a power (a top-level powA/powB conjunct) ranges
/// over gamma^0 .. gamma^expBox, any other over [-linBox, linBox]. Returns
/// the first model in lexicographic order (first bound variable slowest).
std::optional<Model> semiDecide(const FormulaPtr& f, const BigInt& alpha,
                                const BigInt& beta, unsigned long expBox,
                                unsigned long linBox);

/// All n in [0, box]^l with A z > b and C z = d, sorted.
std::vector<Exponents> enumerateBoxSolutions(const std::vector<BigInt>& z, const Matrix& A,
                                             const Row& b, const Matrix& C, const Row& d,
                                             unsigned long box);
std::vector<Exponents> enumerateBoxSolutions(const ProblemOneInstance& inst,
                                             unsigned long box);

}  // namespace powpres
