#pragma once

#include <cstdint>
#include <optional>

#include "ndc/operator.hpp"

namespace ndc {

// Componentwise algebra on OperatorRep. Explicit inputs give Explicit results
// computed exactly; Generated results carry whatever certificates survive the
// operation.

OperatorRep adjoint(const OperatorRep& a);
OperatorRep scale(const OperatorRep& a, Complex lambda);
OperatorRep add(const OperatorRep& a, const OperatorRep& b);

/**
 * Operator product.
 *
 * Supported shapes: both explicit; either factor diagonal; either factor with
 * finite support (a zero tail bound at some cutoff); both with vanishing tail
 * bounds, where the inner sum is cut at K with |remainder| <= tail_a(K) tail_b(K)
 * below 1e-17 ||a|| ||b||. Anything else throws PreconditionError.
 */
OperatorRep multiply(const OperatorRep& a, const OperatorRep& b);

/// Explicit copy of an operator whose tail bound reaches zero at some cutoff
/// n <= cap; nullopt when no such cutoff exists.
std::optional<OperatorRep> materialize(const OperatorRep& a, std::uint64_t cap = 4096);

}  // namespace ndc
