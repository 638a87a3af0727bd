#pragma once

#include <cstdint>
#include <variant>

#include "ndc/operator.hpp"
#include "ndc/partition.hpp"

namespace ndc {

/// Coarse block i holds the base blocks pair(i, j), j >= 0.
Partition cantor_coarsen(const Partition& base);

/**
 * Matrix unit x_ij inside coarse group `group`: maps the j-th base block of the
 * group onto the i-th one, k-th index to k-th index. Over a Uniform(1) base it
 * is the single entry E(pair(group, i), pair(group, j)).
 */
OperatorRep matrix_unit(const Partition& part, BlockId group, std::uint64_t i, std::uint64_t j);

/// lambda at (index_in_block(0, n), index_in_block(n, 0)) for every n. All rows
/// sit in coarse block 0, so q_0 a = a.
OperatorRep row_isometry(Complex lambda, const Partition& part);

struct Geometric {
    double base = 0.5;
};
struct InverseSum {};
using MinfRule = std::variant<Geometric, InverseSum>;

/// Scalar infinite matrix over Uniform(1): b^max(i,j) or 1/(i+j+2).
OperatorRep minf_sample(const MinfRule& rule);

/// Diagonal indicator of coarse block i.
OperatorRep coarse_projection(const Partition& part, BlockId i);

}  // namespace ndc
