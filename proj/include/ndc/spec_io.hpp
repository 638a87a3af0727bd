#pragma once

#include <string>

#include "ndc/errors.hpp"
#include "ndc/operator.hpp"
#include "ndc/partition.hpp"

namespace ndc {

/// Malformed operator spec. key() names the offending JSON key path.
class SpecError : public Error {
public:
    SpecError(std::string key, const std::string& what)
        : Error("spec key '" + key + "': " + what), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

struct OperatorSpec {
    OperatorRep op;
    Partition part;
};

/**
 * Reads {"entries": [[row, col, re, im?], ...]} or
 * {"generator": {"name": ..., "params": {...}}}, plus an optional "partition".
 *
 * Without a partition, entries and minf_sample use uniform(1); the coarse
 * generators use cantor_coarsen(uniform(1)).
 */
OperatorSpec parse_operator_spec(const std::string& text);

OperatorSpec load_operator_spec(const std::string& path);

}  // namespace ndc
