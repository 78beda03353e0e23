#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lgcalc/rational.hpp"

namespace lg {

enum class Grading { Z2, Z };

/**
 * Declaration of a polynomial ring Q[y_1..y_n] together with its grading data.
 *
 * - grading Z2: the ring sits in even parity; rcharge_weights are optional
 *   bookkeeping (any integers).
 * - grading Z: rcharge_weights are required and must all be even, so that a
 *   weight-2 potential admits square-zero sign conventions downstream.
 * - qh_weights: optional positive rationals; when supplied they are expected
 *   to make the potential quasi-homogeneous of degree 1 (checked where used).
 *
 * RingSpec values are immutable; consumers hold them by shared_ptr. Equality
 * is structural, so independently constructed identical specs are compatible.
 */
struct RingSpec {
    std::vector<std::string> variables;
    Grading grading = Grading::Z2;
    std::optional<std::vector<long>> rcharge_weights;
    std::optional<std::vector<Rational>> qh_weights;

    std::size_t nvars() const { return variables.size(); }

    /** Index of a variable name, or throws Error. */
    std::size_t var_index(const std::string& name) const;

    bool operator==(const RingSpec& o) const {
        return variables == o.variables && grading == o.grading &&
               rcharge_weights == o.rcharge_weights && qh_weights == o.qh_weights;
    }
    bool operator!=(const RingSpec& o) const { return !(*this == o); }
};

using RingPtr = std::shared_ptr<const RingSpec>;

/**
 * Validates and freezes a RingSpec. Throws Error on: empty/duplicate/invalid
 * variable names, missing or odd rcharge weights in Z mode, weight-count
 * mismatches, or non-positive qh weights.
 */
RingPtr make_ring(RingSpec spec);

/** True when the two pointers denote structurally equal rings. */
inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    return a == b || (a && b && *a == *b);
}

/** Throws Error("ring mismatch: <where>") unless same_ring. */
void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where);

}  // namespace lg
