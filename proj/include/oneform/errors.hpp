#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace oneform {

// Base for all domain errors. `code` is the stable machine-readable name
// that the CLI emits in reports; `what()` carries the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define ONEFORM_DEFINE_ERROR(Name, code_str)                                  \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& msg) : Error(code_str, msg) {}       \
    };

// A polynomial has an irreducible factor of degree >= 2 over the rationals;
// the factored representation cannot hold it.
ONEFORM_DEFINE_ERROR(SplitFieldRequired, "split_field_required")
ONEFORM_DEFINE_ERROR(PoleEvaluation, "pole_evaluation")
ONEFORM_DEFINE_ERROR(DivisionByZeroFunction, "division_by_zero_function")
ONEFORM_DEFINE_ERROR(ConstantMap, "constant_map")
ONEFORM_DEFINE_ERROR(DegreeMismatch, "degree_mismatch")
ONEFORM_DEFINE_ERROR(TrivialPartition, "trivial_partition")
ONEFORM_DEFINE_ERROR(RiemannHurwitzViolation, "riemann_hurwitz_violation")
ONEFORM_DEFINE_ERROR(LimitExceeded, "limit_exceeded")
ONEFORM_DEFINE_ERROR(NotGeneralType, "not_general_type")
ONEFORM_DEFINE_ERROR(SearchSpaceExceeded, "search_space_exceeded")
ONEFORM_DEFINE_ERROR(ShapeMismatch, "shape_mismatch")
ONEFORM_DEFINE_ERROR(ResidueSumNonzero, "residue_sum_nonzero")
ONEFORM_DEFINE_ERROR(InfeasibleParameters, "infeasible_parameters")
ONEFORM_DEFINE_ERROR(HypothesisViolated, "hypothesis_violated")
ONEFORM_DEFINE_ERROR(CoordinateCollision, "coordinate_collision")
ONEFORM_DEFINE_ERROR(PreconditionViolated, "precondition_violated")
ONEFORM_DEFINE_ERROR(SyntaxError, "syntax_error")
ONEFORM_DEFINE_ERROR(InvalidInput, "invalid_input")

#undef ONEFORM_DEFINE_ERROR

} // namespace oneform
