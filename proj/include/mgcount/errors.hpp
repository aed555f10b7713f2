#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mgcount {

// Every library failure is thrown as an `error` whose `name()` is a stable
// machine-readable identifier; the CLI surfaces that name verbatim.
class error : public std::runtime_error {
public:
    error(std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define MGCOUNT_DEFINE_ERROR(class_name, wire_name)                      \
    class class_name : public error {                                    \
    public:                                                              \
        explicit class_name(const std::string& message)                  \
            : error(wire_name, message) {}                               \
    }

MGCOUNT_DEFINE_ERROR(odd_total_degree, "OddTotalDegree");
MGCOUNT_DEFINE_ERROR(missing_support, "MissingSupport");
MGCOUNT_DEFINE_ERROR(unsupported_support, "UnsupportedSupport");
MGCOUNT_DEFINE_ERROR(infeasible_shift, "InfeasibleShift");
MGCOUNT_DEFINE_ERROR(budget_exceeded, "BudgetExceeded");
MGCOUNT_DEFINE_ERROR(not_in_g0, "NotInG0");
MGCOUNT_DEFINE_ERROR(wrong_colour, "WrongColour");
MGCOUNT_DEFINE_ERROR(invalid_move, "InvalidMove");
MGCOUNT_DEFINE_ERROR(zero_denominator, "ZeroDenominator");
MGCOUNT_DEFINE_ERROR(set_overlap, "SetOverlap");
MGCOUNT_DEFINE_ERROR(structural_violation, "StructuralViolation");
MGCOUNT_DEFINE_ERROR(divergent_bound, "DivergentBound");
MGCOUNT_DEFINE_ERROR(invalid_bound, "InvalidBound");
MGCOUNT_DEFINE_ERROR(precondition_violation, "PreconditionViolation");
MGCOUNT_DEFINE_ERROR(unachievable, "Unachievable");
MGCOUNT_DEFINE_ERROR(zero_coefficient, "ZeroCoefficient");
MGCOUNT_DEFINE_ERROR(unsupported_entry, "UnsupportedEntry");
MGCOUNT_DEFINE_ERROR(parse_error, "ParseError");

#undef MGCOUNT_DEFINE_ERROR

}  // namespace mgcount
