#pragma once

#include <stdexcept>
#include <string>

namespace qmf {

// Failure classes shared by all modules. Every throw site picks the code
// naming the violated contract; tests match on the code, not the message.
enum class errc {
    zero_constant_term,
    non_unit_constant_term,
    invalid_weight,
    invalid_prime,
    invalid_parameter,
    zero_parameter,
    non_integral_quotient,
    non_integral_result,
    range_exceeded,
    mixed_context,
    non_unit,
    denominator_divisible_by_p,
    denominator_not_p_unit,
    non_p_integral,
    precondition_violated,
    invalid_form,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::zero_constant_term: return "ZeroConstantTerm";
        case errc::non_unit_constant_term: return "NonUnitConstantTerm";
        case errc::invalid_weight: return "InvalidWeight";
        case errc::invalid_prime: return "InvalidPrime";
        case errc::invalid_parameter: return "InvalidParameter";
        case errc::zero_parameter: return "ZeroParameter";
        case errc::non_integral_quotient: return "NonIntegralQuotient";
        case errc::non_integral_result: return "NonIntegralResult";
        case errc::range_exceeded: return "RangeExceeded";
        case errc::mixed_context: return "MixedContext";
        case errc::non_unit: return "NonUnit";
        case errc::denominator_divisible_by_p: return "DenominatorDivisibleByP";
        case errc::denominator_not_p_unit: return "DenominatorNotPUnit";
        case errc::non_p_integral: return "NonPIntegral";
        case errc::precondition_violated: return "PreconditionViolated";
        case errc::invalid_form: return "InvalidForm";
    }
    return "Unknown";
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

}  // namespace qmf
