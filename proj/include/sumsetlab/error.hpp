#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sumsetlab {

enum class Errc {
  not_prime,
  out_of_range,
  division_by_zero,
  field_mismatch,
  length_mismatch,
  negative_exponent_input,
  too_few_variables,
  parameter_out_of_range,
  non_integer_result,
  interpolation_mismatch,
  hypothesis_violated,
  degree_infeasible,
  budget_exceeded,
  cannot_satisfy_hypothesis,
  not_in_shrink_regime,
  invalid_instance,
};

std::string_view errc_name(Errc code) noexcept;

// Every library failure is reported through this one exception type; the
// code lets callers (the CLI in particular) map failures to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace sumsetlab
