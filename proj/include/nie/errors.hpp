#pragma once

#include <stdexcept>
#include <string>

namespace nie {

/// Machine-readable failure categories for domain errors.
///
/// Every throwing precondition in the library maps to exactly one of these, so
/// callers (and the CLI error report) can dispatch without parsing messages.
enum class errc {
  non_prime,
  reducible_modulus,
  degree_mismatch,
  parse_error,
  ring_mismatch,
  algebra_mismatch,
  length_mismatch,
  component_mismatch,
  not_a_unit,
  not_nie,
  index_out_of_range,
  too_large,
  bad_parameters,
  zero_code,
  full_code,
};

const char* errc_name(errc c);

/// Domain error: invalid input or an operation outside its precondition.
/// Distinct from logic errors (bugs), which use assertions.
class domain_error : public std::runtime_error {
 public:
  domain_error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw domain_error(code, what);
}

}  // namespace nie
