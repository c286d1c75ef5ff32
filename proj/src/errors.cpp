#include "nie/errors.hpp"

namespace nie {

const char* errc_name(errc c) {
  switch (c) {
    case errc::non_prime: return "non_prime";
    case errc::reducible_modulus: return "reducible_modulus";
    case errc::degree_mismatch: return "degree_mismatch";
    case errc::parse_error: return "parse_error";
    case errc::ring_mismatch: return "ring_mismatch";
    case errc::algebra_mismatch: return "algebra_mismatch";
    case errc::length_mismatch: return "length_mismatch";
    case errc::component_mismatch: return "component_mismatch";
    case errc::not_a_unit: return "not_a_unit";
    case errc::not_nie: return "not_nie";
    case errc::index_out_of_range: return "index_out_of_range";
    case errc::too_large: return "too_large";
    case errc::bad_parameters: return "bad_parameters";
    case errc::zero_code: return "zero_code";
    case errc::full_code: return "full_code";
  }
  return "unknown";
}

}  // namespace nie
