#pragma once

#include <stdexcept>
#include <string>

namespace mumford {

// Typed error codes surfaced through the CLI as stable strings.
enum class errc {
  invalid_argument,
  field_mismatch,
  division_by_zero_to_precision,
  insufficient_precision,
  extension_required,
  fixes_infinity,
  coincident_points,
  degenerate_tuple,
  shared_end,
  bound_violated,
  not_finite_order,
  odd_term_count,
  non_generating_assignment,
  torsion_in_kernel,
  invalid_ramification,
  parse_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_argument: return "InvalidArgument";
    case errc::field_mismatch: return "FieldMismatch";
    case errc::division_by_zero_to_precision: return "DivisionByZeroToPrecision";
    case errc::insufficient_precision: return "InsufficientPrecision";
    case errc::extension_required: return "ExtensionRequired";
    case errc::fixes_infinity: return "FixesInfinity";
    case errc::coincident_points: return "CoincidentPoints";
    case errc::degenerate_tuple: return "DegenerateTuple";
    case errc::shared_end: return "SharedEnd";
    case errc::bound_violated: return "BoundViolated";
    case errc::not_finite_order: return "NotFiniteOrder";
    case errc::odd_term_count: return "OddTermCount";
    case errc::non_generating_assignment: return "NonGeneratingAssignment";
    case errc::torsion_in_kernel: return "TorsionInKernel";
    case errc::invalid_ramification: return "InvalidRamification";
    case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace mumford
