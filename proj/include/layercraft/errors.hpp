#pragma once

#include <stdexcept>
#include <string>

namespace layercraft {

enum class errc {
  multiple_minima,
  not_ranked,
  cycle_detected,
  not_a_lattice,
  not_locally_geometric,
  atom_not_found,
  layer_not_found,
  not_monic,
  zero_character,
  unsupported_type,
  not_a_positive_root,
  invalid_extension_parameter,
  parse_error,
  divisibility_failed,
  budget_exceeded,
  internal_inconsistency,
  invalid_input,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::multiple_minima: return "MultipleMinima";
    case errc::not_ranked: return "NotRanked";
    case errc::cycle_detected: return "CycleDetected";
    case errc::not_a_lattice: return "NotALattice";
    case errc::not_locally_geometric: return "NotLocallyGeometric";
    case errc::atom_not_found: return "AtomNotFound";
    case errc::layer_not_found: return "LayerNotFound";
    case errc::not_monic: return "NotMonic";
    case errc::zero_character: return "ZeroCharacter";
    case errc::unsupported_type: return "UnsupportedType";
    case errc::not_a_positive_root: return "NotAPositiveRoot";
    case errc::invalid_extension_parameter: return "InvalidExtensionParameter";
    case errc::parse_error: return "ParseError";
    case errc::divisibility_failed: return "DivisibilityFailed";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::internal_inconsistency: return "InternalInconsistency";
    case errc::invalid_input: return "InvalidInput";
  }
  return "Unknown";
}

/// All library failures are reported through this exception; `code()` maps to CLI exit codes.
class error : public std::runtime_error {
public:
  error(errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}

  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

inline void check_internal(bool ok, const std::string& what) {
  if (!ok) fail(errc::internal_inconsistency, what);
}

}  // namespace layercraft
