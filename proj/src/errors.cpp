#include "pudp/errors.hpp"

namespace pudp {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::duplicate_element: return "DuplicateElement";
    case Errc::antisymmetry_violation: return "AntisymmetryViolation";
    case Errc::empty_axis: return "EmptyAxis";
    case Errc::unknown_element: return "UnknownElement";
    case Errc::partial_map: return "PartialMap";
    case Errc::shape_mismatch: return "ShapeMismatch";
    case Errc::monotonicity_violation: return "MonotonicityViolation";
    case Errc::interface_mismatch: return "InterfaceMismatch";
    case Errc::kind_mismatch: return "KindMismatch";
    case Errc::invalid_interval: return "InvalidInterval";
    case Errc::invalid_distribution: return "InvalidDistribution";
    case Errc::not_a_chain: return "NotAChain";
    case Errc::incompatible_utility: return "IncompatibleUtility";
    case Errc::zero_evidence: return "ZeroEvidence";
    case Errc::empty_feasible_set: return "EmptyFeasibleSet";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::type_mismatch: return "TypeMismatch";
    case Errc::unknown_name: return "UnknownName";
    case Errc::invalid_value: return "InvalidValue";
    case Errc::schema_error: return "SchemaError";
  }
  return "Error";
}

}  // namespace pudp
