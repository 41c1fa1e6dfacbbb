#pragma once

#include <string>

#include "spir/cdms.hpp"
#include "spir/scheme.hpp"
#include "spir/verifier.hpp"

namespace spir {

// Line-oriented text formats. '#' starts a comment; blank lines are ignored.
// Emission is canonical: parse(emit(x)) == x for schemes, reports, and CDMS
// instances, and emit is deterministic.

// "spir-scheme v1" document.
std::string emit_scheme(const Scheme& s);
Scheme parse_scheme(const std::string& text);

// "spir-report v1" document. Witness lines appear exactly for failed checks.
std::string emit_report(const VerificationReport& r);
VerificationReport parse_report(const std::string& text);

// "spir-cdms v1" document.
std::string emit_cdms(const CdmsInstance& inst);
CdmsInstance parse_cdms(const std::string& text);

}  // namespace spir
