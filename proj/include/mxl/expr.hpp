#pragma once

#include "mxl/mixed_poly.hpp"

#include <string>
#include <string_view>

namespace mxl {

/// Parses an expression such as "u^8 + v^3*u^2 + conj(v)^5*u - 2*(v^7 + conj(v)^7)".
/// Throws SyntaxError with the byte offset of the offending token, or EmptyPolynomial.
MixedPoly parse_poly(std::string_view text);

/// Canonical text form; parse_poly(format_poly(p)) == p.
std::string format_poly(const MixedPoly& p);

}  // namespace mxl
