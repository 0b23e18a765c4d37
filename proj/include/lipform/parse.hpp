#pragma once

#include <string>

#include "lipform/field.hpp"

namespace lipform {

/// Parses the infix expression grammar used by scenario files into a field of
/// the given arity. Coordinates are written x1..xn. Supported:
/// numbers, pi, + - * / ^k (nonnegative integer power), abs(e), min(a,b),
/// max(a,b), bump(center,radius), bump(e,center,radius), pwl(e,x0,y0,...),
/// sin(e), cos(e), sqrt(e), atan2(y,x).
/// Throws config_error on malformed input or coordinates beyond the arity.
ScalarField parse_expression(const std::string& src, int arity);

}  // namespace lipform
