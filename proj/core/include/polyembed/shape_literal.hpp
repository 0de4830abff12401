#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "polyembed/shape.hpp"

namespace polyembed {

// Shape literal grammar (whitespace ignored):
//
//   shape   := 'none'                           the empty product (dimension 0)
//            | factor (('x' | '*') factor)*
//   factor  := 'polydisk(' r (',' r)* ')'      B^2(r_1) x ... sorted ascending
//            | 'disk(' r ')'                    B^2(r)
//            | 'tdisk(' cx ',' cy ',' r ')'     disk of radius r centred at (cx, cy)
//            | 'ball' D '(' r ')'               D-dimensional ball, D even (ball4(2.0))
//            | 'rect(' L (',' L)* ')'           [0, L_1] x ... (even count)
//            | 'box(' lo ':' hi (',' lo ':' hi)* ')'
//            | 'sigma(' a ')'                   genus-one surface of area a
//            | 'plane()'                        R^2
//            | 'cyl(' r ')'                     disk(r) x plane()
//
// Numbers are anything std::from_chars accepts for double.

ShapeDescriptor parse_shape(std::string_view text);
std::string to_literal(const ShapeDescriptor& shape);

/// Shortest decimal representation that reads back to the same double.
std::string format_double(double v);

/// Comma separated list of reals ("0.1,1,1"); throws ParseError naming the bad token.
std::vector<double> parse_real_list(std::string_view text);

}  // namespace polyembed
