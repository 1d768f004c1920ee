#pragma once

#include <string>
#include <string_view>

#include "crystalline/exppoly.hpp"

namespace crystalline {

/// Parse the polynomial shorthand
///   expr    := term (('+' | '-') term)*
///   term    := [scalar '*'] primary
///   primary := 'sin(' [rate '*'] 'z' ')' | 'cos(' [rate '*'] 'z' ')'
///            | 'e(' freq ')' | scalar
///   rate    := scalar | 'pi' | scalar '*' 'pi'
/// e(f) stands for e^{2 pi i f z}. Examples: "sin(pi*z)+0.5*sin(z)",
/// "2+e(1)". Throws ParseError with the offending byte position.
ExpPoly parse_poly_dsl(std::string_view text);

/// Inverse of the parser for polynomials expressible in the grammar
/// (paired trig terms with real amplitudes, real constants, real e-terms).
/// Throws Error for polynomials outside that set.
std::string print_poly_dsl(const ExpPoly& p);

}  // namespace crystalline
