#pragma once

#include "trafficstl/stl/formula.hpp"

#include <string_view>

namespace trafficstl::stl {

/// Parses the formula DSL.
///
///   formula  := impl
///   impl     := disj ('=>' impl)?
///   disj     := conj ('or' conj)*
///   conj     := unary ('and' unary)*
///   unary    := 'not' unary
///             | 'always' interval? unary
///             | 'eventually' interval? unary
///             | '(' formula ('until' interval? formula)? ')'
///             | atom
///   interval := '[' number ',' (number | 'end') ']'
///   atom     := ident cmp number ('unless' ident cmp number)?
///   cmp      := '>' | '>=' | '<' | '<='
///
/// A missing interval means [0,end]. `and` binds tighter than `or`; `=>` is
/// the loosest binary connective and associates to the right.
///
/// Throws ParseError carrying the 1-based character position of the
/// offending token. Channel names are not checked here.
Formula parse(std::string_view text);

}  // namespace trafficstl::stl
