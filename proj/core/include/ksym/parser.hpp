#pragma once

#include <string>

#include "ksym/chart.hpp"
#include "ksym/expr.hpp"

namespace ksym {

/// Expression grammar:
///   expr   := term (("+"|"-") term)* ;
///   term   := factor (("*"|"/") factor)* ;
///   factor := ["-"] atom ["^" integer] ;
///   atom   := number | ident | varref | "(" expr ")" | func "(" expr ")" ;
///   varref := ("q"|"x") "[" int "]" | ("v"|"w") "[" int "," int "]"
///           | "p" "[" int "," int "]" | "u" "[" int "," int "," int "]" ;
///   func   := "sin"|"cos"|"exp"|"log"|"sqrt" ;
///   numbers: decimal or rational "3/2".
/// Any other ident is a named parameter.
struct ParseOptions {
    /// Field notation: additionally accepts phi[i] (for q), phi[i,a] (for v),
    /// psi[a,i] (for p) and jet symbols d/dx[a](...) applied directly to a
    /// field symbol (nested at most twice, second order on phi[i] only).
    bool field_mode = false;
    /// Accepts dq[i] basis covectors as atoms; they parse to reserved
    /// parameters named "dq#i" for coefficient extraction by the caller.
    bool allow_dq = false;
};

/// Parses `text` against the chart's bounds (1 <= i <= n, 1 <= a,b <= k).
/// Base coordinates x[a] are accepted for every chart. Round-trips through
/// to_string / canonical printing.
///
/// Throws SyntaxError (with byte offset) or IndexError.
Expr parse(const std::string& text, const Chart& chart, const ParseOptions& opts = {});

/// Field-notation convenience entry (PDE rows, re-parsing rendered systems).
Expr parse_field(const std::string& text, int n, int k);

}  // namespace ksym
