/*
 * SPDX-License-Identifier: MIT
 */

#ifndef CHCELIM_SEXPR_HPP
#define CHCELIM_SEXPR_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chcelim {

/// Minimal S-expression tree: an atom (symbol, numeral, string) or a list.
struct SExpr {
    bool isList = false;
    std::string atom;
    std::vector<SExpr> items;

    bool isAtom(std::string_view s) const { return !isList && atom == s; }
    std::string str() const;
};

class SExprError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads every top-level S-expression. `|quoted|` symbols lose their bars;
/// `;` comments are skipped. Throws SExprError on unbalanced input.
std::vector<SExpr> parseSExprs(std::string_view text);

} // namespace chcelim

#endif
