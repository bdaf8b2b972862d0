/*
 * SPDX-License-Identifier: MIT
 */

#ifndef CHCELIM_SMT2_HPP
#define CHCELIM_SMT2_HPP

#include "chcelim/program.hpp"

#include <string>

namespace chcelim {

/// SMT-LIB 2 HORN script: optional IntList datatype, one declare-fun per
/// predicate, one assert per clause (in program order), then
/// `(check-sat)` and `(get-model)`.
std::string emitSmt2(const Program & p);

/// SMT-LIB spelling of a symbol, quoted with bars when it would clash with a
/// reserved word or is not a simple symbol.
std::string smtSymbol(const std::string & name);

std::string smtTerm(const Term & t);
std::string smtConstraint(const ConstraintAtom & c);

} // namespace chcelim

#endif
