/*
 * SPDX-License-Identifier: MIT
 */

#ifndef CHCELIM_PARSER_HPP
#define CHCELIM_PARSER_HPP

#include "chcelim/program.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chcelim {

struct SourceSpan {
    std::string file;
    int line = 1;
    int column = 1;
};

struct ParseError {
    SourceSpan span;
    std::string message;
    /// What the parser expected at this point; may be empty.
    std::string hint;

    /// `file:line:col: message (expected ...)`
    std::string str() const;
};

struct ParseResult {
    std::optional<Program> program;
    std::vector<ParseError> errors;

    bool ok() const { return program.has_value(); }
};

class ParseFailure : public std::runtime_error {
public:
    explicit ParseFailure(std::vector<ParseError> errors);
    const std::vector<ParseError> & errors() const { return errors_; }

private:
    std::vector<ParseError> errors_;
};

ParseResult parseProgram(std::string_view text, const std::string & file = "<input>");
/// As parseProgram, but throws ParseFailure.
Program parseProgramOrThrow(std::string_view text, const std::string & file = "<input>");

/// Parses clause text against the declarations already in `decls`. The text
/// may also contain further declarations and several clauses; the result
/// holds only the new clauses (ids continue from `decls`).
std::vector<Clause> parseClauses(std::string_view text, const Program & decls);
Clause parseClause(std::string_view text, const Program & decls);

std::string printDeclaration(const PredicateInfo & info);
/// Declarations followed by `%@ id` labelled clauses; re-parses to an equal Program.
std::string printProgram(const Program & p);

} // namespace chcelim

#endif
