/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/sexpr.hpp"

#include <cctype>

namespace chcelim {

std::string SExpr::str() const {
    if (!isList) { return atom; }
    std::string out = "(";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) { out += " "; }
        out += items[i].str();
    }
    return out + ")";
}

std::vector<SExpr> parseSExprs(std::string_view text) {
    std::vector<SExpr> top;
    std::vector<SExpr> stack;
    std::size_t i = 0;
    auto push = [&](SExpr e) {
        if (stack.empty()) {
            top.push_back(std::move(e));
        } else {
            stack.back().items.push_back(std::move(e));
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == ';') {
            while (i < text.size() && text[i] != '\n') { ++i; }
        } else if (c == '(') {
            SExpr l;
            l.isList = true;
            stack.push_back(std::move(l));
            ++i;
        } else if (c == ')') {
            if (stack.empty()) { throw SExprError("unbalanced ')' at offset " + std::to_string(i)); }
            SExpr done = std::move(stack.back());
            stack.pop_back();
            push(std::move(done));
            ++i;
        } else if (c == '|') {
            auto end = text.find('|', i + 1);
            if (end == std::string_view::npos) { throw SExprError("unterminated quoted symbol"); }
            SExpr a;
            a.atom = std::string(text.substr(i + 1, end - i - 1));
            push(std::move(a));
            i = end + 1;
        } else if (c == '"') {
            std::size_t j = i + 1;
            std::string s = "\"";
            while (true) {
                if (j >= text.size()) { throw SExprError("unterminated string literal"); }
                if (text[j] == '"') {
                    // "" is an escaped quote in SMT-LIB 2.6
                    if (j + 1 < text.size() && text[j + 1] == '"') {
                        s += "\"\"";
                        j += 2;
                        continue;
                    }
                    break;
                }
                s += text[j++];
            }
            SExpr a;
            a.atom = s + "\"";
            push(std::move(a));
            i = j + 1;
        } else {
            std::size_t j = i;
            while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '(' &&
                   text[j] != ')' && text[j] != ';') {
                ++j;
            }
            SExpr a;
            a.atom = std::string(text.substr(i, j - i));
            push(std::move(a));
            i = j;
        }
    }
    if (!stack.empty()) { throw SExprError("unbalanced '(': missing " + std::to_string(stack.size()) + " ')'"); }
    return top;
}

} // namespace chcelim
