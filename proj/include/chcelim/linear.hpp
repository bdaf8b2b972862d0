/*
 * SPDX-License-Identifier: MIT
 */

#ifndef CHCELIM_LINEAR_HPP
#define CHCELIM_LINEAR_HPP

#include <cstdint>
#include <map>
#include <string>

namespace chcelim {

/// Linear integer expression: sum(coeff * var) + constant.
/// Zero coefficients are never stored; variables are kept in lexicographic order.
class LinExpr {
public:
    LinExpr() = default;
    explicit LinExpr(std::int64_t constant) : constant_(constant) {}
    static LinExpr variable(const std::string & name, std::int64_t coeff = 1);

    const std::map<std::string, std::int64_t> & coeffs() const { return coeffs_; }
    std::int64_t constant() const { return constant_; }
    std::int64_t coeff(const std::string & var) const;

    bool isConstant() const { return coeffs_.empty(); }
    /// True for `1*v + 0`.
    bool isSingleVar() const;

    void addTerm(const std::string & var, std::int64_t coeff);
    void addConstant(std::int64_t c) { constant_ += c; }

    LinExpr operator+(const LinExpr & o) const;
    LinExpr operator-(const LinExpr & o) const;
    LinExpr operator*(std::int64_t k) const;
    LinExpr operator-() const { return *this * -1; }

    /// Replaces `var` by `by` (coefficient-scaled).
    LinExpr substitute(const std::string & var, const LinExpr & by) const;

    /// gcd of all variable coefficients (0 when constant).
    std::int64_t coeffGcd() const;

    bool operator==(const LinExpr & o) const = default;
    auto operator<=>(const LinExpr & o) const = default;

    /// Infix rendering, e.g. `X+N-1`, `2*X`, `0`.
    std::string str() const;

private:
    std::map<std::string, std::int64_t> coeffs_;
    std::int64_t constant_ = 0;
};

std::int64_t gcd64(std::int64_t a, std::int64_t b);
/// Floor division for possibly negative numerators.
std::int64_t floorDiv(std::int64_t a, std::int64_t b);
std::int64_t ceilDiv(std::int64_t a, std::int64_t b);

} // namespace chcelim

#endif
