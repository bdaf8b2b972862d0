/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/linear.hpp"

#include <cstdlib>
#include <numeric>

namespace chcelim {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

std::int64_t floorDiv(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) { --q; }
    return q;
}

std::int64_t ceilDiv(std::int64_t a, std::int64_t b) {
    return -floorDiv(-a, b);
}

LinExpr LinExpr::variable(const std::string & name, std::int64_t coeff) {
    LinExpr e;
    e.addTerm(name, coeff);
    return e;
}

std::int64_t LinExpr::coeff(const std::string & var) const {
    auto it = coeffs_.find(var);
    return it == coeffs_.end() ? 0 : it->second;
}

bool LinExpr::isSingleVar() const {
    return constant_ == 0 && coeffs_.size() == 1 && coeffs_.begin()->second == 1;
}

void LinExpr::addTerm(const std::string & var, std::int64_t coeff) {
    if (coeff == 0) { return; }
    auto [it, inserted] = coeffs_.emplace(var, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) { coeffs_.erase(it); }
    }
}

LinExpr LinExpr::operator+(const LinExpr & o) const {
    LinExpr r = *this;
    for (auto const & [v, c] : o.coeffs_) { r.addTerm(v, c); }
    r.constant_ += o.constant_;
    return r;
}

LinExpr LinExpr::operator-(const LinExpr & o) const {
    return *this + (o * -1);
}

LinExpr LinExpr::operator*(std::int64_t k) const {
    LinExpr r;
    if (k == 0) { return r; }
    for (auto const & [v, c] : coeffs_) { r.coeffs_.emplace(v, c * k); }
    r.constant_ = constant_ * k;
    return r;
}

LinExpr LinExpr::substitute(const std::string & var, const LinExpr & by) const {
    auto it = coeffs_.find(var);
    if (it == coeffs_.end()) { return *this; }
    std::int64_t c = it->second;
    LinExpr r = *this;
    r.coeffs_.erase(var);
    return r + by * c;
}

std::int64_t LinExpr::coeffGcd() const {
    std::int64_t g = 0;
    for (auto const & [v, c] : coeffs_) { g = gcd64(g, c); }
    return g;
}

std::string LinExpr::str() const {
    std::string out;
    for (auto const & [v, c] : coeffs_) {
        if (c < 0) {
            out += '-';
        } else if (!out.empty()) {
            out += '+';
        }
        std::int64_t a = c < 0 ? -c : c;
        if (a != 1) { out += std::to_string(a) + "*"; }
        out += v;
    }
    if (constant_ != 0 || out.empty()) {
        if (constant_ < 0) {
            out += std::to_string(constant_);
        } else {
            if (!out.empty()) { out += '+'; }
            out += std::to_string(constant_);
        }
    }
    return out;
}

} // namespace chcelim
