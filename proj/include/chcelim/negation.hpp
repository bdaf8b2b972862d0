/*
 * SPDX-License-Identifier: MIT
 */

#ifndef CHCELIM_NEGATION_HPP
#define CHCELIM_NEGATION_HPP

#include "chcelim/program.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chcelim {

/// `new_name(visible args)` stands for "no hidden arguments exist such that
/// base_pred holds".
struct NegSpec {
    std::string basePred;
    std::vector<std::size_t> visible;
    std::vector<std::size_t> hidden;
    std::string newName;
};

class UnsupportedShape : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// `not_exists_2nd_append` style name: 1-based ordinals of the hidden
/// positions followed by the base predicate.
std::string notExistsName(const std::string & base, const std::vector<std::size_t> & hidden);

/// Inverse of notExistsName against the declarations of `p`.
std::optional<NegSpec> negSpecFromName(const std::string & name, const Program & p);

/// Declaration for spec.newName: the visible argument sorts, all inputs.
PredicateInfo notExistsInfo(const NegSpec & spec, const Program & p);

/// Positive clauses defining spec.newName as the complement of the
/// projection of basePred onto the visible positions. The projection is
/// computed clause by clause (hidden arguments must be existentially free),
/// the complement by a constructor case split on the visible list positions
/// followed by the ordered decomposition not(c1) | (c1 & not(c2)) | ... of
/// each matching clause. When basePred is total functional and only outputs
/// are hidden, the complement is empty. Throws UnsupportedShape for clauses with more than
/// one recursive call, calls to other predicates, or hidden arguments that
/// are constrained.
std::vector<Clause> eliminateNegation(const NegSpec & spec, const Program & p);

} // namespace chcelim

#endif
