#pragma once

#include <stdexcept>
#include <string>

#include "multiskein/laurent.hpp"
#include "multiskein/scaled.hpp"

namespace multiskein {

struct ExpressionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses polynomial expressions such as "(A - A^-1)*z^-1 + 1" or "-z/4" over the
// declared generators. Division is allowed by units only (monomials, integers).
Scaled<Laurent> parse_expression(const std::string& text, const LaurentSpacePtr& space);

}  // namespace multiskein
