#pragma once

#include <stdexcept>
#include <string>

namespace extridge {

// Violated input contract: bad shapes, unparsable files, invalid parameters.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numeric failure: eigensolver non-convergence, loss of positive
// definiteness, filter evaluated at a pole.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace extridge
