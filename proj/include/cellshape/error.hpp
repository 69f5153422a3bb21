#pragma once

#include <stdexcept>
#include <string>

namespace cellshape {

/// Failure inside a numerical pipeline stage.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or missing input (files, manifests, configuration, arguments).
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace cellshape
