#pragma once

#include <stdexcept>
#include <string>

namespace pnev {

// Malformed or inadmissible input. The CLI maps these to exit status 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A pullback Q(f_0, ..., f_N) vanished identically: the image of f lies in D.
class ImageInHypersurface : public InputError {
public:
    using InputError::InputError;
};

// A query outside the interval on which a truncated series is certified.
class WindowError : public InputError {
public:
    using InputError::InputError;
};

// An identity that must hold exactly did not. The CLI maps these to exit status 1.
class CheckFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pnev
