#pragma once

#include <stdexcept>
#include <string>

namespace riskeq {

// Malformed or inconsistent input: bad dimensions, invalid weights,
// violated preconditions of an operation. Maps to process exit code 2.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical breakdown inside a solver: singular basis, iteration cap,
// failed certification, exhausted bracket search. Maps to exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace riskeq
