#pragma once

#include <stdexcept>
#include <string>

namespace lisdist {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

class SizeError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "size"; }
};

class PreconditionError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "precondition"; }
};

class ConvergenceError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "convergence"; }
};

class ReconstructionError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "reconstruction"; }
};

class PrecisionError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "precision"; }
};

class RangeError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "range"; }
};

}  // namespace lisdist
