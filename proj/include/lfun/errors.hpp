#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lfun {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented invariant of an input object does not hold.
class InvariantError : public Error {
public:
    using Error::Error;
};

/// An operation's precondition is violated (e.g. determinant-one normalization).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Two independent computation paths disagree beyond tolerance.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Exact integer arithmetic would leave the supported range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// A requested argument exceeds a precomputed table's range.
class CapacityError : public Error {
public:
    using Error::Error;
};

class MissingPrimeError : public Error {
public:
    explicit MissingPrimeError(std::uint64_t p)
        : Error("no eigenvalue supplied for prime " + std::to_string(p)), prime(p) {}
    std::uint64_t prime;
};

/// No sign change was found in the scanned range. Inconclusive, not a refutation.
class NoSignChangeError : public Error {
public:
    using Error::Error;
};

class DegenerateGridError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

class IncompleteZerosError : public Error {
public:
    using Error::Error;
};

class WindowError : public Error {
public:
    using Error::Error;
};

/// Malformed input data (coefficient or zero files, Satake instance files).
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace lfun
