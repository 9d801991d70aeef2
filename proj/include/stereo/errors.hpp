#ifndef STEREO_ERRORS_HPP
#define STEREO_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stereo {

/// Base of every recoverable error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class VariableMismatch : public Error {
public:
    VariableMismatch(const std::string& a, const std::string& b)
        : Error("variable pairs differ: (" + a + ") vs (" + b + ")")
    {
    }
};

class NotDivisible : public Error {
public:
    using Error::Error;
};

/// Raised by the K_r/Q_r decomposition; `index` is the failing r.
class NotDivisibleAt : public NotDivisible {
public:
    explicit NotDivisibleAt(unsigned index)
        : NotDivisible("correction term " + std::to_string(index) + " is not divisible by the required circle power"),
          index(index)
    {
    }
    unsigned index;
};

class BothZero : public Error {
public:
    BothZero() : Error("both polynomials are zero") {}
};

class ParseError : public Error {
public:
    enum class Kind { syntax, unknown_variable, non_integer_exponent, negative_exponent };

    ParseError(Kind kind, std::size_t position, const std::string& message)
        : Error(message + " at position " + std::to_string(position)), kind(kind), position(position)
    {
    }

    Kind kind;
    std::size_t position;
};

class BothRhsZero : public Error {
public:
    BothRhsZero() : Error("both right-hand sides are zero") {}
};

class ZeroField : public Error {
public:
    ZeroField() : Error("transformed field vanishes identically") {}
};

class OriginSingularity : public Error {
public:
    OriginSingularity() : Error("the transition map is undefined at the origin") {}
};

class PoleExcluded : public Error {
public:
    PoleExcluded() : Error("the projection centre has no image in this chart") {}
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class StepUnderflow : public Error {
public:
    explicit StepUnderflow(double t) : Error("step size underflow at t = " + std::to_string(t)) {}
};

class NumericOverflow : public Error {
public:
    NumericOverflow() : Error("non-finite value in field evaluation") {}
};

} // namespace stereo

#endif // STEREO_ERRORS_HPP
