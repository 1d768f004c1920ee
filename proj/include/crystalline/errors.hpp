#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crystalline {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// All terms cancelled (or none were given) while building a polynomial.
class EmptyPolynomial : public Error {
public:
    using Error::Error;
};

/// The operation needs at least two exponential terms.
class SingleTerm : public Error {
public:
    using Error::Error;
};

/// An exponent magnitude would overflow double precision.
class Overflow : public Error {
public:
    using Error::Error;
};

/// The |phi| lower-bound certificate on a contour failed even after the
/// allowed number of deterministic perturbations.
class BoundaryTooClose : public Error {
public:
    using Error::Error;
};

/// A rectangle kept holding two or more zeros below the resolvable box
/// size; the polynomial has a multiple zero (or a near-collision) at
/// working precision.
class NonSimpleZero : public Error {
public:
    using Error::Error;
};

/// Newton refinement left its isolation region or failed to converge.
class NewtonDivergence : public Error {
public:
    using Error::Error;
};

/// |p'| dropped below the underflow threshold at an evaluation point.
class DerivativeUnderflow : public Error {
public:
    using Error::Error;
};

/// Requested spectral cutoff lies below the lowest possible frequency.
class CutoffTooSmall : public Error {
public:
    using Error::Error;
};

/// A partial expansion coefficient exceeded 1e300.
class BlowupGuard : public Error {
public:
    using Error::Error;
};

/// The two half-plane expansions were computed with different cutoffs.
class CutoffMismatch : public Error {
public:
    using Error::Error;
};

/// Every zero of phi is also a zero of psi on the window, so all atom
/// coefficients vanish.
class SubsViolated : public Error {
public:
    using Error::Error;
};

/// The progression scan requires real zeros.
class ComplexZeros : public Error {
public:
    using Error::Error;
};

/// A truncation-tail bound exceeds the requested tolerance: the window or
/// cutoff is too small to decide the identity at that tolerance.
class TailDominates : public Error {
public:
    using Error::Error;
};

/// Polynomial DSL syntax error; position is a byte offset into the input.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace crystalline
