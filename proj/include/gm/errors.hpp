#ifndef GM_ERRORS_HPP
#define GM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gm {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Arithmetic between series with different formal variables ("t" vs "s").
struct MixedVariable : Error {
    using Error::Error;
};

/// Inversion of a zero series or a singular matrix.
struct NotInvertible : Error {
    using Error::Error;
};

/// char_poly of a non-square matrix.
struct NonSquare : Error {
    using Error::Error;
};

/// exterior_d applied to a form of top degree.
struct TopDegree : Error {
    using Error::Error;
};

/// Wedge product whose degree would exceed the number of variables.
struct DegreeOverflow : Error {
    using Error::Error;
};

/// Operands built from different standard bases / Brieskorn contexts.
struct BasisMismatch : Error {
    using Error::Error;
};

/// Input polynomial exceeds the degree bound a basis was certified for.
struct DegreeBoundExceeded : Error {
    using Error::Error;
};

/// f has a nonzero linear part (or constant term): not singular at the origin.
struct NotSingular : Error {
    using Error::Error;
};

/// The staircase complement did not close below the degree bound. A
/// bounded-precision verdict: either the singularity is not isolated or the
/// bound was too small; the error deliberately does not distinguish.
struct NonIsolated : Error {
    explicit NonIsolated(int degree_bound)
        : Error("staircase complement not finite within degree bound D=" +
                std::to_string(degree_bound)),
          degree_bound(degree_bound) {}
    int degree_bound;
};

/// The exact-connection path requires quasi-homogeneous weights.
struct NotQuasiHomogeneous : Error {
    using Error::Error;
};

/// Vector/matrix dimensions do not match.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// residue() called with a lattice that is not stable under t*d/dt.
struct NotSaturated : Error {
    using Error::Error;
};

/// A public result changed when recomputed at increased truncation bounds.
struct UnstableTruncation : Error {
    using Error::Error;
};

/// Polynomial expression syntax error, with byte offset and expected tokens.
struct ParseError : Error {
    ParseError(std::size_t position, std::string expected)
        : Error("parse error at byte " + std::to_string(position) +
                ": expected " + expected),
          position(position),
          expected(std::move(expected)) {}
    std::size_t position;
    std::string expected;
};

} // namespace gm

#endif // GM_ERRORS_HPP
