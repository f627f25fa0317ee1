#pragma once

#include <stdexcept>
#include <string>

namespace terracini {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Infeasible half-space system. Raised instead of returning a bogus polyhedron.
class EmptyPolyhedron : public Error {
public:
    EmptyPolyhedron() : Error("polyhedron is empty") {}
    using Error::Error;
};

class UnboundedPolyhedron : public Error {
public:
    using Error::Error;
};

class NonLatticeVertex : public Error {
public:
    using Error::Error;
};

class NotFullDimensional : public Error {
public:
    using Error::Error;
};

class NotSimplicial : public Error {
public:
    using Error::Error;
};

class NotSmooth : public Error {
public:
    using Error::Error;
};

class NotComplete : public Error {
public:
    using Error::Error;
};

/// Class group has torsion; only happens for non-smooth fans.
class TorsionDetected : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// JSON input that does not follow one of the accepted schemas.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace terracini
