#pragma once

#include <stdexcept>
#include <string>

namespace bispinor {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoIntertwiner : public Error {
public:
    using Error::Error;
};

class BadSignature : public Error {
public:
    using Error::Error;
};

class NotLorentz : public Error {
public:
    using Error::Error;
};

class FrameMismatch : public Error {
public:
    using Error::Error;
};

class SpacelikeCurrent : public Error {
public:
    using Error::Error;
};

class NullCurrent : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class NotNonnegative : public Error {
public:
    NotNonnegative(const std::string& what, double min_eigenvalue)
        : Error(what), min_eigenvalue_(min_eigenvalue) {}
    double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

/// M fails the solvability condition; carries the (negative) margin.
class Infeasible : public Error {
public:
    Infeasible(const std::string& what, double margin) : Error(what), margin_(margin) {}
    double margin() const noexcept { return margin_; }

private:
    double margin_;
};

class NotUnitary : public Error {
public:
    using Error::Error;
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

class ProjectorConstructionFailed : public Error {
public:
    using Error::Error;
};

class DegenerateNormalization : public Error {
public:
    using Error::Error;
};

class GenerationExhausted : public Error {
public:
    using Error::Error;
};

/// Malformed user input (files, flags, config).
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace bispinor
