#pragma once

#include <stdexcept>
#include <string>

namespace stagbox {

//! Base for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error { public: using Error::Error; };
class MeshError : public Error { public: using Error::Error; };
class GeometryError : public Error { public: using Error::Error; };
class ConfigurationError : public Error { public: using Error::Error; };
class DomainError : public Error { public: using Error::Error; };
class ParameterError : public Error { public: using Error::Error; };
class CouplingMapError : public Error { public: using Error::Error; };
class SolverError : public Error { public: using Error::Error; };

class NonConvergenceError : public SolverError {
public:
    NonConvergenceError(const std::string& what, int iterations, double last_norm)
    : SolverError(what), iterations_(iterations), last_norm_(last_norm)
    {}

    int iterations() const { return iterations_; }
    double last_norm() const { return last_norm_; }

private:
    int iterations_;
    double last_norm_;
};

} // namespace stagbox
