#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lmcf {

class LmcfError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public LmcfError {
public:
    using LmcfError::LmcfError;
};

class NotImmersedError : public LmcfError {
public:
    using LmcfError::LmcfError;
};

class NotCertifiedError : public LmcfError {
public:
    using LmcfError::LmcfError;
};

class NonExactError : public LmcfError {
public:
    NonExactError(const std::string& msg, double loop_value)
        : LmcfError(msg), loop_value(loop_value) {}
    double loop_value;
};

class InsufficientTruncationError : public LmcfError {
public:
    using LmcfError::LmcfError;
};

class TailFitError : public LmcfError {
public:
    using LmcfError::LmcfError;
};

class ProjectionError : public LmcfError {
public:
    ProjectionError(const std::string& msg, double radius) : LmcfError(msg), radius(radius) {}
    double radius;
};

class SingularCurveError : public LmcfError {
public:
    using LmcfError::LmcfError;
};

class ClusterAmbiguityError : public LmcfError {
public:
    using LmcfError::LmcfError;
};

class ReducibilityAmbiguityError : public LmcfError {
public:
    using LmcfError::LmcfError;
};

class DegreeError : public LmcfError {
public:
    using LmcfError::LmcfError;
};

class ParseError : public LmcfError {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : LmcfError(msg + " at offset " + std::to_string(offset)), offset(offset) {}
    std::size_t offset;
};

}  // namespace lmcf
