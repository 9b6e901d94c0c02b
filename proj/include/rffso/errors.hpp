#pragma once

#include <stdexcept>
#include <string>

namespace rffso {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// argument outside the support of a density or function
class DomainError : public Error {
public:
    using Error::Error;
};

// Gamma evaluated at a non-positive integer
class PoleError : public Error {
public:
    using Error::Error;
};

// colliding left/right poles, no admissible contour
class DegenerateParameterError : public Error {
public:
    using Error::Error;
};

class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double estimate, double bound)
        : Error(what), best_estimate(estimate), error_bound(bound) {}
    double best_estimate;
    double error_bound;
};

class InvalidParameterError : public Error {
public:
    using Error::Error;
};

class UnsupportedCaseError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line = 0) : Error(what), line(line) {}
    int line;
};

}  // namespace rffso
