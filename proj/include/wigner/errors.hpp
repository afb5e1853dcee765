#pragma once

#include <stdexcept>
#include <string>

namespace wigner {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Requested feature is not available for this input (non-polynomial V, n above n_max, ...).
class CapabilityError : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class ConfigurationError : public Error { using Error::Error; };
class CoverageError : public Error { using Error::Error; };
class ResolutionError : public Error { using Error::Error; };
class NumericError : public Error { using Error::Error; };
class TruncationError : public Error { using Error::Error; };
class StatisticsError : public Error { using Error::Error; };
class DependencyError : public Error { using Error::Error; };
class ComparabilityError : public Error { using Error::Error; };

class SchemaError : public ConfigurationError {
public:
    SchemaError(std::string path, const std::string& what)
        : ConfigurationError(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

}  // namespace wigner
