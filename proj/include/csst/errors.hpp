#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace csst {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error {
    using Error::Error;
};

// Data covariance has rank 0 (e.g. a dataset of identical points).
struct DegenerateData : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct GridTooSmall : Error {
    using Error::Error;
};

// The two prototypes of a region pair coincide; no axis can be defined.
struct DegeneratePair : Error {
    using Error::Error;
};

// No input vector survived the positive-cosine filter.
struct EmptySupport : Error {
    using Error::Error;
};

// Fewer projected vectors than the caller's reliability threshold.
struct LowSupport : Error {
    LowSupport(std::int64_t n_d_, std::int64_t min_support_)
        : Error("low support: N_D = " + std::to_string(n_d_) +
                " < min_support = " + std::to_string(min_support_)),
          n_d(n_d_),
          min_support(min_support_) {}

    std::int64_t n_d;
    std::int64_t min_support;
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
    ParseError(const std::string& path, std::size_t line_, const std::string& msg)
        : Error(path + ":" + std::to_string(line_) + ": " + msg), line(line_) {}

    std::size_t line = 0;
};

struct SchemaError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace csst
