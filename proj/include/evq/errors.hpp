#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A one-based rank outside [1, n].
class RankOutOfRange : public Error {
public:
    RankOutOfRange(long long rank, std::size_t n)
        : Error("rank " + std::to_string(rank) + " outside [1, " + std::to_string(n) + "]"),
          rank_(rank), n_(n) {}

    long long rank() const noexcept { return rank_; }
    std::size_t n() const noexcept { return n_; }

private:
    long long rank_;
    std::size_t n_;
};

/// floor(n * p) = 0: the sample is too small to resolve the requested level.
class InsufficientSamples : public Error {
public:
    InsufficientSamples(std::size_t n, double p, std::size_t required);

    std::size_t n() const noexcept { return n_; }
    double p() const noexcept { return p_; }
    /// Smallest sample size with floor(n * p) >= 1.
    std::size_t required() const noexcept { return required_; }

private:
    std::size_t n_;
    double p_;
    std::size_t required_;
};

/// An iterative evaluation hit its iteration cap.
class NoConvergence : public Error {
public:
    using Error::Error;
};

/// An experiment configuration is invalid.
class ConfigError : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

}  // namespace evq
