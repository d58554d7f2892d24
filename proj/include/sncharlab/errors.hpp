#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sncharlab {

// A configured resource cap was hit; carries how far the computation got.
class budget_exceeded : public std::runtime_error {
public:
    budget_exceeded(std::string what, std::size_t completed)
        : std::runtime_error(std::move(what)), completed_(completed) {}
    std::size_t completed() const { return completed_; }

private:
    std::size_t completed_;
};

// The rejection sampler ran out of attempts.
class sampler_exhausted : public std::runtime_error {
public:
    sampler_exhausted(std::string what, long long attempts)
        : std::runtime_error(std::move(what)), attempts_(attempts) {}
    long long attempts() const { return attempts_; }

private:
    long long attempts_;
};

// A cache file is malformed, has an unknown version, or does not match the
// requested modulus.
class cache_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sncharlab
