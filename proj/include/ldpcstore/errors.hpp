#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ldpcstore {

// Error classes map 1:1 onto CLI exit codes (see tools/main.cpp and README).

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SizeLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Peeling stalled: carries the data-block indices that remained unknown.
class NotDecodable : public std::runtime_error {
public:
    NotDecodable(std::string msg, std::vector<std::size_t> unknown)
        : std::runtime_error(std::move(msg)), unknown_data(std::move(unknown)) {}
    std::vector<std::size_t> unknown_data;
};

class EmptyHostSet : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AllSeedsUnreachable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NetworkError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TooManyUploadFailures : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// No feasible coding-chunk subset completes the decode.
class Infeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ldpcstore
