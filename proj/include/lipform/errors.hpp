#pragma once

#include <stdexcept>
#include <string>

namespace lipform {

// Misuse of an operation: dimension mismatch, bad multi-index, invalid schedule, ...
class usage_error : public std::invalid_argument {
public:
    explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

// A scenario or atlas that parses but is inconsistent (bad schema, partition
// of unity off, chart not invertible on samples, ...).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A form whose declared support box does not actually contain its support.
class support_leak_error : public std::runtime_error {
public:
    explicit support_leak_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lipform
