#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mcc {

// Thrown when a node/enumeration budget runs out.  `partial` holds whatever
// count had been reached.
class resource_limit : public std::runtime_error {
public:
    resource_limit(const std::string& what, unsigned long long partial = 0)
        : std::runtime_error(what), partial_(partial) {}
    unsigned long long partial() const { return partial_; }

private:
    unsigned long long partial_;
};

class empty_meet : public std::runtime_error {
public:
    explicit empty_meet(std::size_t edge)
        : std::runtime_error("empty meet at edge " + std::to_string(edge)), edge_(edge) {}
    std::size_t edge() const { return edge_; }

private:
    std::size_t edge_;
};

class malformed_encoding : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class infeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mcc
