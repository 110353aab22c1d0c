#ifndef NETSALE_ERRORS_HPP
#define NETSALE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace netsale {

// Malformed input (graph files, JSON documents). Messages name the line or
// byte offset where the problem was found.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// A precondition violation: out-of-range node, non-edge removal, trivial
// market, bad parameter value, and so on.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Input exceeds a documented size limit (node cap, subset-scan cap).
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace netsale

#endif
