#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kadlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// two ids with different bit counts were mixed
struct DimensionError : Error { using Error::Error; };
// duplicate id handed to a build step that requires distinct ids
struct DuplicateIdError : Error { using Error::Error; };
// an id that must be a member of the trie or network is not
struct MissingNodeError : Error { using Error::Error; };
// an operation required a nonempty subtree
struct EmptySubtreeError : Error { using Error::Error; };
// bucket index requested for x relative to itself
struct UndefinedBucketError : Error { using Error::Error; };
// a requested count does not fit in the available id space
struct CapacityError : Error { using Error::Error; };
// brute-force enumeration would exceed its work cap
struct InfeasibleError : Error { using Error::Error; };
// numeric argument outside the operation's domain
struct DomainError : Error { using Error::Error; };

struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

namespace detail {
inline std::string join_issues(const std::vector<std::string>& v) {
    std::string s = "invalid configuration:";
    for (const auto& x : v) {
        s += "\n  - ";
        s += x;
    }
    return s;
}
}  // namespace detail

// collects every validation problem so a bad config is reported all at once
struct ConfigError : Error {
    std::vector<std::string> issues;
    explicit ConfigError(std::vector<std::string> issues_)
        : Error(detail::join_issues(issues_)), issues(std::move(issues_)) {}
};

}  // namespace kadlab
