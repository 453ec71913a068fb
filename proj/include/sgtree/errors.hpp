#pragma once

#include <stdexcept>
#include <string>

namespace sgt {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The first-part laws at (level, n) and (level, n + d) violate the
// pointwise dominance needed for a one-step monotone coupling at part m.
struct NotCoupleable : std::runtime_error {
    NotCoupleable(int level, int n, int m)
        : std::runtime_error("not coupleable at level " + std::to_string(level) + ", n=" +
                             std::to_string(n) + ", m=" + std::to_string(m)),
          level(level), n(n), m(m) {}
    int level, n, m;
};

// Hypothesis check failed before any sampling took place.
struct Refused : std::runtime_error {
    Refused(const std::string& what, int index) : std::runtime_error(what), index(index) {}
    int index;
};

}  // namespace sgt
