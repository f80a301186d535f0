#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace iss {

using BearerId = int;
using ObjectId = int;
using PropertyId = int;

// Bit i refers to bearer i of the enclosing frame's bearer table.
using BearerMask = std::uint32_t;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
    ParseError(const std::string& what, int position)
        : std::runtime_error(what + " (at offset " + std::to_string(position) + ")") {}
};

struct CapError : std::runtime_error {
    explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Frame storage cap; ISS_CAP_BEARERS overrides.
inline int bearer_cap() {
    static int cap = [] {
        if (const char* env = std::getenv("ISS_CAP_BEARERS")) {
            int v = std::atoi(env);
            if (v > 0 && v <= 15) return v;
        }
        return 10;
    }();
    return cap;
}

// Canonical-representative and closure-mode computations walk 16^|B| states.
inline constexpr int kRoleOpBearerCap = 6;

inline bool mask_subset(BearerMask a, BearerMask b) { return (a & ~b) == 0; }

// One element of the implication space S = P(B) x P(B).
struct Candidate {
    BearerMask prem = 0;
    BearerMask concl = 0;

    friend auto operator<=>(const Candidate&, const Candidate&) = default;
};

inline Candidate unite(Candidate a, Candidate b) {
    return Candidate{a.prem | b.prem, a.concl | b.concl};
}

inline bool overlaps(Candidate c) { return (c.prem & c.concl) != 0; }

// A split of the bearer universe; "full" when truths | falsities covers it.
struct Partition {
    BearerMask truths = 0;
    BearerMask falsities = 0;

    friend auto operator<=>(const Partition&, const Partition&) = default;

    bool dominates(Candidate c) const {
        return mask_subset(c.prem, truths) && mask_subset(c.concl, falsities);
    }
};

// A property applied to a tuple of objects.
struct Bearer {
    PropertyId property = 0;
    std::vector<ObjectId> objects;

    friend auto operator<=>(const Bearer&, const Bearer&) = default;
};

}  // namespace iss
