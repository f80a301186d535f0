#pragma once

#include <algorithm>
#include <optional>

#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "iss/frame.hpp"
#include "iss/types.hpp"

namespace iss {

// A finite set of candidate implications standing in for an implicational
// role; two reps denote the same role exactly when their RSRs coincide.
struct RoleRep {
    std::vector<Candidate> elems;  // sorted, unique

    static RoleRep of(std::vector<Candidate> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return RoleRep{std::move(v)};
    }

    bool empty() const { return elems.empty(); }
    std::size_t size() const { return elems.size(); }
    bool contains(Candidate c) const {
        return std::binary_search(elems.begin(), elems.end(), c);
    }

    friend bool operator==(const RoleRep&, const RoleRep&) = default;
};

inline const RoleRep& unit_rep() {
    static const RoleRep u{{Candidate{0, 0}}};
    return u;
}

// A premisory and a conclusory role, as attached to a sentence.
struct Content {
    RoleRep premisory;
    RoleRep conclusory;

    friend bool operator==(const Content&, const Content&) = default;
};

using CandidateSet = boost::dynamic_bitset<>;

inline void validate_rep(const Frame& f, const RoleRep& rep) {
    for (Candidate c : rep.elems) (void)f.index_of(c);
}

// RSR(rep) = { w in S | for every e in rep, e u w is good }, as a bit vector
// over S. The empty rep has all of S.
inline CandidateSet rsr(const Frame& f, const RoleRep& rep) {
    validate_rep(f, rep);
    const std::size_t total = f.candidate_count();
    CandidateSet out(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        const Candidate w = f.candidate_at(idx);
        bool robust = true;
        for (Candidate e : rep.elems)
            if (!f.is_good(unite(e, w))) {
                robust = false;
                break;
            }
        if (robust) out.set(idx);
    }
    return out;
}

inline bool role_equal(const Frame& f, const RoleRep& a, const RoleRep& b) {
    if (a == b) return true;
    return rsr(f, a) == rsr(f, b);
}

// Union of the role: every candidate whose singleton RSR covers the rep's RSR.
inline RoleRep canonical_rep(const Frame& f, const RoleRep& rep) {
    if (f.bearer_count() > kRoleOpBearerCap)
        throw CapError("canonical_rep is capped at " + std::to_string(kRoleOpBearerCap) +
                       " bearers");
    const CandidateSet target = rsr(f, rep);
    std::vector<Candidate> out;
    const std::size_t total = f.candidate_count();
    for (std::size_t p = 0; p < total; ++p) {
        const Candidate cp = f.candidate_at(p);
        bool covers = true;
        for (std::size_t w = target.find_first(); w != CandidateSet::npos;
             w = target.find_next(w)) {
            if (!f.bits().test(f.index_of(unite(cp, f.candidate_at(w))))) {
                covers = false;
                break;
            }
        }
        if (covers) out.push_back(cp);
    }
    return RoleRep::of(std::move(out));
}

// Pairwise unions of the two reps.
inline RoleRep adjoin(const RoleRep& a, const RoleRep& b) {
    std::vector<Candidate> out;
    out.reserve(a.size() * b.size());
    for (Candidate x : a.elems)
        for (Candidate y : b.elems) out.push_back(unite(x, y));
    return RoleRep::of(std::move(out));
}

// Plain union of the reps; intersects RSRs.
inline RoleRep symjoin(const RoleRep& a, const RoleRep& b) {
    std::vector<Candidate> out = a.elems;
    out.insert(out.end(), b.elems.begin(), b.elems.end());
    return RoleRep::of(std::move(out));
}

// Symjunction of the adjunction of every nonempty subset of the members.
// The member list is deduplicated by role equality first: the operation acts
// on a set of roles, so representative-level duplicates must collapse.
inline RoleRep power_symjoin(const Frame& f, const std::vector<RoleRep>& members) {
    if (members.empty()) throw DomainError("power_symjoin of an empty member list");

    std::vector<RoleRep> ded;
    std::vector<CandidateSet> seen;
    for (const RoleRep& m : members) {
        CandidateSet sig = rsr(f, m);
        bool dup = false;
        for (const CandidateSet& s : seen)
            if (s == sig) {
                dup = true;
                break;
            }
        if (!dup) {
            ded.push_back(m);
            seen.push_back(std::move(sig));
        }
    }

    if (ded.size() > 16)
        throw CapError("power_symjoin subset count exceeds cost cap");

    std::vector<Candidate> acc;
    // Depth-first over nonempty subsets; one adjunction per subset node.
    // The seed is the adjunction identity, so a singleton subset contributes
    // the member itself.
    auto walk = [&](auto&& self, std::size_t next, const RoleRep& current) -> void {
        for (std::size_t j = next; j < ded.size(); ++j) {
            RoleRep extended = adjoin(current, ded[j]);
            acc.insert(acc.end(), extended.elems.begin(), extended.elems.end());
            self(self, j + 1, extended);
        }
    };
    walk(walk, 0, unit_rep());
    return RoleRep::of(std::move(acc));
}

// Replace `replaced` by `replacement` in every bearer tuple on both sides of
// every element. Defined on bearers, not roles: the result can change role.
inline RoleRep subst_objects(const Frame& f, const RoleRep& rep, ObjectId replacement,
                             ObjectId replaced) {
    const Universe& u = f.universe();
    const int nobj = static_cast<int>(u.objects().size());
    if (replacement < 0 || replacement >= nobj || replaced < 0 || replaced >= nobj)
        throw DomainError("substitution object is not in the frame's object table");

    std::vector<BearerId> image(u.size());
    for (BearerId b = 0; b < u.size(); ++b) {
        auto mapped = u.substitute(b, replacement, replaced);
        if (!mapped)
            throw DomainError("substituted bearer is not in the universe: " +
                              u.bearer_name(b));
        image[b] = *mapped;
    }

    auto map_mask = [&](BearerMask m) {
        BearerMask out = 0;
        for (int b = 0; b < u.size(); ++b)
            if (m & (BearerMask{1} << b)) out |= BearerMask{1} << image[b];
        return out;
    };

    std::vector<Candidate> out;
    out.reserve(rep.size());
    for (Candidate c : rep.elems) out.push_back({map_mask(c.prem), map_mask(c.concl)});
    return RoleRep::of(std::move(out));
}

enum class EntailMode { direct, closure };

// Adjunction of all premisory roles of the premises and conclusory roles of
// the conclusions; the fold over an empty list is { <0,0> }.
inline RoleRep entail_fold(const std::vector<Content>& premises,
                           const std::vector<Content>& conclusions) {
    RoleRep fold = unit_rep();
    for (const Content& c : premises) fold = adjoin(fold, c.premisory);
    for (const Content& c : conclusions) fold = adjoin(fold, c.conclusory);
    return fold;
}

// First element of the fold that is not good, if any.
inline std::optional<Candidate> entail_witness(const Frame& f,
                                               const std::vector<Content>& premises,
                                               const std::vector<Content>& conclusions) {
    const RoleRep fold = entail_fold(premises, conclusions);
    for (Candidate c : fold.elems)
        if (!f.is_good(c)) return c;
    return std::nullopt;
}

inline bool content_entails(const Frame& f, const std::vector<Content>& premises,
                            const std::vector<Content>& conclusions,
                            EntailMode mode = EntailMode::direct) {
    const RoleRep fold = entail_fold(premises, conclusions);
    validate_rep(f, fold);
    if (mode == EntailMode::closure) {
        if (f.bearer_count() > kRoleOpBearerCap)
            throw CapError("closure-mode entailment is capped at " +
                           std::to_string(kRoleOpBearerCap) + " bearers");
        for (Candidate c : canonical_rep(f, fold).elems)
            if (!f.is_good(c)) return false;
        return true;
    }
    for (Candidate c : fold.elems)
        if (!f.is_good(c)) return false;
    return true;
}

// Content of a single bearer: <R+(b), R-(b)>.
inline Content bearer_content(const Frame& f, BearerId b) {
    if (b < 0 || b >= f.bearer_count()) throw DomainError("bearer index out of range");
    const BearerMask bit = BearerMask{1} << b;
    return Content{RoleRep{{Candidate{bit, 0}}}, RoleRep{{Candidate{0, bit}}}};
}

}  // namespace iss
