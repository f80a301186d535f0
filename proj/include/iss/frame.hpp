#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "iss/types.hpp"

namespace iss {

struct PropertyDecl {
    std::string name;
    int arity = 0;

    friend auto operator<=>(const PropertyDecl&, const PropertyDecl&) = default;
};

// Object table + property table + the ordered bearer table they generate.
class Universe {
  public:
    Universe() = default;

    Universe(std::vector<std::string> objects, std::vector<PropertyDecl> properties,
             std::vector<Bearer> bearers)
        : objects_(std::move(objects)),
          properties_(std::move(properties)),
          bearers_(std::move(bearers)) {
        if (static_cast<int>(bearers_.size()) > bearer_cap())
            throw CapError("bearer count " + std::to_string(bearers_.size()) +
                           " exceeds cap " + std::to_string(bearer_cap()));
        for (BearerId i = 0; i < static_cast<BearerId>(bearers_.size()); ++i) {
            const Bearer& b = bearers_[i];
            if (b.property < 0 || b.property >= static_cast<int>(properties_.size()))
                throw DomainError("bearer references unknown property");
            if (static_cast<int>(b.objects.size()) != properties_[b.property].arity)
                throw DomainError("arity mismatch: property " + properties_[b.property].name +
                                  " expects " + std::to_string(properties_[b.property].arity) +
                                  " objects, got " + std::to_string(b.objects.size()));
            for (ObjectId o : b.objects)
                if (o < 0 || o >= static_cast<int>(objects_.size()))
                    throw DomainError("bearer references unknown object");
            if (!index_.emplace(b, i).second)
                throw DomainError("duplicate bearer " + bearer_name(i));
        }
        for (BearerId i = 0; i < size(); ++i) name_index_.emplace(bearer_name(i), i);
    }

    // 0-ary properties, one per name; the propositional-style universe.
    static Universe atoms(const std::vector<std::string>& names) {
        std::vector<PropertyDecl> props;
        std::vector<Bearer> bearers;
        for (int i = 0; i < static_cast<int>(names.size()); ++i) {
            props.push_back({names[i], 0});
            bearers.push_back({i, {}});
        }
        return Universe({}, std::move(props), std::move(bearers));
    }

    // Substitution-closed universe: every property applied to every tuple.
    static Universe closed(std::vector<std::string> objects,
                           std::vector<PropertyDecl> properties) {
        std::vector<Bearer> bearers;
        const int n = static_cast<int>(objects.size());
        for (int p = 0; p < static_cast<int>(properties.size()); ++p) {
            const int arity = properties[p].arity;
            if (arity > 0 && n == 0) continue;
            std::vector<ObjectId> tuple(arity, 0);
            while (true) {
                bearers.push_back({p, tuple});
                int pos = arity - 1;
                while (pos >= 0 && ++tuple[pos] == n) tuple[pos--] = 0;
                if (pos < 0) break;
            }
        }
        return Universe(std::move(objects), std::move(properties), std::move(bearers));
    }

    int size() const { return static_cast<int>(bearers_.size()); }
    BearerMask full_mask() const { return size() == 0 ? 0 : (BearerMask{1} << size()) - 1; }

    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<PropertyDecl>& properties() const { return properties_; }
    const std::vector<Bearer>& bearers() const { return bearers_; }
    const Bearer& bearer(BearerId i) const { return bearers_.at(i); }

    std::string bearer_name(BearerId i) const {
        const Bearer& b = bearers_.at(i);
        std::string out = properties_[b.property].name;
        if (!b.objects.empty()) {
            out += '(';
            for (std::size_t k = 0; k < b.objects.size(); ++k) {
                if (k) out += ',';
                out += objects_[b.objects[k]];
            }
            out += ')';
        }
        return out;
    }

    std::optional<BearerId> find(const Bearer& b) const {
        auto it = index_.find(b);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<BearerId> find_by_name(const std::string& name) const {
        auto it = name_index_.find(name);
        if (it == name_index_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<ObjectId> find_object(const std::string& name) const {
        for (ObjectId i = 0; i < static_cast<int>(objects_.size()); ++i)
            if (objects_[i] == name) return i;
        return std::nullopt;
    }

    std::optional<PropertyId> find_property(const std::string& name) const {
        for (PropertyId i = 0; i < static_cast<int>(properties_.size()); ++i)
            if (properties_[i].name == name) return i;
        return std::nullopt;
    }

    // Bearer after replacing `replaced` by `replacement` in the object tuple;
    // nullopt when the resulting bearer is not declared.
    std::optional<BearerId> substitute(BearerId id, ObjectId replacement, ObjectId replaced) const {
        Bearer b = bearers_.at(id);
        bool touched = false;
        for (ObjectId& o : b.objects)
            if (o == replaced) {
                o = replacement;
                touched = true;
            }
        if (!touched) return id;
        return find(b);
    }

    friend bool operator==(const Universe& a, const Universe& b) {
        return a.objects_ == b.objects_ && a.properties_ == b.properties_ &&
               a.bearers_ == b.bearers_;
    }

  private:
    std::vector<std::string> objects_;
    std::vector<PropertyDecl> properties_;
    std::vector<Bearer> bearers_;
    std::map<Bearer, BearerId> index_;
    std::map<std::string, BearerId> name_index_;
};

// An implication frame: bearer universe plus one membership bit per candidate
// implication, indexed as (premise bits) * 2^|B| + (conclusion bits).
class Frame {
  public:
    Frame() : Frame(Universe{}, std::vector<Candidate>{}) {}

    Frame(Universe u, const std::vector<Candidate>& good)
        : universe_(std::move(u)), good_(std::size_t{1} << (2 * universe_.size())) {
        for (Candidate c : good) good_.set(index_of(c));
    }

    static Frame from_bits(Universe u, boost::dynamic_bitset<> bits) {
        Frame f(std::move(u), std::vector<Candidate>{});
        if (bits.size() != f.good_.size()) throw DomainError("bit vector size mismatch");
        f.good_ = std::move(bits);
        return f;
    }

    // I = { <G,D> | G and D share a bearer }.
    static Frame overlap(Universe u) {
        Frame f(std::move(u), {});
        const int n = f.bearer_count();
        const BearerMask all = f.universe_.full_mask();
        for (BearerMask p = 0;; ++p) {
            for (BearerMask c = 0;; ++c) {
                if (p & c) f.good_.set((std::size_t{p} << n) | c);
                if (c == all) break;
            }
            if (p == all) break;
        }
        return f;
    }

    // I = S.
    static Frame full(Universe u) {
        Frame f(std::move(u), {});
        f.good_.set();
        return f;
    }

    // <x,y> is bad exactly when some given partition dominates it.
    static Frame from_partitions(Universe u, const std::vector<Partition>& parts) {
        Frame f(std::move(u), {});
        const BearerMask all = f.universe_.full_mask();
        for (const Partition& p : parts) {
            if ((p.truths & p.falsities) != 0 || (p.truths | p.falsities) != all)
                throw DomainError("malformed partition: not a full split of the universe");
        }
        f.good_.set();
        const int n = f.bearer_count();
        for (const Partition& p : parts) {
            BearerMask x = p.truths;
            while (true) {
                BearerMask y = p.falsities;
                while (true) {
                    f.good_.reset((std::size_t{x} << n) | y);
                    if (y == 0) break;
                    y = (y - 1) & p.falsities;
                }
                if (x == 0) break;
                x = (x - 1) & p.truths;
            }
        }
        return f;
    }

    const Universe& universe() const { return universe_; }
    int bearer_count() const { return universe_.size(); }
    std::size_t candidate_count() const { return good_.size(); }
    std::size_t good_count() const { return good_.count(); }
    const boost::dynamic_bitset<>& bits() const { return good_; }

    std::size_t index_of(Candidate c) const {
        const BearerMask all = universe_.full_mask();
        if (!mask_subset(c.prem, all) || !mask_subset(c.concl, all))
            throw DomainError("candidate references a bearer outside the universe");
        return (std::size_t{c.prem} << bearer_count()) | c.concl;
    }

    Candidate candidate_at(std::size_t idx) const {
        const int n = bearer_count();
        return Candidate{static_cast<BearerMask>(idx >> n),
                         static_cast<BearerMask>(idx & universe_.full_mask())};
    }

    bool is_good(Candidate c) const { return good_.test(index_of(c)); }

    Frame with_added(const std::vector<Candidate>& extras) const {
        Frame f = *this;
        for (Candidate c : extras) f.good_.set(f.index_of(c));
        return f;
    }

    friend bool operator==(const Frame& a, const Frame& b) {
        return a.universe_ == b.universe_ && a.good_ == b.good_;
    }

  private:
    Universe universe_;
    boost::dynamic_bitset<> good_;
};

struct StructuralReport {
    bool co = true;
    bool mo = true;
    bool cut = true;
    // Overlapping candidate that is not good.
    std::optional<Candidate> co_witness;
    // Good candidate whose one-bearer extension is not good.
    std::optional<std::pair<Candidate, Candidate>> mo_witness;
    // Bad candidate for which both one-bearer extensions are good.
    std::optional<std::pair<Candidate, BearerId>> cut_witness;

    bool all() const { return co && mo && cut; }
};

// CO / MO / CUT. MO is checked through single-bearer successors of each good
// candidate, which is equivalent to upward closure under componentwise union.
inline StructuralReport check_structural(const Frame& f) {
    StructuralReport rep;
    const int n = f.bearer_count();
    const std::size_t total = f.candidate_count();

    for (std::size_t idx = 0; idx < total; ++idx) {
        Candidate c = f.candidate_at(idx);
        if (overlaps(c) && !f.bits().test(idx)) {
            rep.co = false;
            rep.co_witness = c;
            break;
        }
    }

    for (std::size_t idx = f.bits().find_first();
         idx != boost::dynamic_bitset<>::npos && rep.mo;
         idx = f.bits().find_next(idx)) {
        Candidate c = f.candidate_at(idx);
        for (int b = 0; b < n; ++b) {
            const BearerMask bit = BearerMask{1} << b;
            Candidate up_prem{c.prem | bit, c.concl};
            Candidate up_concl{c.prem, c.concl | bit};
            if (!f.is_good(up_prem)) {
                rep.mo = false;
                rep.mo_witness = {c, up_prem};
                break;
            }
            if (!f.is_good(up_concl)) {
                rep.mo = false;
                rep.mo_witness = {c, up_concl};
                break;
            }
        }
    }

    for (std::size_t idx = 0; idx < total && rep.cut; ++idx) {
        if (f.bits().test(idx)) continue;
        Candidate c = f.candidate_at(idx);
        for (int b = 0; b < n; ++b) {
            const BearerMask bit = BearerMask{1} << b;
            if (f.is_good({c.prem | bit, c.concl}) && f.is_good({c.prem, c.concl | bit})) {
                rep.cut = false;
                rep.cut_witness = {c, b};
                break;
            }
        }
    }
    return rep;
}

// All full splits <T,F> of the universe that are themselves bad candidates.
inline std::vector<Partition> enumerate_full_partitions(const Frame& f) {
    if (!check_structural(f).all())
        throw DomainError("enumerate_full_partitions requires a structural frame");
    const BearerMask all = f.universe().full_mask();
    std::vector<Partition> out;
    for (BearerMask t = 0;; ++t) {
        const BearerMask fs = all & ~t;
        if (!f.is_good({t, fs})) out.push_back({t, fs});
        if (t == all) break;
    }
    return out;
}

// The staged construction: starting from <0,0>, extend every pair with the
// next bearer on whichever side keeps it bad, branching when both sides do.
inline std::vector<Partition> partition_tree(const Frame& f,
                                             const std::vector<BearerId>& ordering) {
    if (!check_structural(f).all())
        throw DomainError("partition_tree requires a structural frame");
    const int n = f.bearer_count();
    {
        std::vector<BearerId> sorted = ordering;
        std::sort(sorted.begin(), sorted.end());
        std::vector<BearerId> expect(n);
        std::iota(expect.begin(), expect.end(), 0);
        if (sorted != expect)
            throw DomainError("ordering is not a permutation of the bearer table");
    }
    if (f.is_good({0, 0})) return {Partition{f.universe().full_mask(), 0}};

    std::vector<Partition> stage{Partition{0, 0}};
    for (BearerId b : ordering) {
        const BearerMask bit = BearerMask{1} << b;
        std::vector<Partition> next;
        next.reserve(stage.size());
        for (const Partition& p : stage) {
            const bool left_bad = !f.is_good({p.truths | bit, p.falsities});
            const bool right_bad = !f.is_good({p.truths, p.falsities | bit});
            assert(left_bad || right_bad);  // CUT
            if (left_bad) next.push_back({p.truths | bit, p.falsities});
            if (right_bad) next.push_back({p.truths, p.falsities | bit});
        }
        stage = std::move(next);
    }
    return stage;
}

inline bool dominated(const std::vector<Partition>& parts, Candidate c) {
    for (const Partition& p : parts)
        if (p.dominates(c)) return true;
    return false;
}

}  // namespace iss
