#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "iss/frame.hpp"
#include "iss/model.hpp"
#include "iss/syntax.hpp"
#include "iss/types.hpp"

namespace iss {

// A finite Tarskian model: a domain, predicate extensions, and a total name
// assignment.
struct TarskiModel {
    std::vector<std::string> domain;  // object names; objects are indices
    std::vector<PropertyDecl> preds;  // predicate name and arity
    std::map<std::string, std::set<std::vector<ObjectId>>> extensions;
    std::map<std::string, ObjectId> name_map;

    int pred_arity(const std::string& p) const {
        for (const auto& d : preds)
            if (d.name == p) return d.arity;
        throw DomainError("unknown predicate '" + p + "'");
    }

    bool satisfies(const std::string& pred, const std::vector<ObjectId>& tuple) const {
        auto it = extensions.find(pred);
        return it != extensions.end() && it->second.count(tuple) > 0;
    }
};

struct Signature {
    std::vector<std::string> names;
    std::vector<PropertyDecl> preds;
};

namespace detail {

inline void collect_signature(const Formula& f, Signature& sig) {
    if (f.kind == Conn::atom) {
        bool fresh = true;
        for (auto& p : sig.preds)
            if (p.name == f.pred) {
                if (p.arity != static_cast<int>(f.args.size()))
                    throw DomainError("arity mismatch for predicate " + f.pred);
                fresh = false;
            }
        if (fresh) sig.preds.push_back({f.pred, static_cast<int>(f.args.size())});
        for (const Term& t : f.args)
            if (!t.is_var &&
                std::find(sig.names.begin(), sig.names.end(), t.text) == sig.names.end())
                sig.names.push_back(t.text);
    }
    for (const Formula& k : f.kids) collect_signature(k, sig);
}

}  // namespace detail

inline Signature signature_of(const Sequent& seq) {
    Signature sig;
    for (const Formula& f : seq.premises) detail::collect_signature(f, sig);
    for (const Formula& f : seq.conclusions) detail::collect_signature(f, sig);
    std::sort(sig.names.begin(), sig.names.end());
    std::stable_sort(sig.preds.begin(), sig.preds.end(),
                     [](const PropertyDecl& a, const PropertyDecl& b) { return a.name < b.name; });
    return sig;
}

// --- Satisfaction by variable assignment -----------------------------------

namespace detail {

inline bool eval_rec(const TarskiModel& m, const Formula& f,
                     std::map<std::string, ObjectId>& env) {
    switch (f.kind) {
        case Conn::atom: {
            std::vector<ObjectId> tuple;
            tuple.reserve(f.args.size());
            for (const Term& t : f.args) {
                if (t.is_var) {
                    auto it = env.find(t.text);
                    if (it == env.end()) throw DomainError("unbound variable '" + t.text + "'");
                    tuple.push_back(it->second);
                } else {
                    auto it = m.name_map.find(t.text);
                    if (it == m.name_map.end())
                        throw DomainError("unknown name '" + t.text + "'");
                    tuple.push_back(it->second);
                }
            }
            (void)m.pred_arity(f.pred);
            return m.satisfies(f.pred, tuple);
        }
        case Conn::neg:
            return !eval_rec(m, f.kids[0], env);
        case Conn::conj:
            return eval_rec(m, f.kids[0], env) && eval_rec(m, f.kids[1], env);
        case Conn::forall: {
            auto saved = env.find(f.var) != env.end() ? std::optional<ObjectId>(env[f.var])
                                                      : std::nullopt;
            bool all = true;
            for (ObjectId o = 0; o < static_cast<int>(m.domain.size()) && all; ++o) {
                env[f.var] = o;
                all = eval_rec(m, f.kids[0], env);
            }
            if (saved)
                env[f.var] = *saved;
            else
                env.erase(f.var);
            return all;
        }
        default:
            throw DomainError("eval expects defined connectives to be expanded");
    }
}

}  // namespace detail

inline bool eval_sentence(const TarskiModel& m, const Formula& sentence) {
    if (!is_sentence(sentence)) throw DomainError("eval_sentence requires a closed sentence");
    std::map<std::string, ObjectId> env;
    const Formula expanded = expand_defined(sentence);
    return detail::eval_rec(m, expanded, env);
}

// --- States and the T/F partition -------------------------------------------

// States mirror sentence structure over properties and objects. Pi binders
// carry synthetic negative object ids so that object substitution cannot
// collide with the denotation of a name occurring elsewhere in the state.
struct State {
    enum Kind { atomic, negation, conjunction, pi } kind = atomic;
    std::string pred;              // atomic
    std::vector<ObjectId> tuple;   // atomic; may contain binder ids
    ObjectId binder = 0;           // pi
    std::vector<State> kids;
};

namespace detail {

inline State state_rec(const TarskiModel& m, const Formula& f,
                       std::map<std::string, ObjectId>& env, int& next_binder) {
    switch (f.kind) {
        case Conn::atom: {
            State s;
            s.kind = State::atomic;
            s.pred = f.pred;
            for (const Term& t : f.args) {
                if (t.is_var) {
                    auto it = env.find(t.text);
                    if (it == env.end()) throw DomainError("unbound variable '" + t.text + "'");
                    s.tuple.push_back(it->second);
                } else {
                    auto it = m.name_map.find(t.text);
                    if (it == m.name_map.end())
                        throw DomainError("unknown name '" + t.text + "'");
                    s.tuple.push_back(it->second);
                }
            }
            return s;
        }
        case Conn::neg: {
            State s;
            s.kind = State::negation;
            s.kids.push_back(state_rec(m, f.kids[0], env, next_binder));
            return s;
        }
        case Conn::conj: {
            State s;
            s.kind = State::conjunction;
            s.kids.push_back(state_rec(m, f.kids[0], env, next_binder));
            s.kids.push_back(state_rec(m, f.kids[1], env, next_binder));
            return s;
        }
        case Conn::forall: {
            State s;
            s.kind = State::pi;
            s.binder = --next_binder;
            auto saved = env.find(f.var) != env.end() ? std::optional<ObjectId>(env[f.var])
                                                      : std::nullopt;
            env[f.var] = s.binder;
            s.kids.push_back(state_rec(m, f.kids[0], env, next_binder));
            if (saved)
                env[f.var] = *saved;
            else
                env.erase(f.var);
            return s;
        }
        default:
            throw DomainError("states are built from expanded sentences");
    }
}

}  // namespace detail

inline State state_of(const TarskiModel& m, const Formula& sentence) {
    if (!is_sentence(sentence)) throw DomainError("state_of requires a closed sentence");
    std::map<std::string, ObjectId> env;
    int next_binder = 0;
    const Formula expanded = expand_defined(sentence);
    return detail::state_rec(m, expanded, env, next_binder);
}

// Substitution on states sees through composition but is shielded by a Pi
// binding the substituted object.
inline State subst_state(const State& s, ObjectId replacement, ObjectId replaced) {
    switch (s.kind) {
        case State::atomic: {
            State out = s;
            for (ObjectId& o : out.tuple)
                if (o == replaced) o = replacement;
            return out;
        }
        case State::pi: {
            if (s.binder == replaced) return s;
            State out = s;
            out.kids[0] = subst_state(s.kids[0], replacement, replaced);
            return out;
        }
        default: {
            State out = s;
            for (State& k : out.kids) k = subst_state(k, replacement, replaced);
            return out;
        }
    }
}

enum class TruthTag { T, F };

inline TruthTag classify_state(const TarskiModel& m, const State& s) {
    switch (s.kind) {
        case State::atomic:
            for (ObjectId o : s.tuple)
                if (o < 0) throw DomainError("cannot classify a state with an unbound binder");
            return m.satisfies(s.pred, s.tuple) ? TruthTag::T : TruthTag::F;
        case State::negation:
            return classify_state(m, s.kids[0]) == TruthTag::T ? TruthTag::F : TruthTag::T;
        case State::conjunction:
            return (classify_state(m, s.kids[0]) == TruthTag::T &&
                    classify_state(m, s.kids[1]) == TruthTag::T)
                       ? TruthTag::T
                       : TruthTag::F;
        case State::pi:
            for (ObjectId o = 0; o < static_cast<int>(m.domain.size()); ++o)
                if (classify_state(m, subst_state(s.kids[0], o, s.binder)) == TruthTag::F)
                    return TruthTag::F;
            return TruthTag::T;
    }
    throw DomainError("unreachable state kind");
}

inline TruthTag classify_sentence(const TarskiModel& m, const Formula& sentence) {
    return classify_state(m, state_of(m, sentence));
}

// --- Ersatz construction -----------------------------------------------------

// The induced implication-space model: same objects and properties, bad
// candidates exactly those dominated by the atomic partition <T0, F0>.
inline IsModel ersatz_of(const TarskiModel& m) {
    Universe u = Universe::closed(m.domain, m.preds);
    BearerMask truths = 0;
    for (BearerId b = 0; b < u.size(); ++b) {
        const Bearer& bearer = u.bearer(b);
        const std::string& pred = u.properties()[bearer.property].name;
        if (m.satisfies(pred, bearer.objects)) truths |= BearerMask{1} << b;
    }
    const BearerMask falsities = u.full_mask() & ~truths;
    IsModel out;
    out.frame = Frame::from_partitions(std::move(u), {Partition{truths, falsities}});
    out.name_map = m.name_map;
    for (PropertyId p = 0; p < static_cast<int>(out.frame.universe().properties().size()); ++p)
        out.pred_map[out.frame.universe().properties()[p].name] = p;
    return out;
}

// --- Brute-force classical consequence over a fixed domain size --------------

namespace detail {

inline std::vector<std::map<std::string, ObjectId>> name_assignments(
    const std::vector<std::string>& names, int domain_size, bool names_distinct) {
    std::vector<std::map<std::string, ObjectId>> out;
    const int k = static_cast<int>(names.size());
    if (k == 0) {
        out.push_back({});
        return out;
    }
    std::vector<ObjectId> pick(k, 0);
    while (true) {
        bool ok = true;
        if (names_distinct) {
            for (int i = 0; i < k && ok; ++i)
                for (int j = i + 1; j < k && ok; ++j)
                    if (pick[i] == pick[j]) ok = false;
        }
        if (ok) {
            std::map<std::string, ObjectId> m;
            for (int i = 0; i < k; ++i) m[names[i]] = pick[i];
            out.push_back(std::move(m));
        }
        int pos = k - 1;
        while (pos >= 0 && ++pick[pos] == domain_size) pick[pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

inline std::vector<std::vector<ObjectId>> all_tuples(int domain_size, int arity) {
    std::vector<std::vector<ObjectId>> out;
    std::vector<ObjectId> t(arity, 0);
    while (true) {
        out.push_back(t);
        int pos = arity - 1;
        while (pos >= 0 && ++t[pos] == domain_size) t[pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

}  // namespace detail

// Enumerates every Tarskian model of the signature with the given domain
// size and returns a countermodel (all premises true, all conclusions false)
// if one exists.
inline std::optional<TarskiModel> fol_countermodel(const Signature& sig, int domain_size,
                                                   const Sequent& seq,
                                                   bool names_distinct = true) {
    if (domain_size <= 0) throw DomainError("domain size must be positive");
    std::vector<std::string> domain;
    for (int i = 0; i < domain_size; ++i) domain.push_back(std::to_string(i));

    long long bits = 0;
    std::vector<std::vector<std::vector<ObjectId>>> tuples;
    for (const auto& p : sig.preds) {
        tuples.push_back(detail::all_tuples(domain_size, p.arity));
        bits += static_cast<long long>(tuples.back().size());
    }
    if (bits > 24) throw DomainError("oracle enumeration budget exceeded");

    const auto assignments = detail::name_assignments(sig.names, domain_size, names_distinct);
    const std::size_t combos = std::size_t{1} << bits;

    for (const auto& names : assignments) {
        for (std::size_t combo = 0; combo < combos; ++combo) {
            TarskiModel m;
            m.domain = domain;
            m.preds = sig.preds;
            m.name_map = names;
            std::size_t cursor = 0;
            for (std::size_t p = 0; p < sig.preds.size(); ++p) {
                auto& ext = m.extensions[sig.preds[p].name];
                for (const auto& t : tuples[p]) {
                    if (combo & (std::size_t{1} << cursor)) ext.insert(t);
                    ++cursor;
                }
            }
            bool counter = true;
            for (const Formula& f : seq.premises)
                if (!eval_sentence(m, f)) {
                    counter = false;
                    break;
                }
            for (const Formula& f : seq.conclusions) {
                if (!counter) break;
                if (eval_sentence(m, f)) counter = false;
            }
            if (counter) return m;
        }
    }
    return std::nullopt;
}

inline bool fol_oracle(const Signature& sig, int domain_size, const Sequent& seq,
                       bool names_distinct = true) {
    return !fol_countermodel(sig, domain_size, seq, names_distinct).has_value();
}

// Valid at every domain size 1..max_size.
inline bool fol_valid_swept(const Signature& sig, const Sequent& seq, int max_size,
                            bool names_distinct = true) {
    for (int n = 1; n <= max_size; ++n)
        if (!fol_oracle(sig, n, seq, names_distinct)) return false;
    return true;
}

}  // namespace iss
