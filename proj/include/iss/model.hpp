#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iss/frame.hpp"
#include "iss/role.hpp"
#include "iss/syntax.hpp"
#include "iss/types.hpp"

namespace iss {

// An implication-space model: a frame plus maps sending names to objects and
// predicates to properties of matching arity.
struct IsModel {
    Frame frame;
    std::map<std::string, ObjectId> name_map;
    std::map<std::string, PropertyId> pred_map;
};

inline void validate_model(const IsModel& m) {
    const Universe& u = m.frame.universe();
    for (const auto& [name, obj] : m.name_map)
        if (obj < 0 || obj >= static_cast<int>(u.objects().size()))
            throw DomainError("name '" + name + "' maps outside the object table");
    for (const auto& [pred, prop] : m.pred_map)
        if (prop < 0 || prop >= static_cast<int>(u.properties().size()))
            throw DomainError("predicate '" + pred + "' maps outside the property table");
}

namespace detail {

using VarEnv = std::map<std::string, ObjectId>;

inline ObjectId resolve_term(const IsModel& m, const Term& t, const VarEnv& env) {
    if (t.is_var) {
        auto it = env.find(t.text);
        if (it == env.end()) throw DomainError("unbound variable '" + t.text + "'");
        return it->second;
    }
    auto it = m.name_map.find(t.text);
    if (it == m.name_map.end()) throw DomainError("unknown name '" + t.text + "'");
    return it->second;
}

// Core interpretation over negation, conjunction, and the universal
// quantifier. Quantified instances are produced by extending the term
// environment with each object in turn, which plays the role of a fresh
// pivot name denoting that object.
inline Content interpret_rec(const IsModel& m, const Formula& f, VarEnv& env) {
    const Frame& frame = m.frame;
    switch (f.kind) {
        case Conn::atom: {
            auto pit = m.pred_map.find(f.pred);
            if (pit == m.pred_map.end())
                throw DomainError("unknown predicate '" + f.pred + "'");
            Bearer b;
            b.property = pit->second;
            for (const Term& t : f.args) b.objects.push_back(resolve_term(m, t, env));
            auto id = frame.universe().find(b);
            if (!id)
                throw DomainError("atom '" + f.pred +
                                  "' denotes a bearer missing from the universe");
            return bearer_content(frame, *id);
        }
        case Conn::neg: {
            Content k = interpret_rec(m, f.kids[0], env);
            return Content{std::move(k.conclusory), std::move(k.premisory)};
        }
        case Conn::conj: {
            Content l = interpret_rec(m, f.kids[0], env);
            Content r = interpret_rec(m, f.kids[1], env);
            return Content{adjoin(l.premisory, r.premisory),
                           power_symjoin(frame, {l.conclusory, r.conclusory})};
        }
        case Conn::forall: {
            const int nobj = static_cast<int>(frame.universe().objects().size());
            if (nobj == 0)
                throw DomainError("universal quantifier over an empty object table");
            std::vector<Content> family;
            family.reserve(nobj);
            auto saved = env.find(f.var) != env.end()
                             ? std::optional<ObjectId>(env[f.var])
                             : std::nullopt;
            for (ObjectId o = 0; o < nobj; ++o) {
                env[f.var] = o;
                family.push_back(interpret_rec(m, f.kids[0], env));
            }
            if (saved)
                env[f.var] = *saved;
            else
                env.erase(f.var);

            RoleRep prem = family[0].premisory;
            for (int i = 1; i < nobj; ++i) prem = adjoin(prem, family[i].premisory);
            std::vector<RoleRep> concls;
            concls.reserve(nobj);
            for (Content& c : family) concls.push_back(std::move(c.conclusory));
            return Content{std::move(prem), power_symjoin(frame, concls)};
        }
        default:
            throw DomainError("interpret expects defined connectives to be expanded");
    }
}

}  // namespace detail

inline Content interpret(const IsModel& m, const Formula& sentence) {
    if (!is_sentence(sentence))
        throw DomainError("interpret requires a closed sentence");
    const Formula expanded = expand_defined(sentence);
    detail::VarEnv env;
    return detail::interpret_rec(m, expanded, env);
}

inline std::vector<Content> interpret_all(const IsModel& m, const std::vector<Formula>& fs) {
    std::vector<Content> out;
    out.reserve(fs.size());
    for (const Formula& f : fs) out.push_back(interpret(m, f));
    return out;
}

inline bool sequent_holds(const IsModel& m, const Sequent& seq) {
    return content_entails(m.frame, interpret_all(m, seq.premises),
                           interpret_all(m, seq.conclusions));
}

// First bad element of the entailment fold, when the sequent fails.
inline std::optional<Candidate> sequent_witness(const IsModel& m, const Sequent& seq) {
    const auto prem = interpret_all(m, seq.premises);
    const auto concl = interpret_all(m, seq.conclusions);
    return entail_witness(m.frame, prem, concl);
}

using ModelSet = std::vector<IsModel>;

struct ModelSetVerdict {
    bool holds = true;
    int countermodel = -1;  // least index of a failing model
};

inline ModelSetVerdict holds_in_model_set(const ModelSet& models, const Sequent& seq) {
    if (models.empty()) throw DomainError("consequence over an empty model set");
    for (int i = 0; i < static_cast<int>(models.size()); ++i)
        if (!sequent_holds(models[i], seq)) return {false, i};
    return {true, -1};
}

}  // namespace iss
