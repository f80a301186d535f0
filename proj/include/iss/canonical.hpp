#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "iss/frame.hpp"
#include "iss/model.hpp"
#include "iss/tarski.hpp"
#include "iss/types.hpp"

namespace iss {

// The canonical FOL implication-space model over a finite object table:
// objects 0..n-1 assigned to names in alphabetical order, one property per
// predicate, and the overlap relation as I.
inline IsModel canonical_model(const Signature& sig, int object_count) {
    std::vector<std::string> names = sig.names;
    std::sort(names.begin(), names.end());
    if (object_count < static_cast<int>(names.size()))
        throw DomainError("canonical model needs at least as many objects as names");

    std::vector<PropertyDecl> props = sig.preds;
    std::stable_sort(props.begin(), props.end(),
                     [](const PropertyDecl& a, const PropertyDecl& b) { return a.name < b.name; });

    std::vector<std::string> objects;
    for (int i = 0; i < object_count; ++i) objects.push_back(std::to_string(i));

    IsModel m;
    m.frame = Frame::overlap(Universe::closed(std::move(objects), props));
    for (int i = 0; i < static_cast<int>(names.size()); ++i) m.name_map[names[i]] = i;
    for (PropertyId p = 0; p < static_cast<int>(m.frame.universe().properties().size()); ++p)
        m.pred_map[m.frame.universe().properties()[p].name] = p;
    return m;
}

// The same model with extra candidates adjoined to I and nothing else changed.
inline IsModel extend_model(const IsModel& base, const std::vector<Candidate>& extras) {
    IsModel out = base;
    out.frame = base.frame.with_added(extras);
    return out;
}

}  // namespace iss
