#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "iss/canonical.hpp"
#include "iss/frame.hpp"
#include "iss/model.hpp"
#include "iss/syntax.hpp"
#include "iss/tarski.hpp"
#include "iss/types.hpp"

namespace iss {
namespace textio {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

// Splits on commas that are not nested inside parentheses.
inline std::vector<std::string> split_top_commas(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    out.erase(std::remove(out.begin(), out.end(), std::string{}), out.end());
    return out;
}

// Content lines of a file, with comments and blank lines removed.
inline std::vector<std::pair<int, std::string>> content_lines(const std::string& text) {
    std::vector<std::pair<int, std::string>> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) out.push_back({lineno, line});
    }
    return out;
}

// --- bearer tokens -----------------------------------------------------------

// A bearer token is `prop` or `prop(obj,...,obj)` with no interior spaces.
inline std::pair<std::string, std::vector<std::string>> parse_bearer_token(
    const std::string& tok, int lineno) {
    auto open = tok.find('(');
    if (open == std::string::npos) return {tok, {}};
    if (tok.back() != ')')
        throw ParseError("malformed bearer token '" + tok + "' on line " +
                         std::to_string(lineno));
    const std::string prop = tok.substr(0, open);
    const std::string inner = tok.substr(open + 1, tok.size() - open - 2);
    std::vector<std::string> objs;
    for (const std::string& o : split_top_commas(inner)) objs.push_back(o);
    if (prop.empty())
        throw ParseError("bearer token '" + tok + "' lacks a property name on line " +
                         std::to_string(lineno));
    return {prop, objs};
}

// --- candidate syntax:  {a, b} => {c} ---------------------------------------

inline std::string side_to_string(const Universe& u, BearerMask m) {
    std::string out = "{";
    bool first = true;
    for (int b = 0; b < u.size(); ++b)
        if (m & (BearerMask{1} << b)) {
            if (!first) out += ", ";
            out += u.bearer_name(b);
            first = false;
        }
    out += '}';
    return out;
}

inline std::string candidate_to_string(const Universe& u, Candidate c) {
    return side_to_string(u, c.prem) + " => " + side_to_string(u, c.concl);
}

inline std::string partition_to_string(const Universe& u, Partition p) {
    return side_to_string(u, p.truths) + " => " + side_to_string(u, p.falsities);
}

inline BearerMask parse_side(const Universe& u, const std::string& side, int lineno) {
    std::string s = trim(side);
    if (s.size() < 2 || s.front() != '{' || s.back() != '}')
        throw ParseError("expected {...} on line " + std::to_string(lineno));
    BearerMask m = 0;
    for (const std::string& name : split_top_commas(s.substr(1, s.size() - 2))) {
        auto id = u.find_by_name(name);
        if (!id)
            throw ParseError("unknown bearer '" + name + "' on line " + std::to_string(lineno));
        m |= BearerMask{1} << *id;
    }
    return m;
}

inline Candidate parse_candidate(const Universe& u, const std::string& line, int lineno = 0) {
    auto arrow = line.find("=>");
    if (arrow == std::string::npos)
        throw ParseError("expected '=>' on line " + std::to_string(lineno));
    return Candidate{parse_side(u, line.substr(0, arrow), lineno),
                     parse_side(u, line.substr(arrow + 2), lineno)};
}

inline Partition parse_partition(const Universe& u, const std::string& line, int lineno = 0) {
    Candidate c = parse_candidate(u, line, lineno);
    return Partition{c.prem, c.concl};
}

// Candidate whose sides are comma-separated atomic sentences resolved through
// a model's name and predicate maps, e.g. {Fa, Fc} => {Gb}.
inline Candidate parse_atom_candidate(const IsModel& m, const std::string& text) {
    auto arrow = text.find("=>");
    if (arrow == std::string::npos) throw ParseError("expected '=>' in candidate");
    auto side = [&](const std::string& s) {
        std::string t = trim(s);
        if (t.size() < 2 || t.front() != '{' || t.back() != '}')
            throw ParseError("expected {...} in candidate");
        BearerMask mask = 0;
        for (const std::string& item : split_top_commas(t.substr(1, t.size() - 2))) {
            Formula f = parse_formula(item);
            if (f.kind != Conn::atom || !is_sentence(f))
                throw ParseError("candidate items must be atomic sentences: " + item);
            Content c = interpret(m, f);
            // Atomic contents are singletons over one bearer.
            mask |= c.premisory.elems.at(0).prem;
        }
        return mask;
    };
    return Candidate{side(text.substr(0, arrow)), side(text.substr(arrow + 2))};
}

// --- frame files -------------------------------------------------------------

inline Frame parse_frame(const std::string& text) {
    auto lines = content_lines(text);
    std::size_t i = 0;
    if (i >= lines.size() || lines[i].second.rfind("bearers:", 0) != 0)
        throw ParseError("frame file must start with a 'bearers:' line");

    std::vector<std::string> objects;
    std::vector<PropertyDecl> props;
    std::vector<Bearer> bearers;
    std::map<std::string, ObjectId> obj_ids;
    std::map<std::string, PropertyId> prop_ids;

    for (const std::string& tok : split_ws(lines[i].second.substr(8))) {
        auto [prop, objs] = parse_bearer_token(tok, lines[i].first);
        auto pit = prop_ids.find(prop);
        PropertyId pid;
        if (pit == prop_ids.end()) {
            pid = static_cast<PropertyId>(props.size());
            props.push_back({prop, static_cast<int>(objs.size())});
            prop_ids[prop] = pid;
        } else {
            pid = pit->second;
            if (props[pid].arity != static_cast<int>(objs.size()))
                throw ParseError("arity mismatch for property '" + prop + "' on line " +
                                 std::to_string(lines[i].first));
        }
        Bearer b;
        b.property = pid;
        for (const std::string& o : objs) {
            auto oit = obj_ids.find(o);
            if (oit == obj_ids.end()) {
                oit = obj_ids.emplace(o, static_cast<ObjectId>(objects.size())).first;
                objects.push_back(o);
            }
            b.objects.push_back(oit->second);
        }
        bearers.push_back(std::move(b));
    }
    ++i;

    Universe u(std::move(objects), std::move(props), std::move(bearers));
    std::vector<Candidate> good;
    if (i < lines.size()) {
        if (lines[i].second != "good:")
            throw ParseError("expected 'good:' on line " + std::to_string(lines[i].first));
        ++i;
        for (; i < lines.size(); ++i)
            good.push_back(parse_candidate(u, lines[i].second, lines[i].first));
    }
    return Frame(std::move(u), good);
}

inline std::string serialize_frame(const Frame& f) {
    const Universe& u = f.universe();
    std::string out = "bearers:";
    for (int b = 0; b < u.size(); ++b) out += " " + u.bearer_name(b);
    out += "\ngood:\n";
    for (std::size_t idx = f.bits().find_first(); idx != boost::dynamic_bitset<>::npos;
         idx = f.bits().find_next(idx))
        out += candidate_to_string(u, f.candidate_at(idx)) + "\n";
    return out;
}

// --- model files -------------------------------------------------------------
//
//   objects: 0 1
//   properties: F/1 G/1
//   names: a=0 b=1
//   predicates: F=F G=G
//   implications: overlap | listed | partitions | overlap-plus
//   ... candidate or partition lines ...

inline IsModel parse_model(const std::string& text) {
    auto lines = content_lines(text);
    std::size_t i = 0;
    auto expect_section = [&](const std::string& head) -> std::string {
        if (i >= lines.size() || lines[i].second.rfind(head, 0) != 0)
            throw ParseError("model file: expected '" + head + "' section" +
                             (i < lines.size() ? " on line " + std::to_string(lines[i].first)
                                               : ""));
        std::string rest = trim(lines[i].second.substr(head.size()));
        ++i;
        return rest;
    };

    std::vector<std::string> objects = split_ws(expect_section("objects:"));

    std::vector<PropertyDecl> props;
    for (const std::string& tok : split_ws(expect_section("properties:"))) {
        auto slash = tok.find('/');
        if (slash == std::string::npos)
            throw ParseError("property must be written name/arity: " + tok);
        props.push_back({tok.substr(0, slash), std::stoi(tok.substr(slash + 1))});
    }

    std::map<std::string, ObjectId> name_map;
    for (const std::string& tok : split_ws(expect_section("names:"))) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParseError("name entry must be name=object: " + tok);
        const std::string name = tok.substr(0, eq);
        const std::string obj = tok.substr(eq + 1);
        auto oit = std::find(objects.begin(), objects.end(), obj);
        if (oit == objects.end()) throw ParseError("unknown object '" + obj + "' in names:");
        name_map[name] = static_cast<ObjectId>(oit - objects.begin());
    }

    Universe u = Universe::closed(objects, props);

    std::map<std::string, PropertyId> pred_map;
    for (const std::string& tok : split_ws(expect_section("predicates:"))) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw ParseError("predicate entry must be pred=property: " + tok);
        const std::string pred = tok.substr(0, eq);
        auto prop = u.find_property(tok.substr(eq + 1));
        if (!prop) throw ParseError("unknown property '" + tok.substr(eq + 1) + "'");
        pred_map[pred] = *prop;
    }

    const std::string kind = expect_section("implications:");
    IsModel m;
    if (kind == "overlap") {
        m.frame = Frame::overlap(std::move(u));
        if (i < lines.size()) throw ParseError("unexpected content after 'implications: overlap'");
    } else if (kind == "listed") {
        std::vector<Candidate> good;
        for (; i < lines.size(); ++i)
            good.push_back(parse_candidate(u, lines[i].second, lines[i].first));
        m.frame = Frame(std::move(u), good);
    } else if (kind == "partitions") {
        std::vector<Partition> parts;
        for (; i < lines.size(); ++i)
            parts.push_back(parse_partition(u, lines[i].second, lines[i].first));
        m.frame = Frame::from_partitions(std::move(u), parts);
    } else if (kind == "overlap-plus") {
        std::vector<Candidate> extras;
        for (; i < lines.size(); ++i)
            extras.push_back(parse_candidate(u, lines[i].second, lines[i].first));
        m.frame = Frame::overlap(std::move(u)).with_added(extras);
    } else {
        throw ParseError("unknown implications kind '" + kind + "'");
    }
    m.name_map = std::move(name_map);
    m.pred_map = std::move(pred_map);
    validate_model(m);
    return m;
}

inline std::string serialize_model(const IsModel& m) {
    const Universe& u = m.frame.universe();
    std::string out = "objects:";
    for (const std::string& o : u.objects()) out += " " + o;
    out += "\nproperties:";
    for (const PropertyDecl& p : u.properties())
        out += " " + p.name + "/" + std::to_string(p.arity);
    out += "\nnames:";
    for (const auto& [n, o] : m.name_map) out += " " + n + "=" + u.objects()[o];
    out += "\npredicates:";
    for (const auto& [pr, p] : m.pred_map) out += " " + pr + "=" + u.properties()[p].name;
    out += "\n";

    const Frame over = Frame::overlap(u);
    if (m.frame.bits() == over.bits()) {
        out += "implications: overlap\n";
    } else if ((over.bits() & ~m.frame.bits()).none()) {
        out += "implications: overlap-plus\n";
        boost::dynamic_bitset<> extras = m.frame.bits() & ~over.bits();
        for (std::size_t idx = extras.find_first(); idx != boost::dynamic_bitset<>::npos;
             idx = extras.find_next(idx))
            out += candidate_to_string(u, m.frame.candidate_at(idx)) + "\n";
    } else {
        out += "implications: listed\n";
        for (std::size_t idx = m.frame.bits().find_first();
             idx != boost::dynamic_bitset<>::npos; idx = m.frame.bits().find_next(idx))
            out += candidate_to_string(u, m.frame.candidate_at(idx)) + "\n";
    }
    return out;
}

// --- Tarskian model files ------------------------------------------------------
//
//   domain: 0 1
//   F/1 = {(0)}
//   a=0

inline TarskiModel parse_tarski(const std::string& text) {
    auto lines = content_lines(text);
    std::size_t i = 0;
    if (i >= lines.size() || lines[i].second.rfind("domain:", 0) != 0)
        throw ParseError("tarski file must start with a 'domain:' line");
    TarskiModel m;
    m.domain = split_ws(lines[i].second.substr(7));
    auto object_id = [&](const std::string& o, int lineno) -> ObjectId {
        auto it = std::find(m.domain.begin(), m.domain.end(), o);
        if (it == m.domain.end())
            throw ParseError("unknown object '" + o + "' on line " + std::to_string(lineno));
        return static_cast<ObjectId>(it - m.domain.begin());
    };
    ++i;
    for (; i < lines.size(); ++i) {
        const std::string& line = lines[i].second;
        const int lineno = lines[i].first;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected '=' on line " + std::to_string(lineno));
        std::string lhs = trim(line.substr(0, eq));
        std::string rhs = trim(line.substr(eq + 1));
        if (is_predicate_name(lhs) || lhs.find('/') != std::string::npos) {
            int declared_arity = -1;
            auto slash = lhs.find('/');
            if (slash != std::string::npos) {
                declared_arity = std::stoi(lhs.substr(slash + 1));
                lhs = trim(lhs.substr(0, slash));
            }
            if (rhs.size() < 2 || rhs.front() != '{' || rhs.back() != '}')
                throw ParseError("extension must be {...} on line " + std::to_string(lineno));
            std::set<std::vector<ObjectId>> ext;
            int arity = declared_arity;
            for (const std::string& tup : split_top_commas(rhs.substr(1, rhs.size() - 2))) {
                if (tup.size() < 2 || tup.front() != '(' || tup.back() != ')')
                    throw ParseError("tuple must be (...) on line " + std::to_string(lineno));
                std::vector<ObjectId> t;
                std::istringstream ts(tup.substr(1, tup.size() - 2));
                std::string item;
                while (std::getline(ts, item, ',')) {
                    item = trim(item);
                    if (!item.empty()) t.push_back(object_id(item, lineno));
                }
                if (arity < 0) arity = static_cast<int>(t.size());
                if (arity != static_cast<int>(t.size()))
                    throw ParseError("inconsistent tuple arity on line " + std::to_string(lineno));
                ext.insert(std::move(t));
            }
            if (arity < 0)
                throw ParseError("empty extension needs an explicit arity (write " + lhs +
                                 "/n = {}) on line " + std::to_string(lineno));
            m.preds.push_back({lhs, arity});
            m.extensions[lhs] = std::move(ext);
        } else {
            m.name_map[lhs] = object_id(rhs, lineno);
        }
    }
    return m;
}

inline std::string serialize_tarski(const TarskiModel& m) {
    std::string out = "domain:";
    for (const std::string& o : m.domain) out += " " + o;
    out += "\n";
    for (const PropertyDecl& p : m.preds) {
        out += p.name + "/" + std::to_string(p.arity) + " = {";
        bool first = true;
        auto it = m.extensions.find(p.name);
        if (it != m.extensions.end()) {
            for (const auto& t : it->second) {
                if (!first) out += ",";
                out += "(";
                for (std::size_t k = 0; k < t.size(); ++k) {
                    if (k) out += ",";
                    out += m.domain[t[k]];
                }
                out += ")";
                first = false;
            }
        }
        out += "}\n";
    }
    for (const auto& [n, o] : m.name_map) out += n + "=" + m.domain[o] + "\n";
    return out;
}

}  // namespace textio
}  // namespace iss
