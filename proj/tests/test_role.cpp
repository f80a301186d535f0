#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include "iss/frame.hpp"
#include "iss/role.hpp"

using namespace iss;

namespace {

Frame f1() {
    return Frame(Universe::atoms({"a", "b", "d"}), {Candidate{0b001, 0b010}});
}

// Reference RSR computed directly from the definition, independent of the
// bitset path in the library.
std::set<Candidate> brute_rsr(const Frame& f, const RoleRep& rep) {
    std::set<Candidate> out;
    for (std::size_t idx = 0; idx < f.candidate_count(); ++idx) {
        const Candidate w = f.candidate_at(idx);
        bool ok = true;
        for (Candidate e : rep.elems)
            if (!f.is_good({e.prem | w.prem, e.concl | w.concl})) ok = false;
        if (ok) out.insert(w);
    }
    return out;
}

std::set<Candidate> bits_to_set(const Frame& f, const CandidateSet& bits) {
    std::set<Candidate> out;
    for (std::size_t i = bits.find_first(); i != CandidateSet::npos; i = bits.find_next(i))
        out.insert(f.candidate_at(i));
    return out;
}

Frame random_frame(std::mt19937_64& rng, int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, char('a' + i)));
    Frame f(Universe::atoms(names), {});
    boost::dynamic_bitset<> bits(f.candidate_count());
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (rng() & 1) bits.set(i);
    return Frame::from_bits(f.universe(), bits);
}

RoleRep random_rep(std::mt19937_64& rng, const Frame& f, int max_elems) {
    std::vector<Candidate> elems;
    const int count = static_cast<int>(rng() % (max_elems + 1));
    for (int i = 0; i < count; ++i)
        elems.push_back(f.candidate_at(rng() % f.candidate_count()));
    return RoleRep::of(std::move(elems));
}

}  // namespace

TEST_CASE("rsr on the F1 frame") {
    Frame f = f1();
    SECTION("the unit rep recovers I itself") {
        auto got = bits_to_set(f, rsr(f, unit_rep()));
        CHECK(got == std::set<Candidate>{{0b001, 0b010}});
    }
    SECTION("rep {<{a},0>}") {
        RoleRep rep{{Candidate{0b001, 0}}};
        auto got = bits_to_set(f, rsr(f, rep));
        CHECK(got == brute_rsr(f, rep));
        CHECK(got == std::set<Candidate>{{0, 0b010}, {0b001, 0b010}});
    }
    SECTION("the empty rep is robust everywhere") {
        CHECK(rsr(f, RoleRep{}).count() == f.candidate_count());
    }
}

TEST_CASE("rsr matches the brute-force definition on random frames") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        Frame f = random_frame(rng, 1 + static_cast<int>(rng() % 3));
        RoleRep rep = random_rep(rng, f, 4);
        CHECK(bits_to_set(f, rsr(f, rep)) == brute_rsr(f, rep));
    }
}

TEST_CASE("role_equal") {
    Frame f = f1();
    RoleRep r1{{Candidate{0b001, 0}}};
    RoleRep r2{{Candidate{0, 0b010}}};
    CHECK(role_equal(f, r1, r1));
    CHECK(role_equal(f, r2, r2));
    CHECK(role_equal(f, r1, r2) == (brute_rsr(f, r1) == brute_rsr(f, r2)));
    CHECK_FALSE(role_equal(f, r1, r2));
}

TEST_CASE("canonical_rep") {
    Frame f = f1();
    SECTION("contains the generating candidate") {
        RoleRep rep{{Candidate{0b001, 0b010}}};
        CHECK(canonical_rep(f, rep).contains({0b001, 0b010}));
    }
    SECTION("empty rep collects exactly the candidates robust over all of S") {
        RoleRep canon = canonical_rep(f, RoleRep{});
        for (std::size_t i = 0; i < f.candidate_count(); ++i) {
            const Candidate p = f.candidate_at(i);
            const bool full = brute_rsr(f, RoleRep{{p}}).size() == f.candidate_count();
            CHECK(canon.contains(p) == full);
        }
    }
    SECTION("role-equal to its input, and maximal, on random frames") {
        std::mt19937_64 rng(23);
        for (int trial = 0; trial < 200; ++trial) {
            Frame f2 = random_frame(rng, 1 + static_cast<int>(rng() % 4));
            RoleRep rep = random_rep(rng, f2, 4);
            RoleRep canon = canonical_rep(f2, rep);
            CHECK(role_equal(f2, canon, rep));
            // Any rep with the same role sits inside the canonical one.
            RoleRep grown = rep;
            if (!canon.empty())
                grown = symjoin(rep, RoleRep{{canon.elems[rng() % canon.size()]}});
            if (role_equal(f2, grown, rep))
                for (Candidate c : grown.elems) CHECK(canon.contains(c));
        }
    }
    SECTION("cap") {
        Frame big(Universe::atoms({"a", "b", "c", "d", "e", "f", "g"}), {});
        CHECK_THROWS_AS(canonical_rep(big, unit_rep()), CapError);
    }
}

TEST_CASE("adjoin") {
    RoleRep a{{Candidate{0b001, 0}}};
    RoleRep b{{Candidate{0, 0b010}}};
    CHECK(adjoin(a, b) == RoleRep{{Candidate{0b001, 0b010}}});
    SECTION("the pair <0,0> is the unit") {
        RoleRep r{{Candidate{0b001, 0b010}, Candidate{0b100, 0}}};
        CHECK(adjoin(r, unit_rep()) == r);
        CHECK(adjoin(unit_rep(), r) == r);
    }
    SECTION("componentwise unions of a two-element rep with a singleton") {
        RoleRep pq{{Candidate{0b001, 0}, Candidate{0b010, 0}}};
        RoleRep r{{Candidate{0b100, 0b001}}};
        CHECK(adjoin(pq, r) ==
              RoleRep::of({Candidate{0b101, 0b001}, Candidate{0b110, 0b001}}));
    }
    SECTION("associative and commutative at the rep level") {
        std::mt19937_64 rng(29);
        for (int trial = 0; trial < 50; ++trial) {
            Frame f = random_frame(rng, 2);
            RoleRep x = random_rep(rng, f, 3), y = random_rep(rng, f, 3),
                    z = random_rep(rng, f, 3);
            CHECK(adjoin(x, y) == adjoin(y, x));
            CHECK(adjoin(adjoin(x, y), z) == adjoin(x, adjoin(y, z)));
        }
    }
}

TEST_CASE("symjoin") {
    RoleRep p{{Candidate{0b001, 0}}};
    RoleRep q{{Candidate{0, 0b010}}};
    CHECK(symjoin(p, q) == RoleRep::of({Candidate{0b001, 0}, Candidate{0, 0b010}}));
    CHECK(symjoin(p, p) == p);
    SECTION("rsr of a symjunction is the intersection of the rsrs") {
        std::mt19937_64 rng(31);
        for (int trial = 0; trial < 100; ++trial) {
            Frame f = random_frame(rng, 1 + static_cast<int>(rng() % 3));
            RoleRep x = random_rep(rng, f, 4), y = random_rep(rng, f, 4);
            CHECK(rsr(f, symjoin(x, y)) == (rsr(f, x) & rsr(f, y)));
        }
    }
}

TEST_CASE("power_symjoin") {
    Frame f = f1();
    RoleRep h{{Candidate{0b001, 0}}};
    RoleRep j{{Candidate{0b010, 0}}};
    SECTION("singleton member list is the member") {
        CHECK(power_symjoin(f, {h}) == h);
    }
    SECTION("two members: union of both plus their adjunction") {
        CHECK(power_symjoin(f, {h, j}) == symjoin(symjoin(h, j), adjoin(h, j)));
        CHECK(power_symjoin(f, {h, j}) ==
              RoleRep::of({{0b001, 0}, {0b010, 0}, {0b011, 0}}));
    }
    SECTION("duplicate members collapse") {
        CHECK(power_symjoin(f, {h, h}) == h);
        RoleRep h2{{Candidate{0b001, 0}}};
        CHECK(power_symjoin(f, {h, h2, j}) == power_symjoin(f, {h, j}));
    }
    SECTION("empty member list is rejected") {
        CHECK_THROWS_AS(power_symjoin(f, {}), DomainError);
    }
}

TEST_CASE("subst_objects") {
    SECTION("replaces the object everywhere in each tuple") {
        // The universe holds just the two bearers involved; substitution only
        // needs the image bearer to be declared.
        Universe u({"a", "b", "c", "d"}, {{"P", 3}},
                   {Bearer{0, {0, 1, 2}}, Bearer{0, {0, 1, 3}}});
        Frame f(std::move(u), {});
        RoleRep rep{{Candidate{0b01, 0}}};          // { <{Pabc}, 0> }
        RoleRep got = subst_objects(f, rep, 3, 2);  // [d/c]
        CHECK(got == RoleRep{{Candidate{0b10, 0}}});
    }
    SECTION("self-substitution is the identity") {
        Universe u = Universe::closed({"0", "1"}, {{"F", 1}});
        Frame f = Frame::overlap(std::move(u));
        RoleRep rep{{Candidate{0b01, 0b10}}};
        CHECK(subst_objects(f, rep, 1, 1) == rep);
        CHECK(subst_objects(f, rep, 0, 0) == rep);
    }
    SECTION("missing image bearer is an error") {
        Universe u({"a", "b"}, {{"P", 1}}, {Bearer{0, {0}}});
        Frame f(std::move(u), {});
        CHECK_THROWS_AS(subst_objects(f, RoleRep{{Candidate{0b1, 0}}}, 1, 0), DomainError);
        CHECK_THROWS_AS(subst_objects(f, RoleRep{{Candidate{0b1, 0}}}, 5, 0), DomainError);
    }
    SECTION("distributes over adjoin") {
        std::mt19937_64 rng(37);
        Universe u = Universe::closed({"0", "1"}, {{"F", 1}, {"G", 1}});
        for (int trial = 0; trial < 100; ++trial) {
            boost::dynamic_bitset<> bits(std::size_t{1} << (2 * u.size()));
            for (std::size_t i = 0; i < bits.size(); ++i)
                if (rng() & 1) bits.set(i);
            Frame f = Frame::from_bits(u, std::move(bits));
            RoleRep x = random_rep(rng, f, 3), y = random_rep(rng, f, 3);
            const ObjectId on = static_cast<ObjectId>(rng() % 2);
            const ObjectId old = static_cast<ObjectId>(rng() % 2);
            CHECK(subst_objects(f, adjoin(x, y), on, old) ==
                  adjoin(subst_objects(f, x, on, old), subst_objects(f, y, on, old)));
        }
    }
}

TEST_CASE("content_entails on the F1 frame") {
    Frame f = f1();
    const Content a = bearer_content(f, 0);
    const Content b = bearer_content(f, 1);
    const Content d = bearer_content(f, 2);
    CHECK(content_entails(f, {a}, {b}));
    CHECK_FALSE(content_entails(f, {a, d}, {b}));
    CHECK(content_entails(f, {a}, {b}, EntailMode::closure));
    CHECK_FALSE(content_entails(f, {a, d}, {b}, EntailMode::closure));
}

TEST_CASE("content_entails on the overlap frame is reflexive") {
    Frame f = Frame::overlap(Universe::atoms({"a", "b", "c"}));
    for (BearerId i = 0; i < f.bearer_count(); ++i) {
        const Content c = bearer_content(f, i);
        CHECK(content_entails(f, {c}, {c}));
    }
}

TEST_CASE("content_entails on the quantifier-failure frame") {
    Universe u = Universe::atoms({"Fo1", "Fo2"});
    Frame f(std::move(u), {Candidate{0, 0b01}});
    const Content fo1 = bearer_content(f, 0);
    const Content fo2 = bearer_content(f, 1);
    CHECK(content_entails(f, {}, {fo1}));
    CHECK_FALSE(content_entails(f, {}, {fo2}));
}

TEST_CASE("empty entailment asks whether <0,0> is good") {
    Frame none = f1();
    CHECK_FALSE(content_entails(none, {}, {}));
    Frame all = Frame::full(Universe::atoms({"a"}));
    CHECK(content_entails(all, {}, {}));
}

TEST_CASE("self-interpretation: goodness coincides with bearer-content entailment") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        Frame f = random_frame(rng, 1 + static_cast<int>(rng() % 4));
        const int n = f.bearer_count();
        for (BearerMask g = 0; g < (BearerMask{1} << n); ++g)
            for (BearerMask d = 0; d < (BearerMask{1} << n); ++d) {
                std::vector<Content> prem, concl;
                for (int i = 0; i < n; ++i) {
                    if (g & (BearerMask{1} << i)) prem.push_back(bearer_content(f, i));
                    if (d & (BearerMask{1} << i)) concl.push_back(bearer_content(f, i));
                }
                CHECK(content_entails(f, prem, concl) == f.is_good({g, d}));
            }
    }
}

TEST_CASE("direct and closure entailment modes agree") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 150; ++trial) {
        Frame f = random_frame(rng, 1 + static_cast<int>(rng() % 4));
        std::vector<Content> prem, concl;
        const int np = static_cast<int>(rng() % 3), nc = static_cast<int>(rng() % 3);
        for (int i = 0; i < np; ++i)
            prem.push_back({random_rep(rng, f, 3), random_rep(rng, f, 3)});
        for (int i = 0; i < nc; ++i)
            concl.push_back({random_rep(rng, f, 3), random_rep(rng, f, 3)});
        CHECK(content_entails(f, prem, concl, EntailMode::direct) ==
              content_entails(f, prem, concl, EntailMode::closure));
    }
}

TEST_CASE("adjoin respects role equality") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 120; ++trial) {
        Frame f = random_frame(rng, 1 + static_cast<int>(rng() % 3));
        RoleRep r1 = random_rep(rng, f, 3);
        RoleRep r2 = random_rep(rng, f, 3);
        RoleRep r1_alt = canonical_rep(f, r1);
        CHECK(rsr(f, adjoin(r1, r2)) == rsr(f, adjoin(r1_alt, r2)));
    }
}

TEST_CASE("monotone substitution step of disjunction simplification") {
    // If RSR(X) sits inside RSR(Y), replacing premise X by Y preserves
    // entailment.
    std::mt19937_64 rng(53);
    int exercised = 0;
    for (int trial = 0; trial < 400; ++trial) {
        Frame f = random_frame(rng, 1 + static_cast<int>(rng() % 3));
        RoleRep x = random_rep(rng, f, 3), y = random_rep(rng, f, 3);
        CandidateSet rx = rsr(f, x), ry = rsr(f, y);
        if ((rx & ~ry).any()) continue;  // want RSR(x) inside RSR(y)
        std::vector<Content> g{{random_rep(rng, f, 2), RoleRep{}}};
        std::vector<Content> d{{RoleRep{}, random_rep(rng, f, 2)}};
        std::vector<Content> gx = g, gy = g;
        gx.push_back({x, RoleRep{}});
        gy.push_back({y, RoleRep{}});
        if (content_entails(f, gx, d)) {
            CHECK(content_entails(f, gy, d));
            ++exercised;
        }
    }
    CHECK(exercised > 0);
}
