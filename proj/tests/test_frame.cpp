#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "iss/frame.hpp"
#include "iss/textio.hpp"

using namespace iss;

namespace {

// The frame of the monotonicity-failure construction: three 0-ary bearers,
// exactly one good implication {a} => {b}.
Frame f1() {
    Universe u = Universe::atoms({"a", "b", "d"});
    return Frame(std::move(u), {Candidate{0b001, 0b010}});
}

// Reference MO check straight from the componentwise-superset definition.
bool mo_quadratic(const Frame& f) {
    const std::size_t total = f.candidate_count();
    for (std::size_t i = 0; i < total; ++i) {
        if (!f.bits().test(i)) continue;
        const Candidate c = f.candidate_at(i);
        for (std::size_t j = 0; j < total; ++j) {
            const Candidate d = f.candidate_at(j);
            if (mask_subset(c.prem, d.prem) && mask_subset(c.concl, d.concl) &&
                !f.bits().test(j))
                return false;
        }
    }
    return true;
}

std::set<Partition> as_set(const std::vector<Partition>& v) {
    return std::set<Partition>(v.begin(), v.end());
}

Frame random_structural_frame(std::mt19937_64& rng, int nbearers) {
    std::vector<std::string> names;
    for (int i = 0; i < nbearers; ++i) names.push_back(std::string(1, char('a' + i)));
    Universe u = Universe::atoms(names);
    const BearerMask all = u.full_mask();
    std::vector<Partition> parts;
    while (parts.empty()) {
        for (BearerMask t = 0;; ++t) {
            if (rng() & 1) parts.push_back({t, static_cast<BearerMask>(all & ~t)});
            if (t == all) break;
        }
    }
    return Frame::from_partitions(std::move(u), parts);
}

}  // namespace

TEST_CASE("make_frame and is_good on the one-implication frame") {
    Frame f = f1();
    CHECK(f.bearer_count() == 3);
    CHECK(f.good_count() == 1);
    CHECK(f.is_good({0b001, 0b010}));         // {a} => {b}
    CHECK_FALSE(f.is_good({0b101, 0b010}));   // {a,d} => {b}
    CHECK_FALSE(f.is_good({0, 0}));
}

TEST_CASE("empty frame answers false everywhere") {
    Frame f;
    CHECK(f.bearer_count() == 0);
    CHECK(f.candidate_count() == 1);
    CHECK_FALSE(f.is_good({0, 0}));
}

TEST_CASE("overlap frame on two bearers has 7 of 16 good candidates") {
    Frame f = Frame::overlap(Universe::atoms({"a", "b"}));
    // Independent count over all 16 pairs.
    int expected = 0;
    for (BearerMask p = 0; p < 4; ++p)
        for (BearerMask c = 0; c < 4; ++c)
            if (p & c) ++expected;
    CHECK(expected == 7);
    CHECK(f.good_count() == 7);
    for (BearerMask p = 0; p < 4; ++p)
        for (BearerMask c = 0; c < 4; ++c)
            CHECK(f.is_good({p, c}) == ((p & c) != 0));
}

TEST_CASE("frame construction errors") {
    CHECK_THROWS_AS(Universe({}, {{"P", 2}}, {Bearer{0, {}}}), DomainError);
    CHECK_THROWS_AS(Universe({"o"}, {{"P", 1}}, {Bearer{0, {3}}}), DomainError);
    CHECK_THROWS_AS(Universe({}, {{"P", 0}, {"P2", 0}},
                             {Bearer{0, {}}, Bearer{0, {}}}),
                    DomainError);
    std::vector<std::string> many;
    for (int i = 0; i < bearer_cap() + 1; ++i) many.push_back("b" + std::to_string(i));
    CHECK_THROWS_AS(Universe::atoms(many), CapError);
    Frame f = f1();
    CHECK_THROWS_AS(f.is_good({0b1000, 0}), DomainError);
}

TEST_CASE("check_structural finds CO and MO failures on the F1 frame") {
    StructuralReport rep = check_structural(f1());
    CHECK_FALSE(rep.co);
    REQUIRE(rep.co_witness.has_value());
    CHECK(*rep.co_witness == Candidate{0b001, 0b001});  // {a} => {a}, first in scan order
    CHECK_FALSE(rep.mo);
    REQUIRE(rep.mo_witness.has_value());
    {
        auto [good, bad] = *rep.mo_witness;
        Frame f = f1();
        CHECK(f.is_good(good));
        CHECK_FALSE(f.is_good(bad));
        CHECK(mask_subset(good.prem, bad.prem));
        CHECK(mask_subset(good.concl, bad.concl));
    }
}

TEST_CASE("overlap and full frames satisfy CO, MO, and CUT") {
    for (int n : {0, 1, 2, 3}) {
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back(std::string(1, char('a' + i)));
        CHECK(check_structural(Frame::overlap(Universe::atoms(names))).all());
        CHECK(check_structural(Frame::full(Universe::atoms(names))).all());
    }
}

TEST_CASE("MO successor check agrees with the quadratic definition") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back(std::string(1, char('a' + i)));
        Frame f(Universe::atoms(names), {});
        boost::dynamic_bitset<> bits(f.candidate_count());
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (rng() & 1) bits.set(i);
        f = Frame::from_bits(f.universe(), bits);
        CHECK(check_structural(f).mo == mo_quadratic(f));
    }
}

TEST_CASE("enumerate_full_partitions on the small generators") {
    SECTION("overlap frame on two bearers: all four splits") {
        Frame f = Frame::overlap(Universe::atoms({"a", "b"}));
        auto parts = enumerate_full_partitions(f);
        CHECK(parts.size() == 4);
        // Disjoint splits never overlap, so none is good.
        for (const Partition& p : parts) {
            CHECK((p.truths & p.falsities) == 0);
            CHECK((p.truths | p.falsities) == f.universe().full_mask());
        }
    }
    SECTION("total frame: no candidate lies outside I") {
        Frame f = Frame::full(Universe::atoms({"a", "b"}));
        CHECK(enumerate_full_partitions(f).empty());
    }
    SECTION("single-partition frame recovers exactly that partition") {
        Universe u = Universe::atoms({"Fo1", "Fo2"});
        Frame f = Frame::from_partitions(std::move(u), {Partition{0b01, 0b10}});
        auto parts = enumerate_full_partitions(f);
        REQUIRE(parts.size() == 1);
        CHECK(parts[0] == Partition{0b01, 0b10});
    }
    SECTION("non-structural frames are rejected") {
        CHECK_THROWS_AS(enumerate_full_partitions(f1()), DomainError);
    }
}

TEST_CASE("partition_tree matches the staged construction") {
    SECTION("overlap frame on two bearers, both orderings") {
        Frame f = Frame::overlap(Universe::atoms({"a", "b"}));
        auto enumd = as_set(enumerate_full_partitions(f));
        CHECK(as_set(partition_tree(f, {0, 1})) == enumd);
        CHECK(as_set(partition_tree(f, {1, 0})) == enumd);
    }
    SECTION("single bearer overlap frame branches once") {
        Frame f = Frame::overlap(Universe::atoms({"a"}));
        auto parts = as_set(partition_tree(f, {0}));
        CHECK(parts == std::set<Partition>{{0b1, 0}, {0, 0b1}});
    }
    SECTION("trivial frame yields the all-true degenerate partition") {
        Frame f = Frame::full(Universe::atoms({"a", "b"}));
        auto parts = partition_tree(f, {0, 1});
        REQUIRE(parts.size() == 1);
        CHECK(parts[0] == Partition{0b11, 0});
    }
    SECTION("ordering must be a permutation") {
        Frame f = Frame::overlap(Universe::atoms({"a", "b"}));
        CHECK_THROWS_AS(partition_tree(f, {0, 0}), DomainError);
        CHECK_THROWS_AS(partition_tree(f, {0}), DomainError);
    }
}

TEST_CASE("frame_from_partitions on the three spec cases") {
    SECTION("single partition gives the single-model frame") {
        Universe u = Universe::atoms({"Fo1", "Fo2"});
        Frame f = Frame::from_partitions(u, {Partition{0b01, 0b10}});
        for (BearerMask x = 0; x < 4; ++x)
            for (BearerMask y = 0; y < 4; ++y) {
                const bool excluded = mask_subset(x, 0b01) && mask_subset(y, 0b10);
                CHECK(f.is_good({x, y}) == !excluded);
            }
        CHECK(check_structural(f).all());
    }
    SECTION("all full splits give the overlap frame") {
        Universe u = Universe::atoms({"a", "b", "c"});
        std::vector<Partition> parts;
        const BearerMask all = u.full_mask();
        for (BearerMask t = 0; t <= all; ++t) parts.push_back({t, static_cast<BearerMask>(all & ~t)});
        CHECK(Frame::from_partitions(u, parts) == Frame::overlap(u));
    }
    SECTION("empty partition list gives the total frame") {
        Universe u = Universe::atoms({"a", "b"});
        CHECK(Frame::from_partitions(u, {}) == Frame::full(u));
    }
    SECTION("partitions must be full splits") {
        Universe u = Universe::atoms({"a", "b"});
        CHECK_THROWS_AS(Frame::from_partitions(u, {Partition{0b01, 0b00}}), DomainError);
        CHECK_THROWS_AS(Frame::from_partitions(u, {Partition{0b11, 0b10}}), DomainError);
    }
}

TEST_CASE("round trip: partitions of a structural frame rebuild it") {
    // Exhaustive over all partition-set-generated frames on up to 4 bearers.
    for (int n = 0; n <= 4; ++n) {
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back(std::string(1, char('a' + i)));
        Universe u = Universe::atoms(names);
        const BearerMask all = u.full_mask();
        std::vector<Partition> splits;
        for (BearerMask t = 0;; ++t) {
            splits.push_back({t, static_cast<BearerMask>(all & ~t)});
            if (t == all) break;
        }
        const std::size_t sets = std::size_t{1} << splits.size();
        const std::size_t step = n == 4 ? 257 : 1;  // sampled stride at n=4, exhaustive below
        for (std::size_t s = 1; s < sets; s += step) {
            std::vector<Partition> chosen;
            for (std::size_t i = 0; i < splits.size(); ++i)
                if (s & (std::size_t{1} << i)) chosen.push_back(splits[i]);
            Frame f = Frame::from_partitions(u, chosen);
            CHECK(check_structural(f).all());
            if (f.is_good({0, 0})) continue;
            CHECK(Frame::from_partitions(u, enumerate_full_partitions(f)) == f);
        }
    }
}

TEST_CASE("partition_tree union over all orderings equals enumeration") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        Frame f = random_structural_frame(rng, n);
        if (f.is_good({0, 0})) continue;
        auto enumd = as_set(enumerate_full_partitions(f));
        std::vector<BearerId> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::set<Partition> unioned;
        do {
            auto leaves = partition_tree(f, order);
            for (const Partition& p : leaves) {
                CHECK(enumd.count(p) == 1);
                unioned.insert(p);
            }
        } while (std::next_permutation(order.begin(), order.end()));
        CHECK(unioned == enumd);
    }
}

TEST_CASE("every bad candidate is dominated by some tree partition") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        Frame f = random_structural_frame(rng, n);
        if (f.is_good({0, 0})) continue;
        std::vector<BearerId> order(n);
        std::iota(order.begin(), order.end(), 0);
        auto leaves = partition_tree(f, order);
        for (std::size_t idx = 0; idx < f.candidate_count(); ++idx) {
            const Candidate c = f.candidate_at(idx);
            CHECK(!f.is_good(c) == dominated(leaves, c));
        }
    }
}

TEST_CASE("frame text format round trips") {
    const std::string text =
        "# three bearers, one good implication\n"
        "bearers: a b d\n"
        "good:\n"
        "{a} => {b}\n";
    Frame f = textio::parse_frame(text);
    CHECK(f == f1());
    const std::string canon = textio::serialize_frame(f);
    CHECK(textio::parse_frame(canon) == f);
    CHECK(textio::serialize_frame(textio::parse_frame(canon)) == canon);
}

TEST_CASE("frame text format with structured bearers") {
    const std::string text =
        "bearers: F(0) F(1) G(0,1)\n"
        "good:\n"
        "{F(0), G(0,1)} => {}\n"
        "{} => {F(1)}\n";
    Frame f = textio::parse_frame(text);
    CHECK(f.bearer_count() == 3);
    CHECK(f.universe().properties().size() == 2);
    CHECK(f.universe().objects().size() == 2);
    CHECK(f.is_good({0b101, 0}));
    CHECK(f.is_good({0, 0b010}));
    CHECK(f.good_count() == 2);
    CHECK(textio::parse_frame(textio::serialize_frame(f)) == f);
}

TEST_CASE("frame text format errors") {
    CHECK_THROWS_AS(textio::parse_frame("good:\n"), ParseError);
    CHECK_THROWS_AS(textio::parse_frame("bearers: a\ngood:\n{z} => {}\n"), ParseError);
    CHECK_THROWS_AS(textio::parse_frame("bearers: a\ngood:\n{a} {a}\n"), ParseError);
    CHECK_THROWS_AS(textio::parse_frame("bearers: F(0) F(0,1)\ngood:\n"), ParseError);
}
