#include <doctest.h>

#include "monisect/compress.hpp"
#include "monisect/gen.hpp"
#include "monisect/json_io.hpp"
#include "monisect/reductions.hpp"
#include "support/test_util.hpp"

using namespace monisect;

TEST_CASE("monoid json round trip") {
    for (const Monoid& m : {u1(), b21(), cyclic(4), direct_product(u1(), cyclic(2))}) {
        json j = monoid_to_json(m);
        Monoid back = monoid_from_json(j);
        CHECK(back.names() == m.names());
        CHECK(back.identity() == m.identity());
        CHECK(back.table() == m.table());
        CHECK(monoid_to_json(back) == j);
    }
    // Malformed tables are rejected at the parse boundary.
    json bad = monoid_to_json(u1());
    bad["table"][0][0] = "0";
    expect_error("bad_identity", [&] { monoid_from_json(bad); });
    bad = monoid_to_json(u1());
    bad["identity"] = "q";
    expect_error("parse_error", [&] { monoid_from_json(bad); });
}

TEST_CASE("duplicate names are rejected at the parse boundary") {
    json j = monoid_to_json(u1());
    j["elements"] = {"1", "1"};
    expect_error("parse_error", [&] { monoid_from_json(j); });
    Monoid b = b21();
    Morphism h({"a", "b"}, b, {1, 2});
    json mj = morphism_to_json(h);
    mj["alphabet"] = {"a", "a"};
    expect_error("parse_error", [&] { morphism_from_json(mj); });
}

TEST_CASE("non-associative json tables are rejected") {
    json j;
    j["elements"] = {"1", "x", "y"};
    j["identity"] = "1";
    j["table"] = {{"1", "x", "y"}, {"x", "y", "1"}, {"y", "x", "x"}};
    expect_error("not_associative", [&] { monoid_from_json(j); });
}

TEST_CASE("morphism json round trip with file refs") {
    Monoid b = b21();
    Morphism h({"a", "b"}, b, {b.require("a"), b.require("b")});
    json j = morphism_to_json(h);
    Morphism back = morphism_from_json(j);
    CHECK(back.alphabet == h.alphabet);
    CHECK(back.images == h.images);
    // A string monoid field resolves through the loader.
    json ref = j;
    ref["monoid"] = "b21.json";
    Morphism loaded = morphism_from_json(
        ref, [&](const std::string& path) {
            CHECK(path == "b21.json");
            return monoid_to_json(b21());
        });
    CHECK(loaded.images == h.images);
    expect_error("parse_error", [&] { morphism_from_json(ref); }); // no loader
}

TEST_CASE("instance json round trip") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Instance inst = gen::random_instance(seed, {2, 2, false, seed % 2 == 0, {}});
        json j = instance_to_json(inst);
        Instance back = instance_from_json(j);
        CHECK(back.alphabet == inst.alphabet);
        REQUIRE(back.recognizers.size() == inst.recognizers.size());
        for (std::size_t i = 0; i < back.recognizers.size(); ++i) {
            CHECK(back.recognizers[i].h.images == inst.recognizers[i].h.images);
            CHECK(back.recognizers[i].accepting == inst.recognizers[i].accepting);
        }
        CHECK(instance_to_json(back) == j);
    }
}

TEST_CASE("slp json round trip") {
    Slp s = slp_power(slp_literal({"a", "b"}, {0, 1}), BigUint(5));
    json j = slp_to_json(s);
    Slp back = slp_from_json(j);
    CHECK(slp_to_json(back) == j);
    CHECK(expand(back, 100) == expand(s, 100));
    // Serialized order must be topological.
    json bad = j;
    std::string first = bad["variables"][0], last = bad["variables"][bad["variables"].size() - 1];
    bad["variables"][0] = last;
    bad["variables"][bad["variables"].size() - 1] = first;
    expect_error("cycle", [&] { slp_from_json(bad); });
}

TEST_CASE("dfa and transformation json round trips") {
    Monoid b = b21();
    Morphism h({"a", "b"}, b, {b.require("a"), b.require("b")});
    Dfa d = monoid_to_dfa(h, {b.require("ab")});
    json j = dfa_to_json(d);
    Dfa back = dfa_from_json(j);
    CHECK(dfa_to_json(back) == j);
    CHECK(back.accepts({0, 1}) == d.accepts({0, 1}));
    Transformation t{4, {1, 0, 2, 2}};
    CHECK(transformation_from_json(transformation_to_json(t)) == t);
}

TEST_CASE("tiling system and grid json round trips") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        TilingSystem ts = gen::random_tiling(seed);
        json j = tiling_system_to_json(ts);
        TilingSystem back = tiling_system_from_json(j);
        CHECK(tiling_system_to_json(back) == j);
        if (auto t = solve_corridor(ts)) {
            Tiling grid = tiling_from_json(tiling_to_json(*t), ts.width);
            CHECK(grid.grid == t->grid);
        }
    }
}

TEST_CASE("word json forms") {
    std::vector<std::string> single{"a", "b"};
    CHECK(word_to_json(single, {0, 1, 0}) == json("aba"));
    CHECK(word_from_json(single, json("aba")) == Word{0, 1, 0});
    std::vector<std::string> multi{"t0", "t1"};
    json arr = word_to_json(multi, {1, 0});
    CHECK(arr.is_array());
    CHECK(word_from_json(multi, arr) == Word{1, 0});
    expect_error("unknown_letter", [&] { word_from_json(single, json("xyz")); });
}

TEST_CASE("generators are deterministic per seed") {
    for (std::uint64_t seed : {1ull, 17ull, 923ull}) {
        CHECK(monoid_to_json(gen::random_monoid(seed)) ==
              monoid_to_json(gen::random_monoid(seed)));
        CHECK(instance_to_json(gen::random_instance(seed)) ==
              instance_to_json(gen::random_instance(seed)));
        CHECK(tiling_system_to_json(gen::random_tiling(seed)) ==
              tiling_system_to_json(gen::random_tiling(seed)));
        CHECK(group_tuple_to_json(gen::random_group_tuple(seed)) ==
              group_tuple_to_json(gen::random_group_tuple(seed)));
    }
    CHECK(monoid_to_json(gen::random_monoid(1)) != monoid_to_json(gen::random_monoid(2)));
}

TEST_CASE("generator filters hold") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        CHECK(in_do(gen::random_do_monoid(seed)));
        Monoid g = gen::random_monoid(seed, {3, 4, 2, 2, gen::VarietyFilter::aperiodic, 2000});
        CHECK(is_aperiodic(g));
    }
    Instance doi = gen::random_instance(5, {3, 2, true, false, {}});
    for (const auto& r : doi.recognizers)
        CHECK(in_do(r.h.target));
}

TEST_CASE("curated library") {
    auto lib = gen::curated_library();
    CHECK(lib.size() >= 30);
    CHECK(isomorphic(lib[1], b21()));
    int small = 0;
    for (const Monoid& m : lib)
        if (m.size() <= 8)
            ++small;
    CHECK(small >= 15);
}

TEST_CASE("group tuples target groups over a shared alphabet") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        auto hs = gen::random_group_tuple(seed);
        REQUIRE(!hs.empty());
        for (const auto& h : hs) {
            CHECK(is_group(h.target));
            CHECK(h.alphabet == hs[0].alphabet);
        }
        // Round trip through the group-tuple schema.
        auto back = group_tuple_from_json(group_tuple_to_json(hs));
        CHECK(back.size() == hs.size());
    }
}
