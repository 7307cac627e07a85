#pragma once

/// @file gen.hpp
/// Seeded, platform-independent generators for test corpora: monoids as
/// transition monoids of random DFAs (associativity for free), instances,
/// tiling systems, group tuples, and the curated monoid library. All
/// randomness flows through raw mt19937_64 output, never std distributions,
/// so the same seed yields the same bytes everywhere.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "monisect/error.hpp"
#include "monisect/instance.hpp"
#include "monisect/models.hpp"
#include "monisect/monoid.hpp"
#include "monisect/tiling.hpp"
#include "monisect/varieties.hpp"

namespace monisect::gen {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t u64() { return engine_(); }

    std::uint32_t below(std::uint32_t n) {
        return n == 0 ? 0 : static_cast<std::uint32_t>(u64() % n);
    }

    std::uint32_t range(std::uint32_t lo, std::uint32_t hi) { // inclusive
        return lo + below(hi - lo + 1);
    }

    bool coin() { return u64() & 1; }

private:
    std::mt19937_64 engine_;
};

inline std::vector<std::string> letter_names(std::size_t n) {
    std::vector<std::string> a;
    for (std::size_t i = 0; i < n; ++i)
        a.push_back(std::string(1, static_cast<char>('a' + i)));
    return a;
}

enum class VarietyFilter { none, group, aperiodic, ds, do_ };

inline bool passes(const Monoid& m, VarietyFilter f) {
    switch (f) {
    case VarietyFilter::none: return true;
    case VarietyFilter::group: return is_group(m);
    case VarietyFilter::aperiodic: return is_aperiodic(m);
    case VarietyFilter::ds: return in_ds(m);
    case VarietyFilter::do_: return in_do(m);
    }
    return true;
}

struct MonoidOptions {
    std::uint32_t min_states = 3, max_states = 4;
    std::uint32_t min_letters = 2, max_letters = 3;
    VarietyFilter filter = VarietyFilter::none;
    std::uint32_t attempts = 2000;
};

// Transition monoid of a random DFA; rejection-sampled against the filter.
inline Monoid random_monoid(std::uint64_t seed, MonoidOptions opts = {}) {
    for (std::uint32_t attempt = 0; attempt < opts.attempts; ++attempt) {
        Rng rng(seed * 7919 + attempt);
        std::uint32_t states = rng.range(opts.min_states, opts.max_states);
        std::uint32_t letters = rng.range(opts.min_letters, opts.max_letters);
        Dfa d;
        d.states.resize(states);
        for (std::uint32_t q = 0; q < states; ++q)
            d.states[q] = "q" + std::to_string(q);
        d.alphabet = letter_names(letters);
        d.delta.resize(std::size_t(states) * letters);
        for (auto& tgt : d.delta)
            tgt = rng.below(states);
        Monoid m = transition_monoid(d).monoid;
        if (passes(m, opts.filter))
            return m;
    }
    fail("filter_unsatisfiable", "no monoid matched the filter within the attempt budget");
}

// Deterministic DO-monoid source built from variety-closed pieces: direct
// products of U1 and small cyclic groups, cut down to a random generated
// submonoid. DO is closed under products and divisors, so no rejection loop.
inline Monoid random_do_monoid(std::uint64_t seed, std::size_t size_cap = 16) {
    Rng rng(seed * 104729 + 1);
    for (;;) {
        std::uint32_t parts = rng.range(1, 2);
        Monoid m = rng.coin() ? u1() : cyclic(rng.range(2, 4));
        for (std::uint32_t i = 1; i < parts; ++i)
            m = direct_product(m, rng.coin() ? u1() : cyclic(rng.range(2, 3)));
        std::uint32_t g = rng.range(1, 3);
        std::vector<Elem> gens;
        for (std::uint32_t i = 0; i < g; ++i)
            gens.push_back(rng.below(static_cast<std::uint32_t>(m.size())));
        Monoid sub = generated_submonoid(m, gens).monoid;
        if (sub.size() <= size_cap && sub.size() >= 2)
            return sub;
    }
}

struct InstanceOptions {
    std::uint32_t k = 2;
    std::uint32_t alphabet_size = 2;
    bool require_do = false;
    bool neutral_letter = false; // append a letter mapped to every identity
    MonoidOptions monoid = {};
};

inline Instance random_instance(std::uint64_t seed, InstanceOptions opts = {}) {
    Rng rng(seed * 15485863 + 3);
    Instance inst;
    inst.alphabet = letter_names(opts.alphabet_size);
    if (opts.neutral_letter)
        inst.alphabet.push_back("z");
    for (std::uint32_t i = 0; i < opts.k; ++i) {
        Monoid m = opts.require_do ? random_do_monoid(seed * 31 + i)
                                   : random_monoid(seed * 31 + i, opts.monoid);
        std::vector<Elem> images;
        for (std::uint32_t a = 0; a < opts.alphabet_size; ++a)
            images.push_back(rng.below(static_cast<std::uint32_t>(m.size())));
        if (opts.neutral_letter)
            images.push_back(m.identity());
        std::vector<Elem> accepting;
        std::uint32_t count = rng.range(1, static_cast<std::uint32_t>(m.size()));
        std::vector<Elem> pool(m.size());
        for (Elem e = 0; e < m.size(); ++e)
            pool[e] = e;
        for (std::uint32_t c = 0; c < count; ++c) {
            std::uint32_t pick = rng.below(static_cast<std::uint32_t>(pool.size()));
            accepting.push_back(pool[pick]);
            pool.erase(pool.begin() + pick);
        }
        std::sort(accepting.begin(), accepting.end());
        inst.recognizers.push_back({Morphism(inst.alphabet, std::move(m), std::move(images)),
                                    std::move(accepting)});
    }
    return inst;
}

struct TilingOptions {
    std::uint32_t width = 2;
    std::uint32_t labels = 2;
    std::uint32_t tiles = 3;
};

inline TilingSystem random_tiling(std::uint64_t seed, TilingOptions opts = {}) {
    Rng rng(seed * 32452843 + 5);
    TilingSystem ts;
    for (std::uint32_t i = 0; i < opts.labels; ++i)
        ts.labels.push_back(std::string(1, static_cast<char>('A' + i)));
    // Tiles form a set: duplicates are dropped, so the count is an upper bound.
    for (std::uint32_t i = 0; i < opts.tiles; ++i) {
        Tile t{rng.below(opts.labels), rng.below(opts.labels), rng.below(opts.labels),
               rng.below(opts.labels)};
        if (std::find(ts.tiles.begin(), ts.tiles.end(), t) == ts.tiles.end())
            ts.tiles.push_back(t);
    }
    ts.width = opts.width;
    const auto count = static_cast<std::uint32_t>(ts.tiles.size());
    for (std::uint32_t j = 0; j < opts.width; ++j)
        ts.first.push_back(rng.below(count));
    for (std::uint32_t j = 0; j < opts.width; ++j)
        ts.bottom.push_back(rng.below(count));
    return ts;
}

// Tiling system derived from a randomly edge-labelled valid n x n grid, so a
// square tiling exists by construction. Tile count is kept within max_tiles
// by retrying with derived seeds.
inline TilingSystem solvable_square_tiling(std::uint64_t seed, std::uint32_t width,
                                           std::uint32_t labels, std::uint32_t max_tiles) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng(seed * 48271 + attempt * 2654435761ull + 11);
        const std::uint32_t n = width;
        // Edge labels: h[i][j] sits between (i,j) and (i,j+1); v[i][j] between
        // (i,j) and (i+1,j); boundary edges get labels too.
        std::vector<std::uint32_t> h((n + 1) * n), v(n * (n + 1));
        for (auto& x : h)
            x = rng.below(labels);
        for (auto& x : v)
            x = rng.below(labels);
        TilingSystem ts;
        for (std::uint32_t i = 0; i < labels; ++i)
            ts.labels.push_back(std::string(1, static_cast<char>('A' + i)));
        ts.width = n;
        std::vector<std::uint32_t> grid;
        auto tile_at = [&](std::uint32_t i, std::uint32_t j) {
            Tile t{h[i * (n + 1) + j], h[i * (n + 1) + j + 1], v[(i + 1) * n + j],
                   v[i * n + j]};
            for (std::uint32_t k = 0; k < ts.tiles.size(); ++k)
                if (ts.tiles[k] == t)
                    return k;
            ts.tiles.push_back(t);
            return static_cast<std::uint32_t>(ts.tiles.size() - 1);
        };
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j)
                grid.push_back(tile_at(i, j));
        if (ts.tiles.size() > max_tiles)
            continue;
        for (std::uint32_t j = 0; j < n; ++j) {
            ts.first.push_back(grid[j]);
            ts.bottom.push_back(grid[(n - 1) * n + j]);
        }
        return ts;
    }
}

// Symmetric group on three points, via the closure of a transposition and a
// 3-cycle.
inline Monoid s3() {
    std::vector<Transformation> gens;
    gens.push_back({3, {1, 0, 2}});
    gens.push_back({3, {1, 2, 0}});
    return transformation_monoid(letter_names(2), gens).monoid;
}

inline std::vector<Monoid> group_catalog() {
    std::vector<Monoid> g;
    for (std::uint32_t n = 2; n <= 6; ++n)
        g.push_back(cyclic(n));
    g.push_back(s3());
    g.push_back(direct_product(cyclic(2), cyclic(3)));
    return g;
}

struct GroupTupleOptions {
    std::uint32_t max_k = 3;
    std::uint32_t alphabet_size = 2;
};

// Morphisms from a shared alphabet into groups drawn from the catalog.
inline std::vector<Morphism> random_group_tuple(std::uint64_t seed,
                                                GroupTupleOptions opts = {}) {
    Rng rng(seed * 86028121 + 7);
    std::vector<Monoid> catalog = group_catalog();
    std::uint32_t k = rng.range(1, opts.max_k);
    auto alphabet = letter_names(opts.alphabet_size);
    std::vector<Morphism> hs;
    for (std::uint32_t i = 0; i < k; ++i) {
        Monoid g = catalog[rng.below(static_cast<std::uint32_t>(catalog.size()))];
        std::vector<Elem> images;
        for (std::uint32_t a = 0; a < opts.alphabet_size; ++a)
            images.push_back(rng.below(static_cast<std::uint32_t>(g.size())));
        hs.push_back(Morphism(alphabet, std::move(g), std::move(images)));
    }
    return hs;
}

// The fixed test corpus: named constructions, products, generated submonoids
// and a few seeded transition monoids. Deterministic; at least 30 entries.
inline std::vector<Monoid> curated_library() {
    std::vector<Monoid> lib;
    lib.push_back(u1());
    lib.push_back(b21());
    lib.push_back(trivial_monoid());
    for (std::uint32_t n = 2; n <= 6; ++n)
        lib.push_back(cyclic(n));
    lib.push_back(s3());
    lib.push_back(direct_product(cyclic(2), cyclic(2)));
    lib.push_back(direct_product(cyclic(2), cyclic(3)));
    lib.push_back(direct_product(cyclic(3), cyclic(3)));
    lib.push_back(direct_product(u1(), u1()));
    lib.push_back(direct_product(u1(), cyclic(2)));
    lib.push_back(direct_product(u1(), cyclic(3)));
    lib.push_back(direct_product(u1(), b21()));
    lib.push_back(direct_product(b21(), cyclic(2)));
    {
        Monoid b = b21();
        std::vector<Elem> gens{b.require("a")};
        lib.push_back(generated_submonoid(b, gens).monoid); // {1, a, 0}
    }
    {
        Monoid z6 = cyclic(6);
        std::vector<Elem> gens{z6.require("g^2")};
        lib.push_back(generated_submonoid(z6, gens).monoid); // Z3
        gens = {z6.require("g^3")};
        lib.push_back(generated_submonoid(z6, gens).monoid); // Z2
    }
    {
        Monoid uu = direct_product(u1(), cyclic(2));
        std::vector<Elem> gens{pair_elem(cyclic(2), 1, 1)};
        lib.push_back(generated_submonoid(uu, gens).monoid);
    }
    for (std::uint64_t seed = 1; seed <= 12; ++seed)
        lib.push_back(random_monoid(seed, {3, 4, 2, 2, VarietyFilter::none, 2000}));
    return lib;
}

} // namespace monisect::gen
