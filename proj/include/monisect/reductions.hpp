#pragma once

/// @file reductions.hpp
/// Constructive translations: language gadgets recognized by B21, the square
/// tiling encoding into an intersection instance, label normalization for
/// corridor systems, and the corridor tiling encoding into singleton-accepting
/// instances over size-6 monoids.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monisect/error.hpp"
#include "monisect/instance.hpp"
#include "monisect/monoid.hpp"
#include "monisect/tiling.hpp"

namespace monisect {

enum class Lemma6Variant { left, right, block };

// Pairwise disjoint letter sets B, C, D, E, F inside a shared alphabet.
// LEFT recognizes E*B(D|E)*, RIGHT recognizes (D|E)*CE*, BLOCK recognizes
// (E*B(E|F)*CE* | E*DE*)+; letters outside the sets map to zero.
struct Lemma6Spec {
    std::vector<std::string> alphabet;
    std::vector<Letter> b, c, d, e, f;
    Lemma6Variant variant = Lemma6Variant::left;
};

namespace detail {

inline void require_disjoint(const Lemma6Spec& spec) {
    std::vector<int> owner(spec.alphabet.size(), -1);
    const std::vector<Letter>* sets[] = {&spec.b, &spec.c, &spec.d, &spec.e, &spec.f};
    for (int s = 0; s < 5; ++s)
        for (Letter a : *sets[s]) {
            if (a >= spec.alphabet.size())
                fail("unknown_letter", "letter index outside alphabet");
            if (owner[a] != -1)
                fail("disjointness", "letter " + spec.alphabet[a] + " used in two sets");
            owner[a] = s;
        }
}

} // namespace detail

inline Recognizer lemma6_recognizer(const Lemma6Spec& spec) {
    detail::require_disjoint(spec);
    Monoid m = b21();
    const Elem one = 0, ea = 1, eb = 2, eab = 3, eba = 4, zero = 5;
    std::vector<Elem> images(spec.alphabet.size(), zero);
    Elem accept = 0;
    switch (spec.variant) {
    case Lemma6Variant::left:
        for (Letter a : spec.e)
            images[a] = one;
        for (Letter a : spec.b)
            images[a] = eb;
        for (Letter a : spec.d)
            images[a] = eab;
        accept = eb;
        break;
    case Lemma6Variant::right:
        for (Letter a : spec.e)
            images[a] = one;
        for (Letter a : spec.c)
            images[a] = eb;
        for (Letter a : spec.d)
            images[a] = eba;
        accept = eb;
        break;
    case Lemma6Variant::block:
        for (Letter a : spec.b)
            images[a] = ea;
        for (Letter a : spec.c)
            images[a] = eb;
        for (Letter a : spec.d)
            images[a] = eab;
        for (Letter a : spec.f)
            images[a] = eba;
        for (Letter a : spec.e)
            images[a] = one;
        accept = eab;
        break;
    }
    return Recognizer{Morphism(spec.alphabet, std::move(m), std::move(images)), {accept}};
}

// S+ as a single size-6 recognizer: S maps to the idempotent ab, the rest to
// zero.
inline Recognizer plus_recognizer(const std::vector<std::string>& alphabet,
                                  std::span<const Letter> part) {
    Monoid m = b21();
    std::vector<Elem> images(alphabet.size(), 5);
    for (Letter a : part) {
        if (a >= alphabet.size())
            fail("unknown_letter", "letter index outside alphabet");
        images[a] = 3; // ab
    }
    return Recognizer{Morphism(alphabet, std::move(m), std::move(images)), {3}};
}

// (A_1 ... A_n)+ as an intersection of n size-6 recognizers.
inline std::vector<Recognizer> lemma7_recognizers(const std::vector<std::string>& alphabet,
                                                  const std::vector<std::vector<Letter>>& parts) {
    if (parts.empty())
        fail("bad_instance", "need at least one letter set");
    std::vector<char> in_union(alphabet.size(), 0);
    for (const auto& part : parts)
        for (Letter a : part) {
            if (a >= alphabet.size())
                fail("unknown_letter", "letter index outside alphabet");
            if (in_union[a])
                fail("disjointness", "letter sets must be pairwise disjoint");
            in_union[a] = 1;
        }
    const std::size_t n = parts.size();
    std::vector<Recognizer> out;
    if (n == 1) {
        out.push_back(plus_recognizer(alphabet, parts[0]));
        return out;
    }
    auto rest = [&](std::size_t i, std::size_t j) {
        // Union of all parts except parts i and j.
        std::vector<Letter> d;
        for (std::size_t t = 0; t < n; ++t) {
            if (t == i || t == j)
                continue;
            d.insert(d.end(), parts[t].begin(), parts[t].end());
        }
        std::sort(d.begin(), d.end());
        return d;
    };
    for (std::size_t i = 0; i + 1 < n; ++i) {
        Lemma6Spec spec;
        spec.alphabet = alphabet;
        spec.variant = Lemma6Variant::block;
        spec.b = parts[i];
        spec.c = parts[i + 1];
        spec.d = rest(i, i + 1);
        out.push_back(lemma6_recognizer(spec));
    }
    Lemma6Spec last;
    last.alphabet = alphabet;
    last.variant = Lemma6Variant::block;
    last.b = parts[0];
    last.c = parts[n - 1];
    last.f = rest(0, n - 1);
    out.push_back(lemma6_recognizer(last));
    return out;
}

// ---------------------------------------------------------------------------
// Square tiling -> intersection instance.

inline std::string square_letter_name(std::size_t tile, std::uint32_t i, std::uint32_t j) {
    return "t" + std::to_string(tile) + "r" + std::to_string(i) + "c" + std::to_string(j);
}

inline Letter square_letter(const TilingSystem& ts, std::size_t tile, std::uint32_t i,
                            std::uint32_t j) {
    // (tile, row i, column j), rows and columns 1-based.
    return static_cast<Letter>((tile * ts.width + (i - 1)) * ts.width + (j - 1));
}

inline std::vector<std::string> square_alphabet(const TilingSystem& ts) {
    std::vector<std::string> a;
    a.reserve(ts.tiles.size() * ts.width * ts.width);
    for (std::size_t t = 0; t < ts.tiles.size(); ++t)
        for (std::uint32_t i = 1; i <= ts.width; ++i)
            for (std::uint32_t j = 1; j <= ts.width; ++j)
                a.push_back(square_letter_name(t, i, j));
    return a;
}

inline std::uint32_t tile_label(const Tile& t, int d) {
    switch (d) {
    case 0: return t.w;
    case 1: return t.e;
    case 2: return t.s;
    default: return t.n;
    }
}

// The square tiling instance over a non-trivial monoid M with a distinguished
// x != 1: first/bottom-row recognizers over M, horizontal/vertical/uniqueness
// recognizers over M x M. Defaults to (U1, 0).
inline Instance square_tiling_to_instance(const TilingSystem& ts, const Monoid& m, Elem x) {
    ts.check();
    if (m.size() < 2)
        fail("trivial_monoid", "the carrier monoid must be non-trivial");
    if (x == m.identity() || x >= m.size())
        fail("bad_element", "x must be an element other than the identity");
    const std::uint32_t n = ts.width;
    Instance inst;
    inst.alphabet = square_alphabet(ts);
    Monoid mm = direct_product(m, m);
    const Elem one = m.identity();
    const Elem p11 = pair_elem(m, one, one);
    const Elem pxx = pair_elem(m, x, x);
    const Elem px1 = pair_elem(m, x, one);
    const Elem p1x = pair_elem(m, one, x);

    auto single = [&](auto&& assign) {
        std::vector<Elem> images(inst.alphabet.size(), one);
        assign(images);
        return images;
    };
    auto pairwise = [&](auto&& assign) {
        std::vector<Elem> images(inst.alphabet.size(), p11);
        assign(images);
        return images;
    };

    // First-row and bottom-row constraints, one per column and direction.
    for (std::uint32_t j = 1; j <= n; ++j)
        for (int d = 0; d < 4; ++d) {
            const Tile& fj = ts.tiles[ts.first[j - 1]];
            inst.recognizers.push_back(
                {Morphism(inst.alphabet, m, single([&](std::vector<Elem>& im) {
                              for (std::size_t t = 0; t < ts.tiles.size(); ++t)
                                  if (tile_label(ts.tiles[t], d) == tile_label(fj, d))
                                      im[square_letter(ts, t, 1, j)] = x;
                          })),
                 {x}});
        }
    for (std::uint32_t j = 1; j <= n; ++j)
        for (int d = 0; d < 4; ++d) {
            const Tile& bj = ts.tiles[ts.bottom[j - 1]];
            inst.recognizers.push_back(
                {Morphism(inst.alphabet, m, single([&](std::vector<Elem>& im) {
                              for (std::size_t t = 0; t < ts.tiles.size(); ++t)
                                  if (tile_label(ts.tiles[t], d) == tile_label(bj, d))
                                      im[square_letter(ts, t, n, j)] = x;
                          })),
                 {x}});
        }
    // Horizontal matching: east label at (i, j) vs west label at (i, j+1).
    for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = 1; j + 1 <= n; ++j)
            for (std::uint32_t mu = 0; mu < ts.labels.size(); ++mu)
                inst.recognizers.push_back(
                    {Morphism(inst.alphabet, mm, pairwise([&](std::vector<Elem>& im) {
                                  for (std::size_t t = 0; t < ts.tiles.size(); ++t) {
                                      if (ts.tiles[t].e == mu)
                                          im[square_letter(ts, t, i, j)] = px1;
                                      if (ts.tiles[t].w == mu)
                                          im[square_letter(ts, t, i, j + 1)] = p1x;
                                  }
                              })),
                     {p11, pxx}});
    // Vertical matching: south label at (i, j) vs north label at (i+1, j).
    for (std::uint32_t i = 1; i + 1 <= n; ++i)
        for (std::uint32_t j = 1; j <= n; ++j)
            for (std::uint32_t mu = 0; mu < ts.labels.size(); ++mu)
                inst.recognizers.push_back(
                    {Morphism(inst.alphabet, mm, pairwise([&](std::vector<Elem>& im) {
                                  for (std::size_t t = 0; t < ts.tiles.size(); ++t) {
                                      if (ts.tiles[t].s == mu)
                                          im[square_letter(ts, t, i, j)] = px1;
                                      if (ts.tiles[t].n == mu)
                                          im[square_letter(ts, t, i + 1, j)] = p1x;
                                  }
                              })),
                     {p11, pxx}});
    // Per-position label uniqueness, one recognizer per unordered label pair.
    for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = 1; j <= n; ++j)
            for (int d = 0; d < 4; ++d)
                for (std::uint32_t mu = 0; mu < ts.labels.size(); ++mu)
                    for (std::uint32_t nu = mu + 1; nu < ts.labels.size(); ++nu)
                        inst.recognizers.push_back(
                            {Morphism(inst.alphabet, mm, pairwise([&](std::vector<Elem>& im) {
                                          for (std::size_t t = 0; t < ts.tiles.size(); ++t) {
                                              if (tile_label(ts.tiles[t], d) == mu)
                                                  im[square_letter(ts, t, i, j)] = px1;
                                              if (tile_label(ts.tiles[t], d) == nu)
                                                  im[square_letter(ts, t, i, j)] = p1x;
                                          }
                                      })),
                             {p11, p1x, px1}});
    return inst;
}

inline Instance square_tiling_to_instance(const TilingSystem& ts) {
    return square_tiling_to_instance(ts, u1(), 1);
}

inline Word encode_square_tiling(const TilingSystem& ts, const Tiling& t) {
    if (t.rows != ts.width || t.cols != ts.width)
        fail("dimension_mismatch", "square encoding needs an n x n tiling");
    Word w;
    w.reserve(std::size_t(t.rows) * t.cols);
    for (std::uint32_t i = 1; i <= t.rows; ++i)
        for (std::uint32_t j = 1; j <= t.cols; ++j)
            w.push_back(square_letter(ts, t.at(i - 1, j - 1), i, j));
    return w;
}

// Rebuilds the grid from the letters present in the word; every position must
// be covered by exactly one tile.
inline Tiling decode_square_witness(const TilingSystem& ts, const Word& w) {
    const std::uint32_t n = ts.width;
    std::vector<std::optional<std::uint32_t>> grid(std::size_t(n) * n);
    for (Letter a : w) {
        std::uint32_t j = a % n;
        std::uint32_t i = (a / n) % n;
        std::uint32_t t = a / (n * n);
        if (t >= ts.tiles.size())
            fail("decode_error", "letter outside the reduction alphabet");
        auto& slot = grid[std::size_t(i) * n + j];
        if (slot && *slot != t)
            fail("decode_error", "position (" + std::to_string(i + 1) + "," +
                                     std::to_string(j + 1) + ") carries two tiles");
        slot = t;
    }
    Tiling out;
    out.rows = n;
    out.cols = n;
    out.grid.resize(std::size_t(n) * n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            const auto& slot = grid[std::size_t(i) * n + j];
            if (!slot)
                fail("decode_error", "position (" + std::to_string(i + 1) + "," +
                                         std::to_string(j + 1) + ") is missing");
            out.grid[std::size_t(i) * n + j] = *slot;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Corridor normalization and reduction.

struct NormalizeResult {
    TilingSystem system;
    std::vector<std::uint32_t> origin; // origin[new tile] = tile in the input system
};

namespace detail {

inline std::uint32_t fresh_label(TilingSystem& ts, std::uint32_t base) {
    std::string name = ts.labels[base] + "'";
    while (std::find(ts.labels.begin(), ts.labels.end(), name) != ts.labels.end())
        name += "'";
    ts.labels.push_back(name);
    return static_cast<std::uint32_t>(ts.labels.size() - 1);
}

// Duplicate every tile carrying label mu in the given direction; one copy is
// rewritten to mu2.
inline void duplicate_direction(TilingSystem& ts, std::vector<std::uint32_t>& origin,
                                std::uint32_t mu, std::uint32_t mu2, int dir) {
    std::vector<Tile> tiles;
    std::vector<std::uint32_t> org;
    auto get = [&](Tile& t, int d) -> std::uint32_t& {
        switch (d) {
        case 0: return t.w;
        case 1: return t.e;
        case 2: return t.s;
        default: return t.n;
        }
    };
    for (std::size_t i = 0; i < ts.tiles.size(); ++i) {
        tiles.push_back(ts.tiles[i]);
        org.push_back(origin[i]);
        if (get(ts.tiles[i], dir) == mu) {
            Tile copy = ts.tiles[i];
            get(copy, dir) = mu2;
            tiles.push_back(copy);
            org.push_back(origin[i]);
        }
    }
    ts.tiles = std::move(tiles);
    origin = std::move(org);
}

inline void remove_equal_pairs(TilingSystem& ts, std::vector<std::uint32_t>& origin,
                               std::uint32_t mu, std::uint32_t mu2, bool horizontal) {
    std::vector<Tile> tiles;
    std::vector<std::uint32_t> org;
    for (std::size_t i = 0; i < ts.tiles.size(); ++i) {
        const Tile& t = ts.tiles[i];
        std::uint32_t a = horizontal ? t.w : t.s;
        std::uint32_t b = horizontal ? t.e : t.n;
        if (a == b && (a == mu || a == mu2))
            continue;
        tiles.push_back(t);
        org.push_back(origin[i]);
    }
    ts.tiles = std::move(tiles);
    origin = std::move(org);
}

// Deterministic choice of a copy row for the first or bottom row: walk left
// to right keeping horizontal consistency, preferring copies whose vertical
// labels match the input tile (first rows look downward through the south
// label, bottom rows upward through the north label). Unprimed copies keep
// their input label indices, so plain index comparison detects priming.
inline std::vector<std::uint32_t> choose_row(const TilingSystem& norm,
                                             const std::vector<std::uint32_t>& origin,
                                             const TilingSystem& input,
                                             const std::vector<std::uint32_t>& row,
                                             bool is_first) {
    std::vector<std::uint32_t> out;
    std::optional<std::uint32_t> west_req;
    for (std::uint32_t j = 0; j < row.size(); ++j) {
        const Tile& orig = input.tiles[row[j]];
        std::vector<std::uint32_t> candidates;
        for (std::uint32_t t = 0; t < norm.tiles.size(); ++t)
            if (origin[t] == row[j])
                candidates.push_back(t);
        if (candidates.empty())
            fail("internal", "normalization removed every copy of a tile");
        auto key = [&](std::uint32_t t) {
            const Tile& c = norm.tiles[t];
            bool w_ok = !west_req || c.w == *west_req;
            int vertical = is_first ? (c.s != orig.s) : (c.n != orig.n);
            int east = c.e != orig.e;
            return std::tuple<int, int, int, std::uint32_t>(w_ok ? 0 : 1, vertical, east, t);
        };
        std::uint32_t best = candidates[0];
        for (std::uint32_t cand : candidates)
            if (key(cand) < key(best))
                best = cand;
        out.push_back(best);
        west_req = norm.tiles[best].e;
    }
    return out;
}

} // namespace detail

// Rewrites the system so no tile has equal west/east labels or equal
// south/north labels, via primed label copies; tiling solvability is
// preserved (each new tiling projects back by stripping primes).
inline NormalizeResult normalize_tiling(const TilingSystem& input) {
    input.check();
    TilingSystem ts = input;
    std::vector<std::uint32_t> origin(ts.tiles.size());
    for (std::uint32_t i = 0; i < origin.size(); ++i)
        origin[i] = i;
    for (int phase = 0; phase < 2; ++phase) {
        const bool horizontal = phase == 0;
        for (;;) {
            std::optional<std::uint32_t> defect;
            for (const Tile& t : ts.tiles) {
                std::uint32_t a = horizontal ? t.w : t.s;
                std::uint32_t b = horizontal ? t.e : t.n;
                if (a == b) {
                    defect = a;
                    break;
                }
            }
            if (!defect)
                break;
            std::uint32_t mu = *defect;
            std::uint32_t mu2 = detail::fresh_label(ts, mu);
            if (horizontal) {
                detail::duplicate_direction(ts, origin, mu, mu2, 0);
                detail::duplicate_direction(ts, origin, mu, mu2, 1);
            } else {
                detail::duplicate_direction(ts, origin, mu, mu2, 2);
                detail::duplicate_direction(ts, origin, mu, mu2, 3);
            }
            detail::remove_equal_pairs(ts, origin, mu, mu2, horizontal);
        }
    }
    ts.first = detail::choose_row(ts, origin, input, input.first, true);
    // A system whose bottom row equals its first row keeps that equality, so
    // single-row tilings survive normalization.
    ts.bottom = input.bottom == input.first
                    ? ts.first
                    : detail::choose_row(ts, origin, input, input.bottom, false);
    ts.check();
    return {std::move(ts), std::move(origin)};
}

// Strip primes: map a tiling of the normalized system back to the input.
inline Tiling project_tiling(const NormalizeResult& norm, const Tiling& t) {
    Tiling out = t;
    for (auto& cell : out.grid)
        cell = norm.origin[cell];
    return out;
}

inline std::string corridor_letter_name(std::size_t tile, std::uint32_t marker,
                                        std::uint32_t j) {
    return "t" + std::to_string(tile) + "m" + std::to_string(marker) + "c" + std::to_string(j);
}

inline Letter corridor_letter(const TilingSystem& ts, std::size_t tile, std::uint32_t marker,
                              std::uint32_t j) {
    // (tile, row marker 0/1/2, column), columns 1-based.
    return static_cast<Letter>((tile * 3 + marker) * ts.width + (j - 1));
}

inline std::vector<std::string> corridor_alphabet(const TilingSystem& ts) {
    std::vector<std::string> a;
    a.reserve(ts.tiles.size() * 3 * ts.width);
    for (std::size_t t = 0; t < ts.tiles.size(); ++t)
        for (std::uint32_t marker = 0; marker < 3; ++marker)
            for (std::uint32_t j = 1; j <= ts.width; ++j)
                a.push_back(corridor_letter_name(t, marker, j));
    return a;
}

struct CorridorReduction {
    NormalizeResult norm;
    Instance instance;
    bool m1_shortcut = false; // single-row tilings handled without the vertical family
};

// Corridor tiling -> singleton-accepting instance over size-6 monoids. The
// generic construction captures tilings with at least two rows; systems whose
// first row equals the bottom row (and is horizontally consistent) already
// have a single-row tiling, so for those the vertical family, which would
// reject the doubled single-row encoding, is dropped.
inline CorridorReduction corridor_tiling_to_instance(const TilingSystem& input) {
    input.check();
    CorridorReduction out;
    out.m1_shortcut =
        input.first == input.bottom && row_horizontally_consistent(input, input.first);
    out.norm = normalize_tiling(input);
    const TilingSystem& ts = out.norm.system;
    const std::uint32_t n = ts.width;
    Instance& inst = out.instance;
    inst.alphabet = corridor_alphabet(ts);

    auto letters_where = [&](auto&& pred) {
        std::vector<Letter> set;
        for (std::size_t t = 0; t < ts.tiles.size(); ++t)
            for (std::uint32_t marker = 0; marker < 3; ++marker)
                for (std::uint32_t j = 1; j <= n; ++j)
                    if (pred(ts.tiles[t], marker, j))
                        set.push_back(corridor_letter(ts, t, marker, j));
        return set;
    };

    // First-occurrence and last-occurrence constraints per column.
    for (std::uint32_t j = 1; j <= n; ++j) {
        Lemma6Spec spec;
        spec.alphabet = inst.alphabet;
        spec.variant = Lemma6Variant::left;
        spec.b = {corridor_letter(ts, ts.first[j - 1], 0, j)};
        spec.d = letters_where([&](const Tile&, std::uint32_t marker, std::uint32_t col) {
            return col == j && marker > 0;
        });
        spec.e = letters_where([&](const Tile&, std::uint32_t, std::uint32_t col) {
            return col != j;
        });
        inst.recognizers.push_back(lemma6_recognizer(spec));
    }
    for (std::uint32_t j = 1; j <= n; ++j) {
        Lemma6Spec spec;
        spec.alphabet = inst.alphabet;
        spec.variant = Lemma6Variant::right;
        spec.c = {corridor_letter(ts, ts.bottom[j - 1], 2, j)};
        spec.d = letters_where([&](const Tile&, std::uint32_t marker, std::uint32_t col) {
            return col == j && marker < 2;
        });
        spec.e = letters_where([&](const Tile&, std::uint32_t, std::uint32_t col) {
            return col != j;
        });
        inst.recognizers.push_back(lemma6_recognizer(spec));
    }
    // Horizontal matching: east-mu letters must be followed by west-mu ones.
    for (std::uint32_t mu = 0; mu < ts.labels.size(); ++mu) {
        auto e_mu = letters_where([&](const Tile& t, std::uint32_t, std::uint32_t col) {
            return t.e == mu && col < n;
        });
        auto w_mu = letters_where([&](const Tile& t, std::uint32_t, std::uint32_t col) {
            return t.w == mu && col > 1;
        });
        Lemma6Spec spec;
        spec.alphabet = inst.alphabet;
        spec.variant = Lemma6Variant::block;
        spec.b = e_mu;
        spec.c = w_mu;
        std::vector<char> used(inst.alphabet.size(), 0);
        for (Letter a : e_mu)
            used[a] = 1;
        for (Letter a : w_mu)
            used[a] = 1;
        for (Letter a = 0; a < inst.alphabet.size(); ++a)
            if (!used[a])
                spec.d.push_back(a);
        inst.recognizers.push_back(lemma6_recognizer(spec));
    }
    // Vertical matching per column and label; dropped for single-row systems.
    if (!out.m1_shortcut) {
        for (std::uint32_t j = 1; j <= n; ++j)
            for (std::uint32_t mu = 0; mu < ts.labels.size(); ++mu) {
                auto s_mu = letters_where([&](const Tile& t, std::uint32_t marker,
                                              std::uint32_t col) {
                    return col == j && t.s == mu && marker < 2;
                });
                auto n_mu = letters_where([&](const Tile& t, std::uint32_t marker,
                                              std::uint32_t col) {
                    return col == j && t.n == mu && marker > 0;
                });
                Lemma6Spec spec;
                spec.alphabet = inst.alphabet;
                spec.variant = Lemma6Variant::block;
                spec.b = s_mu;
                spec.c = n_mu;
                std::vector<char> used(inst.alphabet.size(), 0);
                for (Letter a : s_mu)
                    used[a] = 1;
                for (Letter a : n_mu)
                    used[a] = 1;
                spec.d = letters_where([&](const Tile&, std::uint32_t, std::uint32_t col) {
                    return col == j;
                });
                std::erase_if(spec.d, [&](Letter a) { return used[a] != 0; });
                spec.e = letters_where([&](const Tile&, std::uint32_t, std::uint32_t col) {
                    return col != j;
                });
                inst.recognizers.push_back(lemma6_recognizer(spec));
            }
    }
    // Column sweep: words must cycle through columns 1..n.
    std::vector<std::vector<Letter>> columns;
    for (std::uint32_t j = 1; j <= n; ++j)
        columns.push_back(letters_where(
            [&](const Tile&, std::uint32_t, std::uint32_t col) { return col == j; }));
    for (Recognizer& r : lemma7_recognizers(inst.alphabet, columns))
        inst.recognizers.push_back(std::move(r));
    return out;
}

// Row-major encoding with the row marker 0 for the first row, 2 for the
// bottom row and 1 in between. A single-row tiling is emitted twice, once
// with marker 0 and once with marker 2.
inline Word encode_corridor_tiling(const TilingSystem& normalized, const Tiling& t) {
    if (t.cols != normalized.width)
        fail("dimension_mismatch", "tiling width does not match the system");
    Word w;
    auto emit_row = [&](std::uint32_t r, std::uint32_t marker) {
        for (std::uint32_t j = 1; j <= t.cols; ++j)
            w.push_back(corridor_letter(normalized, t.at(r, j - 1), marker, j));
    };
    if (t.rows == 1) {
        emit_row(0, 0);
        emit_row(0, 2);
        return w;
    }
    for (std::uint32_t r = 0; r < t.rows; ++r)
        emit_row(r, r == 0 ? 0 : (r == t.rows - 1 ? 2 : 1));
    return w;
}

// Rebuilds the grid from a word over the corridor alphabet: full sweeps of
// columns 1..n, first row marked 0, bottom row marked 2, interior rows 1.
inline Tiling decode_corridor_witness(const TilingSystem& normalized, const Word& w) {
    const std::uint32_t n = normalized.width;
    if (w.empty() || w.size() % n != 0)
        fail("decode_error", "word length is not a multiple of the width");
    const std::uint32_t rows = static_cast<std::uint32_t>(w.size() / n);
    Tiling out;
    out.rows = rows;
    out.cols = n;
    out.grid.resize(w.size());
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
        Letter a = w[pos];
        std::uint32_t j = a % n;
        std::uint32_t marker = (a / n) % 3;
        std::uint32_t tile = a / (3 * n);
        if (tile >= normalized.tiles.size())
            fail("decode_error", "letter outside the reduction alphabet");
        std::uint32_t r = static_cast<std::uint32_t>(pos / n);
        if (j != pos % n)
            fail("decode_error", "columns do not sweep 1..n");
        std::uint32_t expect = r == 0 ? 0 : (r == rows - 1 ? 2 : 1);
        if (marker != expect)
            fail("decode_error", "row marker " + std::to_string(marker) +
                                     " where " + std::to_string(expect) + " was expected");
        out.grid[pos] = tile;
    }
    return out;
}

} // namespace monisect
