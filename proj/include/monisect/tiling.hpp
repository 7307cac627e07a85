#pragma once

/// @file tiling.hpp
/// Tiling systems with west/east/south/north edge labels, the grid validity
/// check, and brute-force square and corridor solvers used as ground-truth
/// oracles for the hardness reductions.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monisect/error.hpp"

namespace monisect {

struct Tile {
    std::uint32_t w, e, s, n; // label indices
    bool operator==(const Tile&) const = default;
};

struct TilingSystem {
    std::vector<std::string> labels;
    std::vector<Tile> tiles;
    std::uint32_t width = 0;
    std::vector<std::uint32_t> first;  // tile indices, length == width
    std::vector<std::uint32_t> bottom; // tile indices, length == width

    void check() const {
        if (width == 0)
            fail("bad_tiling_system", "width must be positive");
        if (first.size() != width || bottom.size() != width)
            fail("bad_tiling_system", "first and bottom rows must have exactly width tiles");
        for (const Tile& t : tiles)
            if (t.w >= labels.size() || t.e >= labels.size() || t.s >= labels.size() ||
                t.n >= labels.size())
                fail("bad_tiling_system", "tile label out of range");
        for (std::size_t i = 0; i < tiles.size(); ++i)
            for (std::size_t j = i + 1; j < tiles.size(); ++j)
                if (tiles[i] == tiles[j])
                    fail("bad_tiling_system", "tiles form a set; duplicate label quadruple");
        for (std::uint32_t t : first)
            if (t >= tiles.size())
                fail("bad_tiling_system", "first-row tile out of range");
        for (std::uint32_t t : bottom)
            if (t >= tiles.size())
                fail("bad_tiling_system", "bottom-row tile out of range");
    }
};

struct Tiling {
    std::uint32_t rows = 0, cols = 0;
    std::vector<std::uint32_t> grid; // row-major tile indices

    std::uint32_t at(std::uint32_t r, std::uint32_t c) const { return grid[r * cols + c]; }
};

struct TilingViolation {
    int condition;            // 1: first row, 2: horizontal, 3: vertical, 4: bottom row
    std::uint32_t row, col;   // 1-based coordinates of the offending cell
};

inline bool row_horizontally_consistent(const TilingSystem& ts,
                                        const std::vector<std::uint32_t>& row) {
    for (std::size_t j = 0; j + 1 < row.size(); ++j)
        if (ts.tiles[row[j]].e != ts.tiles[row[j + 1]].w)
            return false;
    return true;
}

// First violated condition with coordinates, or nothing if the grid is a
// valid m-tiling.
inline std::optional<TilingViolation> check_tiling(const TilingSystem& ts, const Tiling& t) {
    ts.check();
    if (t.cols != ts.width || t.rows == 0 || t.grid.size() != std::size_t(t.rows) * t.cols)
        fail("dimension_mismatch", "grid does not match the system width");
    for (std::uint32_t v : t.grid)
        if (v >= ts.tiles.size())
            fail("dimension_mismatch", "grid tile out of range");
    for (std::uint32_t j = 0; j < t.cols; ++j)
        if (t.at(0, j) != ts.first[j])
            return TilingViolation{1, 1, j + 1};
    for (std::uint32_t i = 0; i < t.rows; ++i)
        for (std::uint32_t j = 0; j + 1 < t.cols; ++j)
            if (ts.tiles[t.at(i, j)].e != ts.tiles[t.at(i, j + 1)].w)
                return TilingViolation{2, i + 1, j + 1};
    for (std::uint32_t i = 0; i + 1 < t.rows; ++i)
        for (std::uint32_t j = 0; j < t.cols; ++j)
            if (ts.tiles[t.at(i, j)].s != ts.tiles[t.at(i + 1, j)].n)
                return TilingViolation{3, i + 1, j + 1};
    for (std::uint32_t j = 0; j < t.cols; ++j)
        if (t.at(t.rows - 1, j) != ts.bottom[j])
            return TilingViolation{4, t.rows, j + 1};
    return std::nullopt;
}

// Backtracking search for an n-tiling (rows = width). First and bottom rows
// are forced; interior cells are tried in input tile order, so the answer is
// deterministic. `budget` caps the number of cell placements.
inline std::optional<Tiling> solve_square(const TilingSystem& ts,
                                          std::uint64_t budget = 10'000'000) {
    ts.check();
    const std::uint32_t n = ts.width;
    Tiling t;
    t.rows = n;
    t.cols = n;
    t.grid.assign(std::size_t(n) * n, 0);
    for (std::uint32_t j = 0; j < n; ++j) {
        t.grid[j] = ts.first[j];
        t.grid[std::size_t(n - 1) * n + j] = ts.bottom[j];
    }
    if (!row_horizontally_consistent(ts, ts.first) || !row_horizontally_consistent(ts, ts.bottom))
        return std::nullopt;
    if (n == 1)
        return ts.first == ts.bottom ? std::optional<Tiling>(t) : std::nullopt;

    auto fits = [&](std::uint32_t r, std::uint32_t c, std::uint32_t tile) {
        const Tile& x = ts.tiles[tile];
        if (c > 0 && ts.tiles[t.at(r, c - 1)].e != x.w)
            return false;
        if (ts.tiles[t.at(r - 1, c)].s != x.n)
            return false;
        if (r == n - 2 && x.s != ts.tiles[t.at(n - 1, c)].n)
            return false;
        return true;
    };
    auto bottom_ok = [&]() {
        for (std::uint32_t j = 0; j < n; ++j)
            if (ts.tiles[t.at(n - 2, j)].s != ts.tiles[t.at(n - 1, j)].n)
                return false;
        return true;
    };
    // Interior cells in row-major order over rows 1..n-2 (0-based); the first
    // and last rows are forced.
    const std::uint32_t first_cell = n, last_cell = std::uint32_t(n) * (n - 1); // exclusive
    if (first_cell == last_cell)
        return bottom_ok() ? std::optional<Tiling>(t) : std::nullopt;
    std::uint64_t used = 0;
    struct Frame {
        std::uint32_t cell;
        std::uint32_t next_tile;
    };
    std::vector<Frame> stack;
    stack.push_back({first_cell, 0});
    while (!stack.empty()) {
        Frame& f = stack.back();
        std::uint32_t r = f.cell / n, c = f.cell % n;
        bool placed = false;
        while (f.next_tile < ts.tiles.size()) {
            std::uint32_t cand = f.next_tile++;
            if (++used > budget)
                fail("budget_exceeded", "square solver budget exhausted");
            if (!fits(r, c, cand))
                continue;
            t.grid[f.cell] = cand;
            placed = true;
            break;
        }
        if (!placed) {
            stack.pop_back();
            continue;
        }
        if (f.cell + 1 == last_cell)
            return t;
        stack.push_back({f.cell + 1, 0});
    }
    return std::nullopt;
}

// BFS over horizontally consistent rows from the first row to the bottom row,
// one edge per vertically consistent pair; returns a tiling with the minimal
// number of rows. Node count is bounded by |T|^n.
inline std::optional<Tiling> solve_corridor(const TilingSystem& ts) {
    ts.check();
    const std::uint32_t n = ts.width;
    if (!row_horizontally_consistent(ts, ts.first))
        return std::nullopt;
    // Enumerate all horizontally consistent rows.
    std::vector<std::vector<std::uint32_t>> rows;
    std::vector<std::uint32_t> cur(n, 0);
    std::size_t col = 0;
    // Iterative product with consistency pruning.
    std::vector<std::uint32_t> choice(n, 0);
    for (;;) {
        if (col == n) {
            rows.push_back(cur);
            --col;
            ++choice[col];
        } else if (choice[col] == ts.tiles.size()) {
            if (col == 0)
                break;
            choice[col] = 0;
            --col;
            ++choice[col];
        } else {
            std::uint32_t cand = choice[col];
            cur[col] = cand;
            if (col == 0 || ts.tiles[cur[col - 1]].e == ts.tiles[cand].w) {
                ++col;
                if (col < n)
                    choice[col] = 0;
            } else {
                ++choice[col];
            }
        }
    }
    std::map<std::vector<std::uint32_t>, std::uint32_t> id;
    for (std::uint32_t i = 0; i < rows.size(); ++i)
        id.emplace(rows[i], i);
    auto fit = id.find(ts.first);
    if (fit == id.end())
        return std::nullopt;
    auto vertical_ok = [&](const std::vector<std::uint32_t>& above,
                           const std::vector<std::uint32_t>& below) {
        for (std::uint32_t j = 0; j < n; ++j)
            if (ts.tiles[above[j]].s != ts.tiles[below[j]].n)
                return false;
        return true;
    };
    std::vector<std::int64_t> parent(rows.size(), -2); // -2 unseen, -1 root
    std::vector<std::uint32_t> frontier{fit->second};
    parent[fit->second] = -1;
    std::optional<std::uint32_t> goal;
    if (rows[fit->second] == ts.bottom)
        goal = fit->second;
    while (!goal && !frontier.empty()) {
        std::vector<std::uint32_t> next;
        for (std::uint32_t u : frontier) {
            for (std::uint32_t v = 0; v < rows.size() && !goal; ++v) {
                if (parent[v] != -2 || !vertical_ok(rows[u], rows[v]))
                    continue;
                parent[v] = u;
                if (rows[v] == ts.bottom)
                    goal = v;
                next.push_back(v);
            }
            if (goal)
                break;
        }
        frontier = std::move(next);
    }
    if (!goal)
        return std::nullopt;
    std::vector<std::uint32_t> path;
    for (std::int64_t v = *goal; v != -1; v = parent[v])
        path.push_back(static_cast<std::uint32_t>(v));
    Tiling t;
    t.rows = static_cast<std::uint32_t>(path.size());
    t.cols = n;
    t.grid.reserve(std::size_t(t.rows) * n);
    for (auto it = path.rbegin(); it != path.rend(); ++it)
        t.grid.insert(t.grid.end(), rows[*it].begin(), rows[*it].end());
    return t;
}

} // namespace monisect
