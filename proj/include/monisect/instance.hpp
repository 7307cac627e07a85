#pragma once

/// @file instance.hpp
/// Intersection instances: morphism/accepting-set pairs over a shared
/// alphabet, the explicit-state BFS non-emptiness decider over image tuples,
/// and word/SLP membership verification.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "monisect/error.hpp"
#include "monisect/morphism.hpp"
#include "monisect/slp.hpp"

namespace monisect {

struct Recognizer {
    Morphism h;
    std::vector<Elem> accepting; // element indices in h.target
};

struct Instance {
    std::vector<std::string> alphabet;
    std::vector<Recognizer> recognizers;

    void check() const {
        if (recognizers.empty())
            fail("bad_instance", "an instance needs at least one recognizer");
        for (const Recognizer& r : recognizers) {
            if (r.h.alphabet != alphabet)
                fail("alphabet_mismatch", "all morphisms must share the instance alphabet");
            for (Elem p : r.accepting)
                if (p >= r.h.target.size())
                    fail("index_out_of_range", "accepting element out of range");
        }
    }

    // N, the summed monoid sizes.
    std::size_t total_size() const {
        std::size_t n = 0;
        for (const Recognizer& r : recognizers)
            n += r.h.target.size();
        return n;
    }
};

struct SolveStats {
    std::uint64_t states_explored = 0;
};

namespace detail {

struct TupleHash {
    std::size_t operator()(const std::vector<Elem>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (Elem e : v) {
            h ^= e;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace detail

inline bool member_word(const Instance& inst, const Word& w) {
    for (const Recognizer& r : inst.recognizers) {
        Elem img = r.h.eval(w);
        bool in = false;
        for (Elem p : r.accepting)
            if (p == img) {
                in = true;
                break;
            }
        if (!in)
            return false;
    }
    return true;
}

inline bool member_slp(const Instance& inst, const Slp& s) {
    for (const Recognizer& r : inst.recognizers) {
        Elem img = eval_morphism(s, r.h);
        bool in = false;
        for (Elem p : r.accepting)
            if (p == img) {
                in = true;
                break;
            }
        if (!in)
            return false;
    }
    return true;
}

// BFS over tuples (h_1(w), ..., h_k(w)) from the identity tuple; accepts when
// every coordinate lies in its accepting set. Returns the
// length-lexicographically least witness, or nothing once all reachable
// tuples are exhausted. Budget exhaustion is an error, never an "empty".
inline std::optional<Word> nonempty_bfs(const Instance& inst,
                                        std::uint64_t state_budget = 10'000'000,
                                        SolveStats* stats = nullptr) {
    inst.check();
    const std::size_t k = inst.recognizers.size();
    std::vector<std::vector<char>> accept_mask(k);
    for (std::size_t i = 0; i < k; ++i) {
        accept_mask[i].assign(inst.recognizers[i].h.target.size(), 0);
        for (Elem p : inst.recognizers[i].accepting)
            accept_mask[i][p] = 1;
    }
    auto accepts = [&](const std::vector<Elem>& tuple) {
        for (std::size_t i = 0; i < k; ++i)
            if (!accept_mask[i][tuple[i]])
                return false;
        return true;
    };
    // Dead-state pruning: skip any tuple where some coordinate can no longer
    // reach its accepting set by right multiplication. Sound for emptiness and
    // does not disturb the least witness, since accepted extensions only pass
    // through live tuples.
    std::vector<std::vector<char>> live(k);
    for (std::size_t i = 0; i < k; ++i) {
        const Morphism& h = inst.recognizers[i].h;
        live[i] = accept_mask[i];
        for (bool grew = true; grew;) {
            grew = false;
            for (Elem m = 0; m < h.target.size(); ++m) {
                if (live[i][m])
                    continue;
                for (Letter a = 0; a < inst.alphabet.size(); ++a)
                    if (live[i][h.target.mul(m, h.images[a])]) {
                        live[i][m] = 1;
                        grew = true;
                        break;
                    }
            }
        }
    }
    auto alive = [&](const std::vector<Elem>& tuple) {
        for (std::size_t i = 0; i < k; ++i)
            if (!live[i][tuple[i]])
                return false;
        return true;
    };

    std::vector<Elem> start(k);
    for (std::size_t i = 0; i < k; ++i)
        start[i] = inst.recognizers[i].h.target.identity();

    std::unordered_map<std::vector<Elem>, std::uint32_t, detail::TupleHash> seen;
    std::vector<std::pair<std::int64_t, Letter>> back; // parent state id, letter
    std::vector<std::vector<Elem>> states;

    auto reconstruct = [&](std::uint32_t id) {
        Word w;
        std::int64_t cur = id;
        while (back[cur].first != -2) {
            w.push_back(back[cur].second);
            cur = back[cur].first;
        }
        std::reverse(w.begin(), w.end());
        return w;
    };

    seen.emplace(start, 0);
    states.push_back(start);
    back.emplace_back(-2, 0); // root marker
    if (stats)
        stats->states_explored = 1;
    if (accepts(start))
        return Word{};
    if (!alive(start))
        return std::nullopt;

    std::size_t head = 0;
    while (head < states.size()) {
        std::vector<Elem> cur = states[head];
        for (Letter a = 0; a < inst.alphabet.size(); ++a) {
            std::vector<Elem> nxt(k);
            for (std::size_t i = 0; i < k; ++i)
                nxt[i] = inst.recognizers[i].h.target.mul(cur[i],
                                                          inst.recognizers[i].h.images[a]);
            if (!alive(nxt))
                continue;
            auto [it, fresh] = seen.emplace(nxt, static_cast<std::uint32_t>(states.size()));
            if (!fresh)
                continue;
            if (states.size() >= state_budget)
                fail("budget_exceeded",
                     "state budget " + std::to_string(state_budget) + " exhausted");
            states.push_back(std::move(nxt));
            back.emplace_back(static_cast<std::int64_t>(head), a);
            if (stats)
                stats->states_explored = states.size();
            if (accepts(states.back()))
                return reconstruct(static_cast<std::uint32_t>(states.size() - 1));
        }
        ++head;
    }
    return std::nullopt;
}

} // namespace monisect
