#pragma once

/// @file models.hpp
/// The two neighbor formalisms: DFAs with transition monoids, and
/// transformation monoids with membership testing. Used as reduction targets
/// and as validation oracles for the intersection solver.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monisect/error.hpp"
#include "monisect/instance.hpp"
#include "monisect/monoid.hpp"
#include "monisect/morphism.hpp"

namespace monisect {

struct Dfa {
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    std::uint32_t initial = 0;
    std::vector<std::uint32_t> accepting;
    std::vector<std::uint32_t> delta; // states x alphabet, row-major

    std::uint32_t step(std::uint32_t q, Letter a) const { return delta[q * alphabet.size() + a]; }

    void check() const {
        if (states.empty())
            fail("bad_dfa", "a DFA needs at least one state");
        if (delta.size() != states.size() * alphabet.size())
            fail("bad_dfa", "transition table must be total");
        for (std::uint32_t q : delta)
            if (q >= states.size())
                fail("bad_dfa", "transition target out of range");
        if (initial >= states.size())
            fail("bad_dfa", "initial state out of range");
        for (std::uint32_t q : accepting)
            if (q >= states.size())
                fail("bad_dfa", "accepting state out of range");
    }

    bool accepts(const Word& w) const {
        std::uint32_t q = initial;
        for (Letter a : w) {
            if (a >= alphabet.size())
                fail("unknown_letter", "letter index outside alphabet");
            q = step(q, a);
        }
        for (std::uint32_t f : accepting)
            if (f == q)
                return true;
        return false;
    }
};

// Total function on {0, ..., n-1}.
struct Transformation {
    std::uint32_t n = 0;
    std::vector<std::uint32_t> map;

    void check() const {
        if (map.size() != n)
            fail("bad_transformation", "map must cover the whole domain");
        for (std::uint32_t x : map)
            if (x >= n)
                fail("bad_transformation", "image out of range");
    }

    static Transformation id(std::uint32_t n) {
        Transformation t;
        t.n = n;
        t.map.resize(n);
        for (std::uint32_t i = 0; i < n; ++i)
            t.map[i] = i;
        return t;
    }

    // this followed by g (x . this . g), matching the right action of words.
    Transformation then(const Transformation& g) const {
        Transformation r;
        r.n = n;
        r.map.resize(n);
        for (std::uint32_t x = 0; x < n; ++x)
            r.map[x] = g.map[map[x]];
        return r;
    }

    bool operator==(const Transformation&) const = default;
    bool operator<(const Transformation& o) const { return map < o.map; }
};

// States of the automaton are the monoid elements, the initial state is the
// identity, transitions multiply by letter images on the right; the language
// is exactly the preimage of the accepting set.
inline Dfa monoid_to_dfa(const Morphism& h, const std::vector<Elem>& accepting) {
    Dfa d;
    d.states = h.target.names();
    d.alphabet = h.alphabet;
    d.initial = h.target.identity();
    for (Elem p : accepting) {
        if (p >= h.target.size())
            fail("index_out_of_range", "accepting element out of range");
        d.accepting.push_back(p);
    }
    d.delta.resize(d.states.size() * d.alphabet.size());
    for (Elem m = 0; m < h.target.size(); ++m)
        for (Letter a = 0; a < h.alphabet.size(); ++a)
            d.delta[m * d.alphabet.size() + a] = h.target.mul(m, h.images[a]);
    return d;
}

// Product-automaton BFS with deduplication; returns the length-lex least word
// accepted by every DFA, or nothing. Never reports empty on budget exhaustion.
inline std::optional<Word> dfa_intersection_nonempty(const std::vector<Dfa>& dfas,
                                                     std::uint64_t state_budget = 10'000'000,
                                                     SolveStats* stats = nullptr) {
    if (dfas.empty())
        fail("bad_instance", "need at least one DFA");
    for (const Dfa& d : dfas) {
        d.check();
        if (d.alphabet != dfas[0].alphabet)
            fail("alphabet_mismatch", "all DFAs must share one alphabet");
    }
    const std::size_t k = dfas.size();
    const std::size_t sigma = dfas[0].alphabet.size();
    std::vector<std::vector<char>> accept_mask(k);
    for (std::size_t i = 0; i < k; ++i) {
        accept_mask[i].assign(dfas[i].states.size(), 0);
        for (std::uint32_t q : dfas[i].accepting)
            accept_mask[i][q] = 1;
    }
    auto accepts = [&](const std::vector<Elem>& tuple) {
        for (std::size_t i = 0; i < k; ++i)
            if (!accept_mask[i][tuple[i]])
                return false;
        return true;
    };
    // Dead-state pruning, as in the image-tuple search.
    std::vector<std::vector<char>> live(k);
    for (std::size_t i = 0; i < k; ++i) {
        live[i] = accept_mask[i];
        for (bool grew = true; grew;) {
            grew = false;
            for (std::uint32_t q = 0; q < dfas[i].states.size(); ++q) {
                if (live[i][q])
                    continue;
                for (Letter a = 0; a < sigma; ++a)
                    if (live[i][dfas[i].step(q, a)]) {
                        live[i][q] = 1;
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
        start[i] = dfas[i].initial;
    std::unordered_map<std::vector<Elem>, std::uint32_t, detail::TupleHash> seen;
    std::vector<std::vector<Elem>> states{start};
    std::vector<std::pair<std::int64_t, Letter>> back{{-2, 0}};
    seen.emplace(start, 0);
    if (stats)
        stats->states_explored = 1;
    if (accepts(start))
        return Word{};
    if (!alive(start))
        return std::nullopt;
    std::size_t head = 0;
    while (head < states.size()) {
        std::vector<Elem> cur = states[head];
        for (Letter a = 0; a < sigma; ++a) {
            std::vector<Elem> nxt(k);
            for (std::size_t i = 0; i < k; ++i)
                nxt[i] = dfas[i].step(cur[i], a);
            if (!alive(nxt))
                continue;
            auto [it, fresh] = seen.emplace(nxt, static_cast<std::uint32_t>(states.size()));
            if (!fresh)
                continue;
            if (states.size() >= state_budget)
                fail("budget_exceeded", "state budget exhausted");
            states.push_back(std::move(nxt));
            back.emplace_back(static_cast<std::int64_t>(head), a);
            if (stats)
                stats->states_explored = states.size();
            if (accepts(states.back())) {
                Word w;
                std::int64_t cur2 = static_cast<std::int64_t>(states.size()) - 1;
                while (back[cur2].first != -2) {
                    w.push_back(back[cur2].second);
                    cur2 = back[cur2].first;
                }
                std::reverse(w.begin(), w.end());
                return w;
            }
        }
        ++head;
    }
    return std::nullopt;
}

struct TransitionMonoidResult {
    Monoid monoid;
    Morphism morphism;                     // letter -> element of the closure
    std::vector<Transformation> elements;  // aligned with monoid elements
};

namespace detail {

inline std::string transformation_name(const Transformation& t) {
    std::string s = "[";
    for (std::uint32_t i = 0; i < t.n; ++i) {
        if (i)
            s += ",";
        s += std::to_string(t.map[i]);
    }
    return s + "]";
}

// Closure of the generators under composition, presented as an abstract
// monoid; elements are named by their underlying transformation.
inline TransitionMonoidResult close_transformations(const std::vector<std::string>& alphabet,
                                                    const std::vector<Transformation>& gens,
                                                    std::size_t cap) {
    if (gens.size() != alphabet.size())
        fail("bad_transformation", "one generator per letter expected");
    std::uint32_t n = gens.empty() ? 1 : gens[0].n;
    for (const Transformation& g : gens) {
        g.check();
        if (g.n != n)
            fail("dimension_mismatch", "generators act on different sets");
    }
    std::vector<Transformation> elems{Transformation::id(n)};
    std::map<std::vector<std::uint32_t>, Elem> pos{{elems[0].map, 0}};
    for (std::size_t head = 0; head < elems.size(); ++head)
        for (const Transformation& g : gens) {
            Transformation t = elems[head].then(g);
            if (pos.emplace(t.map, static_cast<Elem>(elems.size())).second) {
                if (elems.size() >= cap)
                    fail("cap_exceeded", "transformation closure cap " + std::to_string(cap) +
                                             " exceeded");
                elems.push_back(std::move(t));
            }
        }
    const std::size_t m = elems.size();
    std::vector<std::string> names;
    names.reserve(m);
    for (const Transformation& t : elems)
        names.push_back(transformation_name(t));
    std::vector<Elem> table(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            table[i * m + j] = pos.at(elems[i].then(elems[j]).map);
    Monoid mon(std::move(names), 0, std::move(table), Monoid::unchecked);
    std::vector<Elem> images;
    images.reserve(gens.size());
    for (const Transformation& g : gens)
        images.push_back(pos.at(g.map));
    Morphism h(alphabet, mon, std::move(images));
    return {std::move(mon), std::move(h), std::move(elems)};
}

} // namespace detail

// The monoid generated by the action of the letters on the DFA's states.
inline TransitionMonoidResult transition_monoid(const Dfa& d, std::size_t cap = 1024) {
    d.check();
    std::vector<Transformation> gens;
    gens.reserve(d.alphabet.size());
    for (Letter a = 0; a < d.alphabet.size(); ++a) {
        Transformation t;
        t.n = static_cast<std::uint32_t>(d.states.size());
        t.map.resize(t.n);
        for (std::uint32_t q = 0; q < t.n; ++q)
            t.map[q] = d.step(q, a);
        gens.push_back(std::move(t));
    }
    return detail::close_transformations(d.alphabet, gens, cap);
}

inline TransitionMonoidResult transformation_monoid(const std::vector<std::string>& alphabet,
                                                    const std::vector<Transformation>& gens,
                                                    std::size_t cap = 100000) {
    return detail::close_transformations(alphabet, gens, cap);
}

struct TransformationInstance {
    std::uint32_t domain = 0;
    std::vector<Transformation> generators; // aligned with the instance alphabet
    Transformation target;
};

// Rebuilds a singleton-accepting instance as a transformation-membership
// question: the domain is the disjoint union of the monoids, each letter acts
// blockwise by right multiplication, and the target maps every block by its
// accepted element.
inline TransformationInstance instance_to_transformation(const Instance& inst) {
    inst.check();
    std::uint32_t domain = 0;
    std::vector<std::uint32_t> offset;
    for (const Recognizer& r : inst.recognizers) {
        if (r.accepting.size() != 1)
            fail("non_singleton_accepting",
                 "every accepting set must have exactly one element");
        offset.push_back(domain);
        domain += static_cast<std::uint32_t>(r.h.target.size());
    }
    TransformationInstance out;
    out.domain = domain;
    for (Letter a = 0; a < inst.alphabet.size(); ++a) {
        Transformation f;
        f.n = domain;
        f.map.resize(domain);
        for (std::size_t i = 0; i < inst.recognizers.size(); ++i) {
            const Morphism& h = inst.recognizers[i].h;
            for (Elem m = 0; m < h.target.size(); ++m)
                f.map[offset[i] + m] = offset[i] + h.target.mul(m, h.images[a]);
        }
        out.generators.push_back(std::move(f));
    }
    out.target.n = domain;
    out.target.map.resize(domain);
    for (std::size_t i = 0; i < inst.recognizers.size(); ++i) {
        const Morphism& h = inst.recognizers[i].h;
        Elem p = inst.recognizers[i].accepting[0];
        for (Elem m = 0; m < h.target.size(); ++m)
            out.target.map[offset[i] + m] = offset[i] + h.target.mul(m, p);
    }
    return out;
}

inline std::vector<Transformation> transformation_closure(const std::vector<Transformation>& gens,
                                                          std::size_t cap = 100000) {
    if (gens.empty())
        fail("bad_transformation", "need at least one generator");
    std::uint32_t n = gens[0].n;
    std::vector<Transformation> elems{Transformation::id(n)};
    std::map<std::vector<std::uint32_t>, Elem> pos{{elems[0].map, 0}};
    for (std::size_t head = 0; head < elems.size(); ++head)
        for (const Transformation& g : gens) {
            if (g.n != n)
                fail("dimension_mismatch", "generators act on different sets");
            Transformation t = elems[head].then(g);
            if (pos.emplace(t.map, static_cast<Elem>(elems.size())).second) {
                if (elems.size() >= cap)
                    fail("cap_exceeded", "transformation closure cap exceeded");
                elems.push_back(std::move(t));
            }
        }
    return elems;
}

// Length-lex least generator word composing to g, or nothing; the identity is
// reached by the empty word.
inline std::optional<Word> transformation_membership(const Transformation& g,
                                                     const std::vector<Transformation>& gens,
                                                     std::size_t cap = 100000) {
    if (gens.empty())
        fail("bad_transformation", "need at least one generator");
    std::uint32_t n = gens[0].n;
    g.check();
    if (g.n != n)
        fail("dimension_mismatch", "target acts on a different set");
    std::vector<Transformation> elems{Transformation::id(n)};
    std::map<std::vector<std::uint32_t>, Elem> pos{{elems[0].map, 0}};
    std::vector<std::pair<std::int64_t, Letter>> back{{-2, 0}};
    auto reconstruct = [&](std::int64_t id) {
        Word w;
        while (back[id].first != -2) {
            w.push_back(back[id].second);
            id = back[id].first;
        }
        std::reverse(w.begin(), w.end());
        return w;
    };
    if (elems[0] == g)
        return Word{};
    for (std::size_t head = 0; head < elems.size(); ++head)
        for (Letter a = 0; a < gens.size(); ++a) {
            Transformation t = elems[head].then(gens[a]);
            if (!pos.emplace(t.map, static_cast<Elem>(elems.size())).second)
                continue;
            if (elems.size() >= cap)
                fail("cap_exceeded", "transformation closure cap exceeded");
            bool hit = t == g;
            elems.push_back(std::move(t));
            back.emplace_back(static_cast<std::int64_t>(head), a);
            if (hit)
                return reconstruct(static_cast<std::int64_t>(elems.size()) - 1);
        }
    return std::nullopt;
}

} // namespace monisect
