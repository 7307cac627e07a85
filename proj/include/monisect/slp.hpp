#pragma once

/// @file slp.hpp
/// Straight-line programs: acyclic grammars producing a single word. Supports
/// validation, size and expansion-length accounting, guarded expansion,
/// morphism evaluation in one bottom-up pass, the binary power construction,
/// and concatenation with collision-free renaming.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "monisect/bigint.hpp"
#include "monisect/error.hpp"
#include "monisect/morphism.hpp"

namespace monisect {

struct Slp {
    struct Sym {
        bool is_var;
        std::uint32_t idx; // letter index or variable index

        static Sym term(std::uint32_t i) { return {false, i}; }
        static Sym var(std::uint32_t i) { return {true, i}; }
        bool operator==(const Sym&) const = default;
    };

    std::vector<std::string> alphabet;
    std::vector<std::string> variables;   // names; construction keeps this topological
    std::vector<std::vector<Sym>> rules;  // one rule per variable
    std::uint32_t start = 0;
};

// Topological order (used variables before users). Throws on cycles and on
// out-of-range symbol references.
inline std::vector<std::uint32_t> topological_order(const Slp& s) {
    const std::size_t n = s.variables.size();
    if (s.rules.size() != n)
        fail("bad_slp", "every variable needs exactly one rule");
    if (s.start >= n)
        fail("undeclared_symbol", "start variable out of range");
    std::vector<std::uint8_t> state(n, 0); // 0 fresh, 1 on stack, 2 done
    std::vector<std::uint32_t> order;
    order.reserve(n);
    // Iterative DFS over all variables.
    std::vector<std::pair<std::uint32_t, std::size_t>> stack;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (state[root] == 2)
            continue;
        stack.emplace_back(root, 0);
        state[root] = 1;
        while (!stack.empty()) {
            auto& [v, pos] = stack.back();
            if (pos == s.rules[v].size()) {
                state[v] = 2;
                order.push_back(v);
                stack.pop_back();
                continue;
            }
            const Slp::Sym& sym = s.rules[v][pos++];
            if (!sym.is_var) {
                if (sym.idx >= s.alphabet.size())
                    fail("undeclared_symbol", "letter index out of range in rule of " +
                                                  s.variables[v]);
                continue;
            }
            if (sym.idx >= n)
                fail("undeclared_symbol", "variable index out of range in rule of " +
                                              s.variables[v]);
            if (state[sym.idx] == 1)
                fail("cycle", "variable " + s.variables[sym.idx] + " depends on itself");
            if (state[sym.idx] == 0) {
                state[sym.idx] = 1;
                stack.emplace_back(sym.idx, 0);
            }
        }
    }
    return order;
}

inline void validate(const Slp& s) {
    if (s.variables.empty())
        fail("bad_slp", "an SLP needs at least one variable");
    topological_order(s);
}

inline std::size_t slp_size(const Slp& s) {
    std::size_t total = 0;
    for (const auto& r : s.rules)
        total += r.size();
    return total;
}

inline BigUint expanded_length(const Slp& s) {
    auto order = topological_order(s);
    std::vector<BigUint> len(s.variables.size());
    for (std::uint32_t v : order) {
        BigUint l;
        for (const auto& sym : s.rules[v])
            l = l + (sym.is_var ? len[sym.idx] : BigUint(1));
        len[v] = std::move(l);
    }
    return len[s.start];
}

// val(S), refused when longer than `limit` (callers wanting images of huge
// words must use eval_morphism instead).
inline Word expand(const Slp& s, std::uint64_t limit) {
    if (expanded_length(s) > BigUint(limit))
        fail("limit_exceeded",
             "expansion longer than limit " + std::to_string(limit));
    topological_order(s); // validity
    Word out;
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{s.start, 0}};
    while (!stack.empty()) {
        auto& [v, pos] = stack.back();
        if (pos == s.rules[v].size()) {
            stack.pop_back();
            continue;
        }
        const Slp::Sym& sym = s.rules[v][pos++];
        if (sym.is_var)
            stack.emplace_back(sym.idx, 0);
        else
            out.push_back(sym.idx);
    }
    return out;
}

// h(val(S)) in one pass per variable, never expanding. The SLP alphabet must
// be contained (by name) in the morphism's alphabet.
inline Elem eval_morphism(const Slp& s, const Morphism& h) {
    std::vector<Elem> letter_image(s.alphabet.size());
    for (std::uint32_t a = 0; a < s.alphabet.size(); ++a) {
        auto idx = h.letter_index(s.alphabet[a]);
        if (!idx)
            fail("unknown_letter", "letter " + s.alphabet[a] + " not in morphism alphabet");
        letter_image[a] = h.images[*idx];
    }
    auto order = topological_order(s);
    std::vector<Elem> val(s.variables.size(), h.target.identity());
    for (std::uint32_t v : order) {
        Elem acc = h.target.identity();
        for (const auto& sym : s.rules[v])
            acc = h.target.mul(acc, sym.is_var ? val[sym.idx] : letter_image[sym.idx]);
        val[v] = acc;
    }
    return val[s.start];
}

inline Slp slp_literal(std::vector<std::string> alphabet, const Word& w) {
    Slp s;
    s.alphabet = std::move(alphabet);
    std::vector<Slp::Sym> rule;
    rule.reserve(w.size());
    for (Letter a : w) {
        if (a >= s.alphabet.size())
            fail("unknown_letter", "letter index outside alphabet");
        rule.push_back(Slp::Sym::term(a));
    }
    s.variables = {"X0"};
    s.rules = {std::move(rule)};
    s.start = 0;
    return s;
}

// val(result) = val(s)^e via the binary odd/even chain; adds at most
// 4*floor(log2 e) + 2 to the size for e >= 1. e = 0 yields the empty-word SLP.
inline Slp slp_power(const Slp& s, const BigUint& e) {
    validate(s);
    if (e.is_zero())
        return slp_literal(s.alphabet, {});
    Slp out;
    out.alphabet = s.alphabet;
    out.variables.reserve(s.variables.size() + 2 * e.bit_length() + 2);
    for (std::uint32_t v = 0; v < s.variables.size(); ++v)
        out.variables.push_back("X" + std::to_string(v));
    out.rules = s.rules;
    std::uint32_t old_start = s.start;

    // Record the descent from e to 0, then build the chain bottom-up.
    enum class Step { odd, even };
    std::vector<Step> steps;
    BigUint i = e;
    while (!i.is_zero()) {
        if (i.is_odd()) {
            steps.push_back(Step::odd);
            i.decrement();
        } else {
            steps.push_back(Step::even);
            i.halve();
        }
    }
    auto add_var = [&out](std::vector<Slp::Sym> rule) {
        out.variables.push_back("X" + std::to_string(out.variables.size()));
        out.rules.push_back(std::move(rule));
        return static_cast<std::uint32_t>(out.variables.size() - 1);
    };
    std::uint32_t cur = add_var({}); // X_0 -> epsilon
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        if (*it == Step::odd)
            cur = add_var({Slp::Sym::var(cur), Slp::Sym::var(old_start)});
        else
            cur = add_var({Slp::Sym::var(cur), Slp::Sym::var(cur)});
    }
    out.start = cur;
    return out;
}

// Concatenation of parts in order, remapping letters by name into the target
// alphabet and renaming all variables to a fresh X0..Xn sequence.
inline Slp slp_concat(std::vector<std::string> alphabet, const std::vector<Slp>& parts) {
    Slp out;
    out.alphabet = std::move(alphabet);
    std::vector<Slp::Sym> start_rule;
    for (const Slp& part : parts) {
        validate(part);
        std::vector<std::uint32_t> letter_map(part.alphabet.size());
        for (std::uint32_t a = 0; a < part.alphabet.size(); ++a)
            letter_map[a] = require_letter(out.alphabet, part.alphabet[a]);
        const std::uint32_t offset = static_cast<std::uint32_t>(out.variables.size());
        for (std::uint32_t v = 0; v < part.variables.size(); ++v) {
            out.variables.push_back("X" + std::to_string(out.variables.size()));
            std::vector<Slp::Sym> rule;
            rule.reserve(part.rules[v].size());
            for (const auto& sym : part.rules[v])
                rule.push_back(sym.is_var ? Slp::Sym::var(offset + sym.idx)
                                          : Slp::Sym::term(letter_map[sym.idx]));
            out.rules.push_back(std::move(rule));
        }
        start_rule.push_back(Slp::Sym::var(offset + part.start));
    }
    out.variables.push_back("X" + std::to_string(out.variables.size()));
    out.rules.push_back(std::move(start_rule));
    out.start = static_cast<std::uint32_t>(out.variables.size() - 1);
    return out;
}

} // namespace monisect
