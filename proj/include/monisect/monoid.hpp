#pragma once

/// @file monoid.hpp
/// Finite monoids as multiplication tables, plus the algebraic primitives the
/// rest of the library consumes: idempotents, omega powers, the J preorder,
/// direct products, generated submonoids, quotients by congruences, division
/// and isomorphism testing, and the named constructions (U1, B21, cyclic).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "monisect/bigint.hpp"
#include "monisect/error.hpp"

namespace monisect {

using Elem = std::uint32_t;

class Monoid {
public:
    struct unchecked_t {};
    static constexpr unchecked_t unchecked{};

    // Full construction check: closure, identity laws and the O(|M|^3)
    // associativity scan. Malformed user tables are rejected here.
    Monoid(std::vector<std::string> elements, Elem identity, std::vector<Elem> table)
        : Monoid(std::move(elements), identity, std::move(table), unchecked) {
        check_associativity();
    }

    // Skips the associativity scan; for tables built by trusted internal
    // constructions (products, closures, quotients).
    Monoid(std::vector<std::string> elements, Elem identity, std::vector<Elem> table,
           unchecked_t)
        : names_(std::move(elements)), identity_(identity), table_(std::move(table)) {
        const std::size_t n = names_.size();
        if (n == 0)
            fail("bad_table", "a monoid needs at least one element");
        if (table_.size() != n * n)
            fail("bad_table", "table must be " + std::to_string(n) + "x" + std::to_string(n));
        for (Elem v : table_)
            if (v >= n)
                fail("bad_table", "table entry out of range: " + std::to_string(v));
        if (identity_ >= n)
            fail("bad_identity", "identity index out of range");
        for (Elem m = 0; m < n; ++m)
            if (raw_mul(identity_, m) != m || raw_mul(m, identity_) != m)
                fail("bad_identity", "identity law fails at element " + names_[m]);
    }

    std::size_t size() const { return names_.size(); }
    Elem identity() const { return identity_; }

    Elem mul(Elem m, Elem n) const {
        if (m >= size() || n >= size())
            fail("index_out_of_range",
                 "element index out of range: " + std::to_string(m >= size() ? m : n));
        return raw_mul(m, n);
    }

    const std::string& name(Elem m) const {
        if (m >= size())
            fail("index_out_of_range", "element index out of range: " + std::to_string(m));
        return names_[m];
    }

    const std::vector<std::string>& names() const { return names_; }
    const std::vector<Elem>& table() const { return table_; }

    std::optional<Elem> index_of(const std::string& name) const {
        for (Elem i = 0; i < size(); ++i)
            if (names_[i] == name)
                return i;
        return std::nullopt;
    }

    Elem require(const std::string& name) const {
        auto i = index_of(name);
        if (!i)
            fail("bad_element", "no element named " + name);
        return *i;
    }

    bool is_idempotent(Elem m) const { return mul(m, m) == m; }

    std::vector<Elem> idempotents() const {
        std::vector<Elem> out;
        for (Elem m = 0; m < size(); ++m)
            if (raw_mul(m, m) == m)
                out.push_back(m);
        return out;
    }

    // Smallest i >= 1 and p >= 1 with m^(i+p) = m^i.
    std::pair<std::uint32_t, std::uint32_t> index_period(Elem m) const {
        std::vector<std::int64_t> seen(size(), -1);
        Elem cur = m;
        std::uint32_t step = 1;
        while (seen[cur] < 0) {
            seen[cur] = step;
            cur = mul(cur, m);
            ++step;
        }
        auto first = static_cast<std::uint32_t>(seen[cur]);
        return {first, step - first};
    }

    // The unique idempotent among the powers m, m^2, m^3, ... Equals m^(|M|!)
    // without ever forming the factorial.
    Elem omega_power(Elem m) const {
        Elem cur = m;
        for (std::size_t i = 0; i <= 2 * size() + 1; ++i) {
            if (raw_mul(cur, cur) == cur)
                return cur;
            cur = mul(cur, m);
        }
        fail("bad_table", "no idempotent power found; table is not a monoid");
    }

    Elem pow(Elem m, std::uint64_t e) const {
        Elem acc = identity_;
        Elem base = m;
        if (m >= size())
            fail("index_out_of_range", "element index out of range");
        while (e) {
            if (e & 1)
                acc = raw_mul(acc, base);
            base = raw_mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    Elem pow(Elem m, const BigUint& e) const {
        if (m >= size())
            fail("index_out_of_range", "element index out of range");
        Elem acc = identity_;
        Elem base = m;
        const std::size_t bits = e.bit_length();
        for (std::size_t i = 0; i < bits; ++i) {
            if (e.bit(i))
                acc = raw_mul(acc, base);
            base = raw_mul(base, base);
        }
        return acc;
    }

    // m <=_J n, i.e. MmM is contained in MnM; for finite monoids this is
    // exactly: some x, y with x n y = m.
    bool j_below(Elem m, Elem n) const {
        if (m >= size() || n >= size())
            fail("index_out_of_range", "element index out of range");
        for (Elem x = 0; x < size(); ++x) {
            Elem xn = raw_mul(x, n);
            for (Elem y = 0; y < size(); ++y)
                if (raw_mul(xn, y) == m)
                    return true;
        }
        return false;
    }

    bool j_equivalent(Elem m, Elem n) const { return j_below(m, n) && j_below(n, m); }

    // Memoized J-order: below[m * size + n] iff m <=_J n. O(|M|^3) once.
    std::vector<char> j_matrix() const {
        const std::size_t n = size();
        std::vector<char> below(n * n, 0);
        std::vector<char> in_ideal(n);
        for (Elem b = 0; b < n; ++b) {
            std::fill(in_ideal.begin(), in_ideal.end(), 0);
            for (Elem x = 0; x < n; ++x)
                in_ideal[raw_mul(x, b)] = 1;
            for (Elem m = 0; m < n; ++m) {
                if (!in_ideal[m])
                    continue;
                for (Elem y = 0; y < n; ++y)
                    below[raw_mul(m, y) * n + b] = 1;
            }
        }
        return below;
    }

private:
    std::vector<std::string> names_;
    Elem identity_;
    std::vector<Elem> table_;

    Elem raw_mul(Elem m, Elem n) const { return table_[m * size() + n]; }

    void check_associativity() const {
        const std::size_t n = size();
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b) {
                Elem ab = raw_mul(a, b);
                for (Elem c = 0; c < n; ++c)
                    if (raw_mul(ab, c) != raw_mul(a, raw_mul(b, c)))
                        fail("not_associative",
                             "(" + names_[a] + "*" + names_[b] + ")*" + names_[c] + " != " +
                                 names_[a] + "*(" + names_[b] + "*" + names_[c] + ")",
                             {names_[a], names_[b], names_[c]});
            }
    }
};

// ---------------------------------------------------------------------------
// Named constructions.

inline Monoid u1() {
    return Monoid({"1", "0"}, 0, {0, 1, 1, 1}, Monoid::unchecked);
}

inline Monoid b21() {
    // {1, a, b, ab, ba, 0} with aba = a, bab = b, a^2 = b^2 = 0.
    std::vector<Elem> t = {
        0, 1, 2, 3, 4, 5, // 1
        1, 5, 3, 5, 1, 5, // a
        2, 4, 5, 2, 5, 5, // b
        3, 1, 5, 3, 5, 5, // ab
        4, 5, 2, 5, 4, 5, // ba
        5, 5, 5, 5, 5, 5, // 0
    };
    return Monoid({"1", "a", "b", "ab", "ba", "0"}, 0, std::move(t), Monoid::unchecked);
}

inline Monoid cyclic(std::uint32_t n) {
    if (n == 0)
        fail("bad_table", "cyclic group order must be positive");
    std::vector<std::string> names(n);
    for (std::uint32_t i = 0; i < n; ++i)
        names[i] = i == 0 ? "1" : (i == 1 ? "g" : "g^" + std::to_string(i));
    std::vector<Elem> t(static_cast<std::size_t>(n) * n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
            t[static_cast<std::size_t>(i) * n + j] = (i + j) % n;
    return Monoid(std::move(names), 0, std::move(t), Monoid::unchecked);
}

inline Monoid trivial_monoid() { return cyclic(1); }

// Cartesian product with componentwise multiplication. Element (i, j) of
// M x N sits at index i * |N| + j and is named "(x,y)".
inline Monoid direct_product(const Monoid& m, const Monoid& n, std::size_t size_cap = 4096) {
    const std::size_t a = m.size(), b = n.size();
    if (a * b > size_cap)
        fail("cap_exceeded", "direct product would have " + std::to_string(a * b) + " elements");
    std::vector<std::string> names;
    names.reserve(a * b);
    for (Elem i = 0; i < a; ++i)
        for (Elem j = 0; j < b; ++j)
            names.push_back("(" + m.name(i) + "," + n.name(j) + ")");
    std::vector<Elem> t(a * b * a * b);
    for (Elem i = 0; i < a; ++i)
        for (Elem j = 0; j < b; ++j)
            for (Elem k = 0; k < a; ++k)
                for (Elem l = 0; l < b; ++l) {
                    Elem lhs = static_cast<Elem>(i * b + j);
                    Elem rhs = static_cast<Elem>(k * b + l);
                    t[static_cast<std::size_t>(lhs) * (a * b) + rhs] =
                        static_cast<Elem>(m.mul(i, k) * b + n.mul(j, l));
                }
    Elem id = static_cast<Elem>(m.identity() * b + n.identity());
    return Monoid(std::move(names), id, std::move(t), Monoid::unchecked);
}

inline Elem pair_elem(const Monoid& n, Elem x, Elem y) {
    return static_cast<Elem>(x * n.size() + y);
}

// ---------------------------------------------------------------------------
// Generated submonoids.

struct SubmonoidResult {
    Monoid monoid;
    std::vector<Elem> embed; // embed[new index] = index in the parent
};

// Smallest subset containing the identity and gens, closed under the product.
// Elements appear in BFS discovery order (identity first, generators next).
inline SubmonoidResult generated_submonoid(const Monoid& m, std::span<const Elem> gens) {
    std::vector<Elem> elems;
    std::unordered_map<Elem, Elem> pos; // parent index -> new index
    auto add = [&](Elem e) {
        if (pos.emplace(e, static_cast<Elem>(elems.size())).second)
            elems.push_back(e);
    };
    add(m.identity());
    for (Elem g : gens) {
        if (g >= m.size())
            fail("index_out_of_range", "generator out of range");
        add(g);
    }
    for (std::size_t head = 0; head < elems.size(); ++head)
        for (Elem g : gens)
            add(m.mul(elems[head], g));

    const std::size_t n = elems.size();
    std::vector<std::string> names;
    names.reserve(n);
    for (Elem e : elems)
        names.push_back(m.name(e));
    std::vector<Elem> table(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Elem prod = m.mul(elems[i], elems[j]);
            auto it = pos.find(prod);
            if (it == pos.end())
                fail("bad_table", "generated set is not closed; table is not associative");
            table[i * n + j] = it->second;
        }
    return {Monoid(std::move(names), 0, std::move(table), Monoid::unchecked), std::move(elems)};
}

// Greedy generating set: repeatedly adjoin the smallest element outside the
// current closure. Not minimal, just small and deterministic.
inline std::vector<Elem> generating_set(const Monoid& m) {
    std::vector<Elem> gens;
    for (;;) {
        auto sub = generated_submonoid(m, gens);
        if (sub.monoid.size() == m.size())
            return gens;
        std::vector<char> inside(m.size(), 0);
        for (Elem e : sub.embed)
            inside[e] = 1;
        for (Elem e = 0; e < m.size(); ++e)
            if (!inside[e]) {
                gens.push_back(e);
                break;
            }
    }
}

// ---------------------------------------------------------------------------
// Congruences and quotients.

class Congruence {
public:
    // Validates compatibility: the induced product on classes must be
    // well-defined. Class ids are normalized to first-occurrence order.
    Congruence(Monoid monoid, std::vector<Elem> class_of)
        : monoid_(std::move(monoid)), class_of_(std::move(class_of)) {
        const std::size_t n = monoid_.size();
        if (class_of_.size() != n)
            fail("not_a_congruence", "class map must cover every element");
        std::unordered_map<Elem, Elem> remap;
        for (auto& c : class_of_) {
            auto it = remap.emplace(c, static_cast<Elem>(remap.size())).first;
            c = it->second;
        }
        classes_ = remap.size();
        std::vector<std::int64_t> induced(classes_ * classes_, -1);
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b) {
                Elem ca = class_of_[a], cb = class_of_[b];
                Elem cp = class_of_[monoid_.mul(a, b)];
                auto& slot = induced[ca * classes_ + cb];
                if (slot < 0)
                    slot = cp;
                else if (slot != cp)
                    fail("not_a_congruence", "classes of " + monoid_.name(a) + " and " +
                                                 monoid_.name(b) + " break compatibility");
            }
    }

    static Congruence identity(const Monoid& m) {
        std::vector<Elem> c(m.size());
        for (Elem i = 0; i < m.size(); ++i)
            c[i] = i;
        return Congruence(m, std::move(c));
    }

    static Congruence full(const Monoid& m) {
        return Congruence(m, std::vector<Elem>(m.size(), 0));
    }

    const Monoid& monoid() const { return monoid_; }
    std::size_t num_classes() const { return classes_; }
    Elem class_of(Elem m) const {
        if (m >= class_of_.size())
            fail("index_out_of_range", "element index out of range");
        return class_of_[m];
    }
    const std::vector<Elem>& classes() const { return class_of_; }

private:
    Monoid monoid_;
    std::vector<Elem> class_of_;
    std::size_t classes_;
};

struct QuotientResult {
    Monoid monoid;
    std::vector<Elem> projection; // projection[parent index] = class index
};

inline QuotientResult quotient_monoid(const Congruence& c) {
    const Monoid& m = c.monoid();
    const std::size_t k = c.num_classes();
    std::vector<Elem> rep(k, 0);
    std::vector<char> have(k, 0);
    for (Elem e = 0; e < m.size(); ++e) {
        Elem cl = c.class_of(e);
        if (!have[cl]) {
            have[cl] = 1;
            rep[cl] = e;
        }
    }
    std::vector<std::string> names;
    names.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        names.push_back("[" + m.name(rep[i]) + "]");
    std::vector<Elem> table(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            table[i * k + j] = c.class_of(m.mul(rep[i], rep[j]));
    Elem id = c.class_of(m.identity());
    return {Monoid(std::move(names), id, std::move(table), Monoid::unchecked), c.classes()};
}

// ---------------------------------------------------------------------------
// Division and isomorphism.

namespace detail {

// Closure in M x N of the pairs (x_t, g_t); the candidate morphism is
// well-defined iff the closure is functional in its first component, and
// surjective iff the second components cover N.
inline bool tuple_defines_surjection(const Monoid& m, const Monoid& n,
                                     std::span<const Elem> xs, std::span<const Elem> gs) {
    std::unordered_map<Elem, Elem> graph; // element of M -> element of N
    std::vector<std::pair<Elem, Elem>> queue;
    auto push = [&](Elem a, Elem b) {
        auto [it, fresh] = graph.emplace(a, b);
        if (!fresh)
            return it->second == b;
        queue.emplace_back(a, b);
        return true;
    };
    if (!push(m.identity(), n.identity()))
        return false;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (!push(xs[i], gs[i]))
            return false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto [a, b] = queue[head];
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (!push(m.mul(a, xs[i]), n.mul(b, gs[i])))
                return false;
    }
    std::vector<char> hit(n.size(), 0);
    for (auto& [a, b] : graph)
        hit[b] = 1;
    return std::find(hit.begin(), hit.end(), 0) == hit.end();
}

} // namespace detail

// True iff n is a quotient of a submonoid of m: brute search over generated
// submonoids (generators picked per generator of n) with candidate
// surjections determined by the generator images. Exponential in the rank of
// n, gated by the cap on |m|.
inline bool divides(const Monoid& n, const Monoid& m, std::size_t cap = 64) {
    if (m.size() > cap)
        fail("cap_exceeded", "divides cap is " + std::to_string(cap) + ", monoid has " +
                                 std::to_string(m.size()) + " elements");
    std::vector<Elem> gens = generating_set(n);
    if (gens.empty())
        return true; // trivial monoid divides everything
    // Prune candidates by cyclic structure: x can map onto g only if the
    // relations of x's powers hold for g's powers.
    std::vector<std::vector<Elem>> candidates(gens.size());
    for (std::size_t t = 0; t < gens.size(); ++t) {
        auto [gi, gp] = n.index_period(gens[t]);
        for (Elem x = 0; x < m.size(); ++x) {
            auto [xi, xp] = m.index_period(x);
            if (gi <= xi && xp % gp == 0)
                candidates[t].push_back(x);
        }
        if (candidates[t].empty())
            return false;
    }
    std::vector<std::size_t> pick(gens.size(), 0);
    std::vector<Elem> xs(gens.size());
    for (;;) {
        for (std::size_t t = 0; t < gens.size(); ++t)
            xs[t] = candidates[t][pick[t]];
        if (detail::tuple_defines_surjection(m, n, xs, gens))
            return true;
        std::size_t t = 0;
        while (t < gens.size() && ++pick[t] == candidates[t].size()) {
            pick[t] = 0;
            ++t;
        }
        if (t == gens.size())
            return false;
    }
}

// Table-preserving bijection test, pruned by cheap per-element invariants.
inline bool isomorphic(const Monoid& a, const Monoid& b) {
    if (a.size() != b.size())
        return false;
    auto signature = [](const Monoid& m, Elem e) {
        auto [i, p] = m.index_period(e);
        return std::pair<std::uint32_t, std::uint32_t>(i, p);
    };
    {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> sa, sb;
        for (Elem e = 0; e < a.size(); ++e) {
            sa.push_back(signature(a, e));
            sb.push_back(signature(b, e));
        }
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb)
            return false;
    }
    std::vector<Elem> gens = generating_set(a);
    if (gens.empty())
        return true; // both trivial
    // Expressions for every element of a as identity or (element * generator),
    // in closure order, so a candidate generator assignment extends uniquely.
    struct Expr {
        Elem base, gen;
    };
    std::vector<Expr> expr(a.size(), {0, 0});
    std::vector<Elem> order;
    {
        std::vector<char> seen(a.size(), 0);
        auto add = [&](Elem e, Elem base, Elem g) {
            if (!seen[e]) {
                seen[e] = 1;
                expr[e] = {base, g};
                order.push_back(e);
            }
        };
        add(a.identity(), 0, 0);
        for (std::size_t head = 0; head < order.size(); ++head)
            for (std::size_t t = 0; t < gens.size(); ++t)
                add(a.mul(order[head], gens[t]), order[head], static_cast<Elem>(t));
        if (order.size() != a.size())
            fail("bad_table", "generating set does not generate");
    }
    std::vector<std::vector<Elem>> candidates(gens.size());
    for (std::size_t t = 0; t < gens.size(); ++t) {
        auto sig = signature(a, gens[t]);
        for (Elem x = 0; x < b.size(); ++x)
            if (signature(b, x) == sig)
                candidates[t].push_back(x);
        if (candidates[t].empty())
            return false;
    }
    std::vector<std::size_t> pick(gens.size(), 0);
    std::vector<Elem> map(a.size());
    std::vector<char> used(b.size());
    for (;;) {
        bool ok = true;
        std::fill(used.begin(), used.end(), 0);
        map[a.identity()] = b.identity();
        for (Elem e : order) {
            if (e == a.identity()) {
                used[b.identity()] = 1;
                continue;
            }
            Elem img = b.mul(map[expr[e].base], candidates[expr[e].gen][pick[expr[e].gen]]);
            if (used[img]) {
                ok = false;
                break;
            }
            used[img] = 1;
            map[e] = img;
        }
        if (ok) {
            for (Elem x = 0; x < a.size() && ok; ++x)
                for (Elem y = 0; y < a.size(); ++y)
                    if (map[a.mul(x, y)] != b.mul(map[x], map[y])) {
                        ok = false;
                        break;
                    }
            if (ok)
                return true;
        }
        std::size_t t = 0;
        while (t < gens.size() && ++pick[t] == candidates[t].size()) {
            pick[t] = 0;
            ++t;
        }
        if (t == gens.size())
            return false;
    }
}

} // namespace monisect
