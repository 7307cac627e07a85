#pragma once

/// @file compress.hpp
/// Witness compression. The group case keeps a table of SLP fragments filled
/// by a sifting procedure until stable; the general case factorizes the word
/// so every inner factor occurrence is isolated, compresses each factor
/// through the group quotients of its context congruences, and concatenates
/// the pieces. Sizes of the resulting SLPs depend on the monoids, never on
/// the word length.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monisect/bigint.hpp"
#include "monisect/error.hpp"
#include "monisect/instance.hpp"
#include "monisect/monoid.hpp"
#include "monisect/morphism.hpp"
#include "monisect/slp.hpp"
#include "monisect/varieties.hpp"

namespace monisect {

struct GroupCompressOptions {
    bool lcm_omega = false;              // omega = lcm|G_i| instead of N!
    std::uint64_t sift_budget = 10'000'000;
};

// Mutable sifting state over pairwise-disjoint groups G_1..G_k with morphisms
// h_i from a shared alphabet. Holds a pool of SLP fragments shared by all
// table entries; entries, once assigned, are never modified. Exclusive
// access: one task at a time per state.
class GroupSiftState {
public:
    using Frag = std::vector<Slp::Sym>; // symbols over the pool + alphabet

    struct SiftRound {
        Elem s_image = 0;            // h_i(S_i)
        bool filled = false;         // this round assigned the table entry
        std::vector<Elem> r_images;  // h_j(R_i) for every j
    };
    struct SiftTrace {
        std::vector<SiftRound> rounds;
    };

    explicit GroupSiftState(std::vector<Morphism> morphisms, GroupCompressOptions opts = {})
        : hs_(std::move(morphisms)), budget_(opts.sift_budget) {
        if (hs_.empty())
            fail("bad_instance", "need at least one group");
        std::size_t n = 0;
        std::vector<std::uint64_t> orders;
        for (const Morphism& h : hs_) {
            if (h.alphabet != hs_[0].alphabet)
                fail("alphabet_mismatch", "group morphisms must share one alphabet");
            if (!is_group(h.target))
                fail("not_a_group", "sifting requires group targets");
            n += h.target.size();
            orders.push_back(h.target.size());
        }
        omega_ = opts.lcm_omega ? BigUint::lcm_of(orders)
                                : BigUint::factorial(static_cast<std::uint64_t>(n));
        table_.resize(hs_.size());
        for (std::size_t i = 0; i < hs_.size(); ++i)
            table_[i].assign(hs_[i].target.size(), std::nullopt);
    }

    std::size_t group_count() const { return hs_.size(); }
    const Morphism& morphism(std::size_t i) const { return hs_[i]; }
    const BigUint& omega() const { return omega_; }
    std::uint64_t sift_calls() const { return calls_; }

    std::optional<std::uint32_t> table_entry(std::size_t i, Elem g) const {
        return table_[i][g];
    }

    std::size_t filled_entries() const {
        std::size_t c = 0;
        for (const auto& row : table_)
            for (const auto& e : row)
                c += e.has_value();
        return c;
    }

    Elem pool_image(std::uint32_t var, std::size_t i) const { return pool_[var].images[i]; }

    // Total size of the fragment pool, counted as rule lengths.
    std::size_t pool_rule_size() const {
        std::size_t s = 0;
        for (const auto& v : pool_)
            s += v.rule.size();
        return s;
    }

    Elem frag_image(const Frag& frag, std::size_t i) const {
        const Monoid& g = hs_[i].target;
        Elem acc = g.identity();
        for (const Slp::Sym& sym : frag)
            acc = g.mul(acc, sym.is_var ? pool_[sym.idx].images[i] : hs_[i].images[sym.idx]);
        return acc;
    }

    std::vector<Elem> frag_images(const Frag& frag) const {
        std::vector<Elem> out(hs_.size());
        for (std::size_t i = 0; i < hs_.size(); ++i)
            out[i] = frag_image(frag, i);
        return out;
    }

    Frag word_frag(const Word& w) const {
        Frag f;
        f.reserve(w.size());
        for (Letter a : w) {
            if (a >= hs_[0].alphabet.size())
                fail("unknown_letter", "letter index outside alphabet");
            f.push_back(Slp::Sym::term(a));
        }
        return f;
    }

    // One round per group: S_i = R_{i-1}^{omega-1} alpha; a missing table
    // entry for h_i(S_i) is filled with S_i (materialized through the binary
    // power construction) and never modified again; R_i appends the entry.
    // Returns R_k, a product of at most k table entries.
    Frag sift(const Frag& alpha, SiftTrace* trace = nullptr) {
        if (++calls_ > budget_)
            fail("budget_exceeded", "sift budget " + std::to_string(budget_) + " exhausted");
        BigUint wm1 = omega_;
        wm1.decrement();
        std::vector<Elem> alpha_img = frag_images(alpha);
        Frag r;
        std::vector<Elem> r_img(hs_.size());
        for (std::size_t j = 0; j < hs_.size(); ++j)
            r_img[j] = hs_[j].target.identity();
        for (std::size_t i = 0; i < hs_.size(); ++i) {
            const Monoid& gi = hs_[i].target;
            Elem s_image = gi.mul(gi.pow(r_img[i], wm1), alpha_img[i]);
            bool filled = false;
            if (!table_[i][s_image]) {
                Frag rule;
                if (auto p = materialize_power(r, wm1))
                    rule.push_back(*p);
                rule.insert(rule.end(), alpha.begin(), alpha.end());
                if (!rule.empty()) {
                    table_[i][s_image] = add_var(std::move(rule));
                    filled = true;
                }
                // An empty S_i stays the empty marker.
            }
            if (table_[i][s_image]) {
                std::uint32_t var = *table_[i][s_image];
                r.push_back(Slp::Sym::var(var));
                for (std::size_t j = 0; j < hs_.size(); ++j)
                    r_img[j] = hs_[j].target.mul(r_img[j], pool_[var].images[j]);
            }
            if (trace)
                trace->rounds.push_back({s_image, filled, r_img});
        }
        return r;
    }

    // Fills the table by sifting every product T[g_1]...T[g_k] a until a full
    // pass adds no entry; afterwards sift never needs a new entry.
    void init() {
        for (std::size_t i = 0; i < hs_.size(); ++i)
            table_[i].assign(hs_[i].target.size(), std::nullopt);
        pool_.clear();
        std::size_t count = 0;
        for (;;) {
            enumeration_pass();
            std::size_t now = filled_entries();
            if (now == count)
                break;
            count = now;
        }
    }

    // One more full enumeration pass; true iff it added no table entry.
    bool probe() {
        std::size_t before = filled_entries();
        enumeration_pass();
        return filled_entries() == before;
    }

    // The whole pool plus a fresh start variable whose rule is `frag`.
    // Pool construction order is topological, so the result validates as-is.
    Slp to_slp(const Frag& frag) const {
        Slp s;
        s.alphabet = hs_[0].alphabet;
        s.variables.reserve(pool_.size() + 1);
        s.rules.reserve(pool_.size() + 1);
        for (std::size_t v = 0; v < pool_.size(); ++v) {
            s.variables.push_back("X" + std::to_string(v));
            s.rules.push_back(pool_[v].rule);
        }
        s.variables.push_back("X" + std::to_string(pool_.size()));
        s.rules.push_back(frag);
        s.start = static_cast<std::uint32_t>(pool_.size());
        return s;
    }

private:
    struct PoolVar {
        Frag rule;
        std::vector<Elem> images; // one per morphism
    };

    std::vector<Morphism> hs_;
    BigUint omega_;
    std::vector<PoolVar> pool_;
    std::vector<std::vector<std::optional<std::uint32_t>>> table_;
    std::uint64_t calls_ = 0;
    std::uint64_t budget_;

    std::uint32_t add_var(Frag rule) {
        PoolVar v;
        v.images = frag_images(rule);
        v.rule = std::move(rule);
        pool_.push_back(std::move(v));
        return static_cast<std::uint32_t>(pool_.size() - 1);
    }

    // base^e as a single pool symbol (nothing for the empty value). Exponent
    // e = 1 splices the base in place; larger exponents build the binary
    // odd/even chain, adding at most 4 log2(e) + 2 symbols to the pool.
    std::optional<Slp::Sym> materialize_power(const Frag& base, const BigUint& e) {
        if (base.empty() || e.is_zero())
            return std::nullopt;
        std::uint32_t base_var;
        if (base.size() == 1 && base[0].is_var)
            base_var = base[0].idx;
        else
            base_var = add_var(base);
        if (e == BigUint(1))
            return Slp::Sym::var(base_var);
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
        std::uint32_t cur = add_var({}); // X_0 -> epsilon
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            if (*it == Step::odd)
                cur = add_var({Slp::Sym::var(cur), Slp::Sym::var(base_var)});
            else
                cur = add_var({Slp::Sym::var(cur), Slp::Sym::var(cur)});
        }
        return Slp::Sym::var(cur);
    }

    void enumeration_pass() {
        std::vector<std::size_t> sizes;
        for (const Morphism& h : hs_)
            sizes.push_back(h.target.size());
        const std::size_t sigma = hs_[0].alphabet.size();
        std::vector<Elem> tuple(hs_.size(), 0);
        for (;;) {
            for (Letter a = 0; a < sigma; ++a) {
                Frag alpha;
                for (std::size_t i = 0; i < hs_.size(); ++i)
                    if (table_[i][tuple[i]])
                        alpha.push_back(Slp::Sym::var(*table_[i][tuple[i]]));
                alpha.push_back(Slp::Sym::term(a));
                sift(alpha);
            }
            std::size_t i = 0;
            while (i < tuple.size() && ++tuple[i] == sizes[i]) {
                tuple[i] = 0;
                ++i;
            }
            if (i == tuple.size())
                break;
        }
    }
};

// Initialize a sift table for the given group morphisms, then sift the word.
// The output size is a function of the groups and the alphabet alone: the
// whole pool plus one rule of at most k entries.
inline Slp compress_group_word(const std::vector<Morphism>& hs, const Word& w,
                               GroupCompressOptions opts = {}) {
    GroupSiftState state(hs, opts);
    state.init();
    GroupSiftState::Frag r = state.sift(state.word_frag(w));
    return state.to_slp(r);
}

// ---------------------------------------------------------------------------
// Piecewise isolating factorizations.

struct IsolationWitness {
    Word v, w;
};

struct IsolatingFactorization {
    std::vector<Letter> breakpoints;     // a_1 .. a_ell
    std::vector<Word> inner;             // u_1 .. u_{ell-1}
    std::vector<std::size_t> positions;  // r_1 .. r_ell, 1-based positions in the word
    // witnesses[j][i]: (v, w) isolating the occurrence of inner[j] for morphism i
    std::vector<std::vector<IsolationWitness>> witnesses;

    std::size_t length() const { return breakpoints.size(); }

    Word reassemble() const {
        Word w;
        for (std::size_t j = 0; j < breakpoints.size(); ++j) {
            w.push_back(breakpoints[j]);
            if (j < inner.size())
                w.insert(w.end(), inner[j].begin(), inner[j].end());
        }
        return w;
    }
};

// Breakpoints sit where the set of (morphism, prefix image, suffix image)
// pairs over all splits grows, plus the first and last positions. Isolation
// witnesses per factor and morphism come from cyclic rotations of the span
// back to the first split realizing the factor's context images.
inline IsolatingFactorization isolating_factorization(std::span<const Morphism> hs,
                                                      const Word& w) {
    if (w.empty())
        fail("bad_word", "factorization needs a non-empty word");
    if (hs.empty())
        fail("bad_instance", "need at least one morphism");
    const std::size_t m = w.size();
    const std::size_t k = hs.size();
    // Prefix and suffix images per morphism: pre[i][s] = h_i(w[0..s)),
    // suf[i][s] = h_i(w[s..m)).
    std::vector<std::vector<Elem>> pre(k), suf(k);
    for (std::size_t i = 0; i < k; ++i) {
        pre[i].resize(m + 1);
        suf[i].resize(m + 1);
        pre[i][0] = hs[i].target.identity();
        for (std::size_t s = 0; s < m; ++s)
            pre[i][s + 1] = hs[i].target.mul(pre[i][s], hs[i].of_letter(w[s]));
        suf[i][m] = hs[i].target.identity();
        for (std::size_t s = m; s-- > 0;)
            suf[i][s] = hs[i].target.mul(hs[i].of_letter(w[s]), suf[i][s + 1]);
    }
    // First position at which each (i, prefix, suffix) pair appears.
    struct PairKey {
        std::size_t i;
        Elem p, q;
        bool operator==(const PairKey&) const = default;
    };
    struct PairHash {
        std::size_t operator()(const PairKey& x) const {
            return (x.i * 1000003u + x.p) * 1000003u + x.q;
        }
    };
    std::unordered_map<PairKey, std::size_t, PairHash> first_pos;
    std::vector<std::size_t> growth;
    for (std::size_t s = 1; s <= m; ++s) {
        bool grew = false;
        for (std::size_t i = 0; i < k; ++i)
            if (first_pos.emplace(PairKey{i, pre[i][s], suf[i][s]}, s).second)
                grew = true;
        if (grew)
            growth.push_back(s);
    }
    IsolatingFactorization out;
    out.positions = growth; // growth[0] == 1 always: every pair is new at s = 1
    if (out.positions.empty() || out.positions.front() != 1)
        fail("internal", "first position must be a breakpoint");
    if (out.positions.back() != m)
        out.positions.push_back(m);
    const std::size_t ell = out.positions.size();
    std::unordered_map<std::size_t, std::size_t> bp_index;
    for (std::size_t j = 0; j < ell; ++j)
        bp_index.emplace(out.positions[j], j);
    for (std::size_t j = 0; j < ell; ++j) {
        out.breakpoints.push_back(w[out.positions[j] - 1]);
        if (j + 1 < ell) {
            Word u(w.begin() + static_cast<std::ptrdiff_t>(out.positions[j]),
                   w.begin() + static_cast<std::ptrdiff_t>(out.positions[j + 1] - 1));
            out.inner.push_back(std::move(u));
        }
    }
    // Witnesses per inner factor and morphism.
    out.witnesses.resize(out.inner.size());
    for (std::size_t j = 0; j < out.inner.size(); ++j) {
        const std::size_t rj = out.positions[j];          // position of a_{j+1 in paper terms}
        const std::size_t rnext = out.positions[j + 1];   // next breakpoint position
        out.witnesses[j].reserve(k);
        for (std::size_t i = 0; i < k; ++i) {
            PairKey key{i, pre[i][rnext - 1], suf[i][rnext - 1]};
            auto it = first_pos.find(key);
            if (it == first_pos.end())
                fail("internal", "context pair not registered");
            std::size_t s_star = it->second;
            auto bp = bp_index.find(s_star);
            if (bp == bp_index.end())
                fail("internal", "first occurrence is not a breakpoint");
            std::size_t rt = out.positions[bp->second];
            IsolationWitness iw;
            // w_{ji} = w[rt+1 .. rnext-1], v_{ji} = u_j ++ w[rt+1 .. rj]
            iw.w.assign(w.begin() + static_cast<std::ptrdiff_t>(rt),
                        w.begin() + static_cast<std::ptrdiff_t>(rnext - 1));
            iw.v = out.inner[j];
            iw.v.insert(iw.v.end(), w.begin() + static_cast<std::ptrdiff_t>(rt),
                        w.begin() + static_cast<std::ptrdiff_t>(rj));
            out.witnesses[j].push_back(std::move(iw));
        }
    }
    return out;
}

// Does the occurrence of u in p.u.q admit, for every morphism, words v and w
// of equal content covering alph(u) with h(pv) = h(p) and h(wq) = h(q)?
// Decided by reachability over (image, exact content) pairs.
inline bool is_isolated(std::span<const Morphism> hs, const Word& p, const Word& u,
                        const Word& q, std::size_t alphabet_cap = 10) {
    if (hs.empty())
        fail("bad_instance", "need at least one morphism");
    const std::size_t sigma = hs[0].alphabet.size();
    if (sigma > alphabet_cap)
        fail("cap_exceeded", "content search capped at alphabet size " +
                                 std::to_string(alphabet_cap));
    std::uint32_t u_mask = 0;
    for (Letter a : u)
        u_mask |= 1u << a;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const Monoid& t = hs[i].target;
        const Elem hp = hs[i].eval(p), hq = hs[i].eval(q);
        const std::size_t masks = std::size_t(1) << sigma;
        std::vector<char> reach(t.size() * masks, 0);
        std::vector<std::pair<Elem, std::uint32_t>> queue;
        auto push = [&](Elem e, std::uint32_t mask) {
            if (!reach[e * masks + mask]) {
                reach[e * masks + mask] = 1;
                queue.emplace_back(e, mask);
            }
        };
        push(t.identity(), 0);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            auto [e, mask] = queue[head];
            for (Letter a = 0; a < sigma; ++a)
                push(t.mul(e, hs[i].images[a]), mask | (1u << a));
        }
        bool found = false;
        for (std::uint32_t mask = 0; mask < masks && !found; ++mask) {
            if ((mask & u_mask) != u_mask)
                continue;
            bool left = false, right = false;
            for (Elem e = 0; e < t.size() && !(left && right); ++e) {
                if (!reach[e * masks + mask])
                    continue;
                if (t.mul(hp, e) == hp)
                    left = true;
                if (t.mul(e, hq) == hq)
                    right = true;
            }
            found = left && right;
        }
        if (!found)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Context congruences and their group quotients.

struct ContextCongruenceResult {
    SubmonoidResult sub;       // T = image submonoid of the content letters
    std::vector<Elem> classes; // class of each T element under the congruence
};

// m == n iff h(p) x m y h(q) = h(p) x n y h(q) for all x, y in T, where T is
// the submonoid generated by the images of the content letters and the
// contexts are passed as precomputed images.
inline ContextCongruenceResult context_congruence(const Morphism& h,
                                                  std::span<const Letter> content,
                                                  Elem left_context, Elem right_context) {
    std::vector<Elem> gens;
    gens.reserve(content.size());
    for (Letter a : content)
        gens.push_back(h.of_letter(a));
    SubmonoidResult sub = generated_submonoid(h.target, gens);
    const Monoid& big = h.target;
    const std::size_t tn = sub.monoid.size();
    // Distinguish classes by the full profile of products P x m y Q.
    std::vector<std::vector<Elem>> profile(tn);
    for (std::size_t mi = 0; mi < tn; ++mi) {
        profile[mi].reserve(tn * tn);
        for (std::size_t x = 0; x < tn; ++x) {
            Elem px = big.mul(left_context, sub.embed[x]);
            Elem pxm = big.mul(px, sub.embed[mi]);
            for (std::size_t y = 0; y < tn; ++y)
                profile[mi].push_back(big.mul(big.mul(pxm, sub.embed[y]), right_context));
        }
    }
    std::vector<Elem> classes(tn);
    std::vector<std::size_t> reps;
    for (std::size_t mi = 0; mi < tn; ++mi) {
        bool placed = false;
        for (std::size_t c = 0; c < reps.size(); ++c)
            if (profile[reps[c]] == profile[mi]) {
                classes[mi] = static_cast<Elem>(c);
                placed = true;
                break;
            }
        if (!placed) {
            classes[mi] = static_cast<Elem>(reps.size());
            reps.push_back(mi);
        }
    }
    return {std::move(sub), std::move(classes)};
}

struct QuotientGroupResult {
    Monoid group;              // quotient T/== (a group when the occurrence is isolated)
    Morphism psi;              // content letters -> quotient classes
    SubmonoidResult sub;
    std::vector<Elem> projection; // T element -> class
};

// Quotient of the content submonoid by the context congruence. Raises
// "isolation_violated" when the quotient fails the group check, which means
// the caller's occurrence was not isolated.
inline QuotientGroupResult quotient_group(const Morphism& h, std::span<const Letter> content,
                                          Elem left_context, Elem right_context) {
    ContextCongruenceResult cc = context_congruence(h, content, left_context, right_context);
    Congruence cong(cc.sub.monoid, cc.classes);
    QuotientResult q = quotient_monoid(cong);
    if (!is_group(q.monoid))
        fail("isolation_violated", "context quotient is not a group");
    // T-index of each content letter image.
    std::vector<std::string> psi_alphabet;
    std::vector<Elem> psi_images;
    for (Letter a : content) {
        psi_alphabet.push_back(h.alphabet[a]);
        Elem img = h.of_letter(a);
        Elem t_index = 0;
        bool found = false;
        for (Elem t = 0; t < cc.sub.embed.size(); ++t)
            if (cc.sub.embed[t] == img) {
                t_index = t;
                found = true;
                break;
            }
        if (!found)
            fail("internal", "letter image missing from its own submonoid");
        psi_images.push_back(q.projection[t_index]);
    }
    Morphism psi(std::move(psi_alphabet), q.monoid, std::move(psi_images));
    return {std::move(q.monoid), std::move(psi), std::move(cc.sub), std::move(q.projection)};
}

// ---------------------------------------------------------------------------
// End-to-end compression for DO instances.

struct CompressOptions {
    bool lcm_omega = false;
    std::uint64_t sift_budget = 10'000'000;
};

// SLP with the same image as w under every morphism of the instance; all
// targets must be in DO. The word itself need not be a member. The result is
// the concatenation of the breakpoint letters with the group-compressed
// inner factors of a piecewise isolating factorization.
inline Slp compress_witness(const Instance& inst, const Word& w, CompressOptions opts = {}) {
    inst.check();
    for (const Recognizer& r : inst.recognizers)
        if (!in_do(r.h.target))
            fail("not_in_do", "every target must lie in DO");
    if (w.empty())
        return slp_literal(inst.alphabet, {});
    std::vector<Morphism> hs;
    hs.reserve(inst.recognizers.size());
    for (const Recognizer& r : inst.recognizers)
        hs.push_back(r.h);
    IsolatingFactorization fact = isolating_factorization(hs, w);
    const std::size_t ell = fact.length();
    // Context images per factor: prefix p_j ends at position r_j, suffix q_j
    // starts at the next breakpoint.
    std::vector<Slp> parts;
    for (std::size_t j = 0; j < ell; ++j) {
        parts.push_back(slp_literal(inst.alphabet, {fact.breakpoints[j]}));
        if (j >= fact.inner.size() || fact.inner[j].empty())
            continue;
        const Word& u = fact.inner[j];
        Word content = alph_of(u);
        // Re-index u over its content alphabet.
        std::vector<std::string> content_names;
        for (Letter a : content)
            content_names.push_back(inst.alphabet[a]);
        Word u_local(u.size());
        for (std::size_t t = 0; t < u.size(); ++t) {
            auto it = std::lower_bound(content.begin(), content.end(), u[t]);
            u_local[t] = static_cast<Letter>(it - content.begin());
        }
        std::vector<Morphism> quotients;
        quotients.reserve(hs.size());
        Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(fact.positions[j]));
        Word suffix(w.begin() + static_cast<std::ptrdiff_t>(fact.positions[j + 1] - 1), w.end());
        for (const Morphism& h : hs) {
            QuotientGroupResult qg =
                quotient_group(h, content, h.eval(prefix), h.eval(suffix));
            // psi's alphabet must be the content names in content order.
            quotients.push_back(Morphism(content_names, qg.group, qg.psi.images));
        }
        Slp factor_slp = compress_group_word(quotients, u_local,
                                             {opts.lcm_omega, opts.sift_budget});
        parts.push_back(std::move(factor_slp));
    }
    Slp result = slp_concat(inst.alphabet, parts);
    // Postcondition guard: the substituted factors must not have shifted any
    // image. Linear in |w| and in the SLP size, so cheap relative to the
    // construction; a violation is a defect, never a wrong certificate.
    for (const Recognizer& r : inst.recognizers)
        if (eval_morphism(result, r.h) != r.h.eval(w))
            fail("internal", "compressed image diverged from the source word");
    return result;
}

} // namespace monisect
