#pragma once

// Direct matchers for the gadget language shapes, independent of the monoid
// recognizers they validate.

#include <vector>

#include "monisect/morphism.hpp"

namespace oracle {

using monisect::Letter;
using monisect::Word;

struct Sets {
    std::vector<char> b, c, d, e, f; // membership masks over the alphabet

    static Sets over(std::size_t sigma) {
        Sets s;
        s.b.assign(sigma, 0);
        s.c.assign(sigma, 0);
        s.d.assign(sigma, 0);
        s.e.assign(sigma, 0);
        s.f.assign(sigma, 0);
        return s;
    }
};

// E*B(D|E)*
inline bool matches_left(const Sets& s, const Word& w) {
    std::size_t i = 0;
    while (i < w.size() && s.e[w[i]])
        ++i;
    if (i == w.size() || !s.b[w[i]])
        return false;
    for (++i; i < w.size(); ++i)
        if (!s.d[w[i]] && !s.e[w[i]])
            return false;
    return true;
}

// (D|E)*CE*
inline bool matches_right(const Sets& s, const Word& w) {
    std::size_t end = w.size();
    while (end > 0 && s.e[w[end - 1]])
        --end;
    if (end == 0 || !s.c[w[end - 1]])
        return false;
    for (std::size_t i = 0; i + 1 < end; ++i)
        if (!s.d[w[i]] && !s.e[w[i]])
            return false;
    return true;
}

// (E*B(E|F)*CE* | E*DE*)+
inline bool matches_block(const Sets& s, const Word& w) {
    enum { need, in1, done, dead } st = need;
    for (Letter a : w) {
        switch (st) {
        case need:
        case done:
            if (s.e[a])
                ; // stay
            else if (s.b[a])
                st = in1;
            else if (s.d[a])
                st = done;
            else
                st = dead;
            break;
        case in1:
            if (s.e[a] || s.f[a])
                ; // stay
            else if (s.c[a])
                st = done;
            else
                st = dead;
            break;
        case dead:
            break;
        }
        if (st == dead)
            return false;
    }
    return st == done;
}

// (A_1 ... A_n)+
inline bool matches_product(const std::vector<std::vector<char>>& parts, const Word& w) {
    if (w.empty() || w.size() % parts.size() != 0)
        return false;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!parts[i % parts.size()][w[i]])
            return false;
    return true;
}

// S+
inline bool matches_plus(const std::vector<char>& set, const Word& w) {
    if (w.empty())
        return false;
    for (Letter a : w)
        if (!set[a])
            return false;
    return true;
}

// Enumerate all words up to max_len over sigma letters, calling fn on each.
template <typename F>
void all_words(std::size_t sigma, std::size_t max_len, F&& fn) {
    Word w;
    fn(w);
    std::vector<std::size_t> stack;
    for (;;) {
        if (w.size() < max_len) {
            w.push_back(0);
            fn(w);
            continue;
        }
        while (!w.empty() && w.back() + 1 == sigma)
            w.pop_back();
        if (w.empty())
            return;
        ++w.back();
        fn(w);
    }
}

} // namespace oracle
