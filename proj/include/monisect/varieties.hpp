#pragma once

/// @file varieties.hpp
/// Membership tests for the varieties G (groups), A (aperiodic), DS and DO,
/// with violating witnesses on failure. DS comes in four equivalent
/// characterizations; the fourth (division by B21 of the square) is gated by
/// the exponential `divides` search and therefore opt-in.

#include <optional>
#include <utility>

#include "monisect/monoid.hpp"

namespace monisect {

struct VarietyReport {
    bool is_group = false;
    bool is_aperiodic = false;
    bool in_ds = false;
    bool in_do = false;
    std::optional<bool> ds_char4;                     // present only when computed
    std::optional<Elem> group_witness;                // non-identity idempotent
    std::optional<Elem> aperiodic_witness;            // m with m^w != m^(w+1)
    std::optional<std::pair<Elem, Elem>> ds_witness;  // idempotent pair
    std::optional<std::pair<Elem, Elem>> do_witness;  // idempotent pair
};

// G: the only idempotent is the identity.
inline bool is_group(const Monoid& m, Elem* witness = nullptr) {
    for (Elem e : m.idempotents())
        if (e != m.identity()) {
            if (witness)
                *witness = e;
            return false;
        }
    return true;
}

// A: m^w = m^(w+1) for every m.
inline bool is_aperiodic(const Monoid& m, Elem* witness = nullptr) {
    for (Elem x = 0; x < m.size(); ++x) {
        Elem w = m.omega_power(x);
        if (m.mul(w, x) != w) {
            if (witness)
                *witness = x;
            return false;
        }
    }
    return true;
}

// DS: J-equivalent idempotents e, f satisfy (efe)^w = e.
inline bool in_ds(const Monoid& m, std::pair<Elem, Elem>* witness = nullptr) {
    auto idem = m.idempotents();
    auto below = m.j_matrix();
    const std::size_t n = m.size();
    for (Elem e : idem)
        for (Elem f : idem) {
            if (!(below[e * n + f] && below[f * n + e]))
                continue;
            Elem efe = m.mul(m.mul(e, f), e);
            if (m.omega_power(efe) != e) {
                if (witness)
                    *witness = {e, f};
                return false;
            }
        }
    return true;
}

// DS, second characterization: (exe)^w = e for every idempotent e and every
// x above it in the J order.
inline bool in_ds_char2(const Monoid& m) {
    auto below = m.j_matrix();
    const std::size_t n = m.size();
    for (Elem e : m.idempotents())
        for (Elem x = 0; x < n; ++x) {
            if (!below[e * n + x])
                continue;
            if (m.omega_power(m.mul(m.mul(e, x), e)) != e)
                return false;
        }
    return true;
}

// DS, third characterization: for each idempotent e, the elements J-above e
// form a submonoid.
inline bool in_ds_char3(const Monoid& m) {
    auto below = m.j_matrix();
    const std::size_t n = m.size();
    for (Elem e : m.idempotents()) {
        std::vector<Elem> above;
        for (Elem x = 0; x < n; ++x)
            if (below[e * n + x])
                above.push_back(x);
        for (Elem x : above)
            for (Elem y : above)
                if (!below[e * n + m.mul(x, y)])
                    return false;
    }
    return true;
}

// DS, fourth characterization: B21 does not divide M x M. Desk scale only.
inline bool in_ds_char4(const Monoid& m, std::size_t cap = 64) {
    return !divides(b21(), direct_product(m, m), cap);
}

// DO: J-equivalent idempotents e, f satisfy efe = e.
inline bool in_do(const Monoid& m, std::pair<Elem, Elem>* witness = nullptr) {
    auto idem = m.idempotents();
    auto below = m.j_matrix();
    const std::size_t n = m.size();
    for (Elem e : idem)
        for (Elem f : idem) {
            if (!(below[e * n + f] && below[f * n + e]))
                continue;
            if (m.mul(m.mul(e, f), e) != e) {
                if (witness)
                    *witness = {e, f};
                return false;
            }
        }
    return true;
}

inline VarietyReport classify(const Monoid& m, bool with_char4 = false, std::size_t char4_cap = 64) {
    VarietyReport r;
    Elem ge = 0, ae = 0;
    std::pair<Elem, Elem> dsw, dow;
    r.is_group = is_group(m, &ge);
    if (!r.is_group)
        r.group_witness = ge;
    r.is_aperiodic = is_aperiodic(m, &ae);
    if (!r.is_aperiodic)
        r.aperiodic_witness = ae;
    r.in_ds = in_ds(m, &dsw);
    if (!r.in_ds)
        r.ds_witness = dsw;
    r.in_do = in_do(m, &dow);
    if (!r.in_do)
        r.do_witness = dow;
    if (with_char4)
        r.ds_char4 = in_ds_char4(m, char4_cap);
    return r;
}

} // namespace monisect
