#pragma once

/// @file json_io.hpp
/// JSON schemas for every serializable type. Parsers validate eagerly (the
/// monoid parser runs the full associativity scan unless told otherwise) and
/// throw `error` with code "parse_error" for shape problems.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "monisect/error.hpp"
#include "monisect/instance.hpp"
#include "monisect/models.hpp"
#include "monisect/monoid.hpp"
#include "monisect/morphism.hpp"
#include "monisect/slp.hpp"
#include "monisect/tiling.hpp"
#include "monisect/varieties.hpp"

namespace monisect {

using json = nlohmann::json;

// Resolves "monoid": "<path>" references inside morphisms.
using JsonLoader = std::function<json(const std::string&)>;

namespace jsondetail {

inline const json& member(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        fail("parse_error", std::string("missing field \"") + key + "\"");
    return *it;
}

inline std::vector<std::string> string_array(const json& j, const char* what) {
    if (!j.is_array())
        fail("parse_error", std::string(what) + " must be an array");
    std::vector<std::string> out;
    for (const auto& v : j) {
        if (!v.is_string())
            fail("parse_error", std::string(what) + " entries must be strings");
        out.push_back(v.get<std::string>());
    }
    // Names act as identifiers, so aliasing would silently corrupt tables.
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t k = i + 1; k < out.size(); ++k)
            if (out[i] == out[k])
                fail("parse_error", std::string(what) + " contains a duplicate: " + out[i]);
    return out;
}

} // namespace jsondetail

// ---------------------------------------------------------------------------
// Monoid

inline json monoid_to_json(const Monoid& m) {
    json j;
    j["elements"] = m.names();
    j["identity"] = m.name(m.identity());
    json table = json::array();
    for (Elem a = 0; a < m.size(); ++a) {
        json row = json::array();
        for (Elem b = 0; b < m.size(); ++b)
            row.push_back(m.name(m.mul(a, b)));
        table.push_back(std::move(row));
    }
    j["table"] = std::move(table);
    return j;
}

inline Monoid monoid_from_json(const json& j, bool check_associativity = true) {
    using jsondetail::member;
    auto names = jsondetail::string_array(member(j, "elements"), "elements");
    std::vector<Elem> idx_table;
    auto find = [&](const std::string& name) -> Elem {
        for (Elem i = 0; i < names.size(); ++i)
            if (names[i] == name)
                return i;
        fail("parse_error", "unknown element name " + name);
    };
    const json& table = member(j, "table");
    if (!table.is_array() || table.size() != names.size())
        fail("parse_error", "table must have one row per element");
    for (const auto& row : table) {
        if (!row.is_array() || row.size() != names.size())
            fail("parse_error", "table rows must have one entry per element");
        for (const auto& cell : row) {
            if (!cell.is_string())
                fail("parse_error", "table entries must be element names");
            idx_table.push_back(find(cell.get<std::string>()));
        }
    }
    Elem identity = find(member(j, "identity").get<std::string>());
    if (check_associativity)
        return Monoid(std::move(names), identity, std::move(idx_table));
    return Monoid(std::move(names), identity, std::move(idx_table), Monoid::unchecked);
}

// ---------------------------------------------------------------------------
// Morphism

inline json morphism_to_json(const Morphism& h) {
    json j;
    j["alphabet"] = h.alphabet;
    j["monoid"] = monoid_to_json(h.target);
    json images = json::object();
    for (Letter a = 0; a < h.alphabet.size(); ++a)
        images[h.alphabet[a]] = h.target.name(h.images[a]);
    j["images"] = std::move(images);
    return j;
}

inline Morphism morphism_from_json(const json& j, const JsonLoader& loader = nullptr,
                                   bool check_associativity = true) {
    using jsondetail::member;
    auto alphabet = jsondetail::string_array(member(j, "alphabet"), "alphabet");
    const json& mj = member(j, "monoid");
    Monoid target = [&] {
        if (mj.is_string()) {
            if (!loader)
                fail("parse_error", "monoid file references are not allowed here");
            return monoid_from_json(loader(mj.get<std::string>()), check_associativity);
        }
        return monoid_from_json(mj, check_associativity);
    }();
    const json& images = member(j, "images");
    if (!images.is_object())
        fail("parse_error", "images must map letters to element names");
    std::vector<Elem> im;
    for (const std::string& a : alphabet) {
        auto it = images.find(a);
        if (it == images.end())
            fail("parse_error", "letter " + a + " has no image");
        im.push_back(target.require(it->get<std::string>()));
    }
    if (images.size() != alphabet.size())
        fail("parse_error", "images must cover exactly the alphabet");
    return Morphism(std::move(alphabet), std::move(target), std::move(im));
}

// ---------------------------------------------------------------------------
// Words

inline json word_to_json(const std::vector<std::string>& alphabet, const Word& w) {
    bool single_char = true;
    for (const std::string& a : alphabet)
        if (a.size() != 1)
            single_char = false;
    if (single_char) {
        std::string s;
        for (Letter a : w)
            s += alphabet[a];
        return json(s);
    }
    json arr = json::array();
    for (Letter a : w)
        arr.push_back(alphabet[a]);
    return arr;
}

inline Word word_from_json(const std::vector<std::string>& alphabet, const json& j) {
    Word w;
    if (j.is_string()) {
        for (char c : j.get<std::string>())
            w.push_back(require_letter(alphabet, std::string(1, c)));
        return w;
    }
    if (!j.is_array())
        fail("parse_error", "a word must be a string or an array of letters");
    for (const auto& v : j) {
        if (!v.is_string())
            fail("parse_error", "word entries must be letter names");
        w.push_back(require_letter(alphabet, v.get<std::string>()));
    }
    return w;
}

// ---------------------------------------------------------------------------
// Instance

inline json instance_to_json(const Instance& inst) {
    json j;
    j["alphabet"] = inst.alphabet;
    json recs = json::array();
    for (const Recognizer& r : inst.recognizers) {
        json rj;
        rj["morphism"] = morphism_to_json(r.h);
        json acc = json::array();
        for (Elem p : r.accepting)
            acc.push_back(r.h.target.name(p));
        rj["accepting"] = std::move(acc);
        recs.push_back(std::move(rj));
    }
    j["recognizers"] = std::move(recs);
    return j;
}

inline Instance instance_from_json(const json& j, const JsonLoader& loader = nullptr,
                                   bool check_associativity = true) {
    using jsondetail::member;
    Instance inst;
    inst.alphabet = jsondetail::string_array(member(j, "alphabet"), "alphabet");
    const json& recs = member(j, "recognizers");
    if (!recs.is_array() || recs.empty())
        fail("parse_error", "recognizers must be a non-empty array");
    for (const auto& rj : recs) {
        Morphism h = morphism_from_json(member(rj, "morphism"), loader, check_associativity);
        std::vector<Elem> acc;
        for (const auto& p : member(rj, "accepting")) {
            if (!p.is_string())
                fail("parse_error", "accepting entries must be element names");
            acc.push_back(h.target.require(p.get<std::string>()));
        }
        inst.recognizers.push_back({std::move(h), std::move(acc)});
    }
    inst.check();
    return inst;
}

// Group tuples: instance-shaped input without accepting sets.
inline json group_tuple_to_json(const std::vector<Morphism>& hs) {
    json j;
    j["alphabet"] = hs.empty() ? std::vector<std::string>{} : hs[0].alphabet;
    json ms = json::array();
    for (const Morphism& h : hs)
        ms.push_back(morphism_to_json(h));
    j["morphisms"] = std::move(ms);
    return j;
}

inline std::vector<Morphism> group_tuple_from_json(const json& j,
                                                   const JsonLoader& loader = nullptr) {
    using jsondetail::member;
    std::vector<Morphism> hs;
    for (const auto& mj : member(j, "morphisms"))
        hs.push_back(morphism_from_json(mj, loader));
    if (hs.empty())
        fail("parse_error", "morphisms must be a non-empty array");
    return hs;
}

// ---------------------------------------------------------------------------
// SLP

inline json slp_to_json(const Slp& s) {
    json j;
    j["alphabet"] = s.alphabet;
    j["variables"] = s.variables;
    json rules = json::object();
    for (std::size_t v = 0; v < s.variables.size(); ++v) {
        json rule = json::array();
        for (const Slp::Sym& sym : s.rules[v]) {
            json e = json::object();
            if (sym.is_var)
                e["v"] = s.variables[sym.idx];
            else
                e["t"] = s.alphabet[sym.idx];
            rule.push_back(std::move(e));
        }
        rules[s.variables[v]] = std::move(rule);
    }
    j["rules"] = std::move(rules);
    j["start"] = s.variables[s.start];
    return j;
}

inline Slp slp_from_json(const json& j) {
    using jsondetail::member;
    Slp s;
    s.alphabet = jsondetail::string_array(member(j, "alphabet"), "alphabet");
    s.variables = jsondetail::string_array(member(j, "variables"), "variables");
    auto var_index = [&](const std::string& name) -> std::uint32_t {
        for (std::uint32_t i = 0; i < s.variables.size(); ++i)
            if (s.variables[i] == name)
                return i;
        fail("undeclared_symbol", "unknown variable " + name);
    };
    const json& rules = member(j, "rules");
    s.rules.resize(s.variables.size());
    for (std::uint32_t v = 0; v < s.variables.size(); ++v) {
        auto it = rules.find(s.variables[v]);
        if (it == rules.end())
            fail("parse_error", "variable " + s.variables[v] + " has no rule");
        for (const auto& e : *it) {
            if (e.contains("t"))
                s.rules[v].push_back(
                    Slp::Sym::term(require_letter(s.alphabet, e["t"].get<std::string>())));
            else if (e.contains("v"))
                s.rules[v].push_back(Slp::Sym::var(var_index(e["v"].get<std::string>())));
            else
                fail("parse_error", "rule symbols need a \"t\" or \"v\" field");
        }
    }
    if (rules.size() != s.variables.size())
        fail("parse_error", "rules must cover exactly the declared variables");
    s.start = var_index(member(j, "start").get<std::string>());
    // The declared order must already be topological; re-validate both ways.
    topological_order(s);
    for (std::uint32_t v = 0; v < s.variables.size(); ++v)
        for (const Slp::Sym& sym : s.rules[v])
            if (sym.is_var && sym.idx >= v)
                fail("cycle", "serialized variable order is not topological");
    return s;
}

// ---------------------------------------------------------------------------
// DFA and transformations

inline json dfa_to_json(const Dfa& d) {
    json j;
    j["states"] = d.states;
    j["alphabet"] = d.alphabet;
    j["initial"] = d.states[d.initial];
    json acc = json::array();
    for (std::uint32_t q : d.accepting)
        acc.push_back(d.states[q]);
    j["accepting"] = std::move(acc);
    json delta = json::object();
    for (std::uint32_t q = 0; q < d.states.size(); ++q) {
        json row = json::object();
        for (Letter a = 0; a < d.alphabet.size(); ++a)
            row[d.alphabet[a]] = d.states[d.step(q, a)];
        delta[d.states[q]] = std::move(row);
    }
    j["delta"] = std::move(delta);
    return j;
}

inline Dfa dfa_from_json(const json& j) {
    using jsondetail::member;
    Dfa d;
    d.states = jsondetail::string_array(member(j, "states"), "states");
    d.alphabet = jsondetail::string_array(member(j, "alphabet"), "alphabet");
    auto state_index = [&](const std::string& name) -> std::uint32_t {
        for (std::uint32_t i = 0; i < d.states.size(); ++i)
            if (d.states[i] == name)
                return i;
        fail("parse_error", "unknown state " + name);
    };
    d.initial = state_index(member(j, "initial").get<std::string>());
    for (const auto& q : member(j, "accepting"))
        d.accepting.push_back(state_index(q.get<std::string>()));
    d.delta.resize(d.states.size() * d.alphabet.size());
    const json& delta = member(j, "delta");
    for (std::uint32_t q = 0; q < d.states.size(); ++q) {
        auto row = delta.find(d.states[q]);
        if (row == delta.end())
            fail("parse_error", "state " + d.states[q] + " has no transitions");
        for (Letter a = 0; a < d.alphabet.size(); ++a) {
            auto cell = row->find(d.alphabet[a]);
            if (cell == row->end())
                fail("parse_error", "missing transition for letter " + d.alphabet[a]);
            d.delta[q * d.alphabet.size() + a] = state_index(cell->get<std::string>());
        }
    }
    d.check();
    return d;
}

inline json transformation_to_json(const Transformation& t) {
    json j;
    j["n"] = t.n;
    j["map"] = t.map;
    return j;
}

inline Transformation transformation_from_json(const json& j) {
    using jsondetail::member;
    Transformation t;
    t.n = member(j, "n").get<std::uint32_t>();
    t.map = member(j, "map").get<std::vector<std::uint32_t>>();
    t.check();
    return t;
}

// ---------------------------------------------------------------------------
// Tiling systems

inline json tiling_system_to_json(const TilingSystem& ts) {
    json j;
    j["labels"] = ts.labels;
    json tiles = json::array();
    for (const Tile& t : ts.tiles) {
        json tj;
        tj["w"] = ts.labels[t.w];
        tj["e"] = ts.labels[t.e];
        tj["s"] = ts.labels[t.s];
        tj["n"] = ts.labels[t.n];
        tiles.push_back(std::move(tj));
    }
    j["tiles"] = std::move(tiles);
    j["width"] = ts.width;
    j["first"] = ts.first;
    j["bottom"] = ts.bottom;
    return j;
}

inline TilingSystem tiling_system_from_json(const json& j) {
    using jsondetail::member;
    TilingSystem ts;
    ts.labels = jsondetail::string_array(member(j, "labels"), "labels");
    auto label_index = [&](const json& v) -> std::uint32_t {
        if (!v.is_string())
            fail("parse_error", "tile labels must be strings");
        for (std::uint32_t i = 0; i < ts.labels.size(); ++i)
            if (ts.labels[i] == v.get<std::string>())
                return i;
        fail("parse_error", "unknown label " + v.get<std::string>());
    };
    for (const auto& tj : member(j, "tiles")) {
        Tile t;
        t.w = label_index(member(tj, "w"));
        t.e = label_index(member(tj, "e"));
        t.s = label_index(member(tj, "s"));
        t.n = label_index(member(tj, "n"));
        ts.tiles.push_back(t);
    }
    ts.width = member(j, "width").get<std::uint32_t>();
    ts.first = member(j, "first").get<std::vector<std::uint32_t>>();
    ts.bottom = member(j, "bottom").get<std::vector<std::uint32_t>>();
    ts.check();
    return ts;
}

inline json tiling_to_json(const Tiling& t) {
    json j;
    j["rows"] = t.rows;
    json grid = json::array();
    for (std::uint32_t r = 0; r < t.rows; ++r) {
        json row = json::array();
        for (std::uint32_t c = 0; c < t.cols; ++c)
            row.push_back(t.at(r, c));
        grid.push_back(std::move(row));
    }
    j["grid"] = std::move(grid);
    return j;
}

inline Tiling tiling_from_json(const json& j, std::uint32_t width) {
    using jsondetail::member;
    Tiling t;
    t.rows = member(j, "rows").get<std::uint32_t>();
    t.cols = width;
    const json& grid = member(j, "grid");
    if (!grid.is_array() || grid.size() != t.rows)
        fail("parse_error", "grid must have exactly \"rows\" rows");
    for (const auto& row : grid) {
        if (!row.is_array() || row.size() != width)
            fail("parse_error", "grid rows must match the system width");
        for (const auto& cell : row)
            t.grid.push_back(cell.get<std::uint32_t>());
    }
    return t;
}

// ---------------------------------------------------------------------------
// Variety reports

inline json variety_report_to_json(const Monoid& m, const VarietyReport& r) {
    json j;
    j["is_group"] = r.is_group;
    j["is_aperiodic"] = r.is_aperiodic;
    j["in_DS"] = r.in_ds;
    j["in_DO"] = r.in_do;
    if (r.ds_char4)
        j["in_DS_char4"] = *r.ds_char4;
    json w = json::object();
    if (r.group_witness)
        w["group"] = m.name(*r.group_witness);
    if (r.aperiodic_witness)
        w["aperiodic"] = m.name(*r.aperiodic_witness);
    if (r.ds_witness)
        w["DS"] = json::array({m.name(r.ds_witness->first), m.name(r.ds_witness->second)});
    if (r.do_witness)
        w["DO"] = json::array({m.name(r.do_witness->first), m.name(r.do_witness->second)});
    j["witnesses"] = std::move(w);
    return j;
}

} // namespace monisect
