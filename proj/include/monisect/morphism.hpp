#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monisect/error.hpp"
#include "monisect/monoid.hpp"

namespace monisect {

using Letter = std::uint32_t;
using Word = std::vector<Letter>; // indices into an alphabet

// Letter-indexed map from a finite alphabet into a finite monoid; extends to
// words as the unique monoid morphism.
struct Morphism {
    std::vector<std::string> alphabet;
    Monoid target;
    std::vector<Elem> images; // aligned with alphabet

    Morphism(std::vector<std::string> alphabet_, Monoid target_, std::vector<Elem> images_)
        : alphabet(std::move(alphabet_)), target(std::move(target_)), images(std::move(images_)) {
        if (images.size() != alphabet.size())
            fail("bad_morphism", "every alphabet letter needs exactly one image");
        for (Elem e : images)
            if (e >= target.size())
                fail("index_out_of_range", "letter image out of range");
    }

    std::optional<Letter> letter_index(const std::string& name) const {
        for (Letter i = 0; i < alphabet.size(); ++i)
            if (alphabet[i] == name)
                return i;
        return std::nullopt;
    }

    Elem of_letter(Letter a) const {
        if (a >= alphabet.size())
            fail("unknown_letter", "letter index " + std::to_string(a) + " outside alphabet");
        return images[a];
    }

    Elem eval(const Word& w) const {
        Elem acc = target.identity();
        for (Letter a : w)
            acc = target.mul(acc, of_letter(a));
        return acc;
    }
};

inline Letter require_letter(const std::vector<std::string>& alphabet, const std::string& name) {
    for (Letter i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == name)
            return i;
    fail("unknown_letter", "no letter named " + name);
}

inline Word alph_of(const Word& w) {
    Word content(w);
    std::sort(content.begin(), content.end());
    content.erase(std::unique(content.begin(), content.end()), content.end());
    return content;
}

} // namespace monisect
