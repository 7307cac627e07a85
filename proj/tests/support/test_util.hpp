#pragma once

#include <doctest.h>

#include <string>

#include "monisect/error.hpp"

// Assert that fn throws a monisect::error carrying the given code.
template <typename F>
void expect_error(const std::string& code, F&& fn) {
    try {
        fn();
        FAIL_CHECK("expected error with code " << code);
    } catch (const monisect::error& e) {
        CHECK(e.code() == code);
    }
}
