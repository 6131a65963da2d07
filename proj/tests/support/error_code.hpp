#pragma once

#include <gtest/gtest.h>

#include "qui/errors.hpp"

namespace qui::test {

/// Code of the qui::Error raised by f; records a failure if nothing is thrown.
template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no qui::Error thrown";
    return ErrorCode::ParseError;
}

} // namespace qui::test
