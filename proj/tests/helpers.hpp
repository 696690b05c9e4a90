#pragma once

#include <gtest/gtest.h>

#include "rankmetric/error.hpp"

#define EXPECT_ERRC(stmt, errc)                                                   \
    do {                                                                          \
        try {                                                                     \
            stmt;                                                                 \
            ADD_FAILURE() << "expected " << rankmetric::errc_name(errc);          \
        } catch (const rankmetric::Error& e_) {                                   \
            EXPECT_EQ(e_.code(), errc) << e_.what();                              \
        }                                                                         \
    } while (0)
