#pragma once

#include "doctest.h"

#include "fano/rational.hpp"

#include <string>
#include <vector>

namespace doctest {

template <>
struct StringMaker<std::vector<std::string>> {
    static String convert(const std::vector<std::string>& v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
        return (s + "]").c_str();
    }
};

template <>
struct StringMaker<fano::Rational> {
    static String convert(const fano::Rational& r) { return r.str().c_str(); }
};

}  // namespace doctest
