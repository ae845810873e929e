#pragma once
#ifndef CFPROB_FORMAT_HPP
#define CFPROB_FORMAT_HPP

#include <charconv>
#include <cstdio>
#include <string>

namespace cfprob {

/// 10 significant digits; the form every query result is printed in.
inline std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

/// Shortest decimal that reads back to the same double.
inline std::string format_exact(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace cfprob

#endif  // CFPROB_FORMAT_HPP
