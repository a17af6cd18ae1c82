#include "krrlab/format.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace krrlab {

std::string format_real(double value)
{
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                   std::chars_format::general, 17);
    if (ec != std::errc{})
        throw std::runtime_error("format_real: conversion failed");
    return std::string(buffer, end);
}

double parse_real(std::string_view text)
{
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw std::invalid_argument("not a real number: '" + std::string(text) + "'");
    return value;
}

long long parse_integer(std::string_view text)
{
    long long value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    return value;
}

} // namespace krrlab
