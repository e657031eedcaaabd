#include "qtensor/quaternion.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace qtensor {

std::string to_string(Quaternion q) {
    char buf[32];
    std::string out;
    auto append = [&](double v, const char* suffix, bool first) {
        if (!first) {
            out += std::signbit(v) ? '-' : '+';
            v = std::fabs(v);
        }
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out += buf;
        out += suffix;
    };
    append(q.w, "", true);
    append(q.x, "i", false);
    append(q.y, "j", false);
    append(q.z, "k", false);
    return out;
}

namespace {

void skip_ws(const std::string& s, size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

}  // namespace

Quaternion parse_quaternion(const std::string& text) {
    Quaternion q;
    bool seen[4] = {false, false, false, false};
    size_t pos = 0;
    skip_ws(text, pos);
    bool first = true;
    while (pos < text.size()) {
        double sign = 1.0;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1.0 : 1.0;
            ++pos;
            skip_ws(text, pos);
        } else if (!first) {
            throw FormatError("quaternion: expected sign between terms in '" + text + "'");
        }
        const char* start = text.c_str() + pos;
        char* end = nullptr;
        double value = std::strtod(start, &end);
        if (end == start) {
            // A bare imaginary unit such as "i" or "-j".
            value = 1.0;
        } else {
            pos += static_cast<size_t>(end - start);
        }
        skip_ws(text, pos);
        int slot = 0;
        if (pos < text.size() &&
            (text[pos] == 'i' || text[pos] == 'j' || text[pos] == 'k')) {
            slot = text[pos] == 'i' ? 1 : text[pos] == 'j' ? 2 : 3;
            ++pos;
        }
        if (seen[slot]) {
            throw FormatError("quaternion: duplicate component in '" + text + "'");
        }
        seen[slot] = true;
        double* comps[4] = {&q.w, &q.x, &q.y, &q.z};
        *comps[slot] = sign * value;
        skip_ws(text, pos);
        first = false;
    }
    if (first) {
        throw FormatError("quaternion: empty input");
    }
    return q;
}

const char* to_string(ImaginaryUnit eta) {
    switch (eta) {
        case ImaginaryUnit::i: return "i";
        case ImaginaryUnit::j: return "j";
        default: return "k";
    }
}

ImaginaryUnit parse_imaginary_unit(const std::string& text) {
    if (text == "i") return ImaginaryUnit::i;
    if (text == "j") return ImaginaryUnit::j;
    if (text == "k") return ImaginaryUnit::k;
    throw FormatError("imaginary unit must be one of i, j, k: got '" + text + "'");
}

}  // namespace qtensor
