#include "qtensor/qten_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace qtensor {

namespace {

void write_real(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

// Next non-blank, non-comment line.
bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        return true;
    }
    return false;
}

std::vector<std::int64_t> parse_extents(const std::string& line, const char* key) {
    std::istringstream ss(line);
    std::string head;
    ss >> head;
    if (head != key) {
        throw FormatError("expected '" + std::string(key) + "' line, got: " + line);
    }
    std::vector<std::int64_t> extents;
    std::int64_t e;
    while (ss >> e) extents.push_back(e);
    if (!ss.eof()) {
        throw FormatError("malformed extents on line: " + line);
    }
    if (extents.empty()) {
        throw FormatError(std::string(key) + " shape must list at least one extent");
    }
    return extents;
}

}  // namespace

void write_qten(std::ostream& out, const QuatTensor& t) {
    out << "QTEN 1\n";
    out << "left";
    for (std::int64_t e : t.left().extents()) out << ' ' << e;
    out << "\nright";
    for (std::int64_t e : t.right().extents()) out << ' ' << e;
    out << "\nentries " << t.data().size() << "\n";
    for (const Quaternion& q : t.data()) {
        write_real(out, q.w);
        out << ' ';
        write_real(out, q.x);
        out << ' ';
        write_real(out, q.y);
        out << ' ';
        write_real(out, q.z);
        out << '\n';
    }
}

void write_qten_file(const std::string& path, const QuatTensor& t) {
    std::ofstream out(path);
    if (!out) {
        throw FormatError("cannot open for writing: " + path);
    }
    write_qten(out, t);
    if (!out) {
        throw FormatError("write failed: " + path);
    }
}

QuatTensor read_qten(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) {
        throw FormatError("empty tensor file");
    }
    {
        std::istringstream ss(line);
        std::string magic;
        int version = 0;
        ss >> magic >> version;
        if (magic != "QTEN" || ss.fail()) {
            throw FormatError("missing QTEN header, got: " + line);
        }
        if (version != 1) {
            throw FormatError("unsupported QTEN version " + std::to_string(version));
        }
    }
    if (!next_line(in, line)) throw FormatError("missing left shape");
    Shape left{parse_extents(line, "left")};
    if (!next_line(in, line)) throw FormatError("missing right shape");
    Shape right{parse_extents(line, "right")};
    if (!next_line(in, line)) throw FormatError("missing entries line");
    std::int64_t count = -1;
    {
        std::istringstream ss(line);
        std::string head;
        ss >> head >> count;
        if (head != "entries" || ss.fail()) {
            throw FormatError("expected 'entries <count>', got: " + line);
        }
    }
    QuatTensor t(left, right);
    if (count != static_cast<std::int64_t>(t.data().size())) {
        throw FormatError("entry count " + std::to_string(count) +
                          " does not match shape product " +
                          std::to_string(t.data().size()));
    }
    for (std::int64_t i = 0; i < count; ++i) {
        if (!next_line(in, line)) {
            throw FormatError("unexpected end of file at entry " + std::to_string(i));
        }
        std::istringstream ss(line);
        Quaternion q;
        ss >> q.w >> q.x >> q.y >> q.z;
        if (ss.fail()) {
            throw FormatError("malformed entry line: " + line);
        }
        std::string extra;
        if (ss >> extra) {
            throw FormatError("trailing tokens on entry line: " + line);
        }
        t.data()[static_cast<std::size_t>(i)] = q;
    }
    return t;
}

QuatTensor read_qten_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open tensor file: " + path);
    }
    return read_qten(in);
}

}  // namespace qtensor
