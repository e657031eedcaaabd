#pragma once

#include <iosfwd>
#include <string>

#include "qtensor/quat_tensor.hpp"

namespace qtensor {

// QTEN text format, version 1:
//
//   QTEN 1
//   left 2 2
//   right 3 2
//   entries 24
//   <w> <x> <y> <z>          one line per entry
//   ...
//
// Entries appear in storage order: linearized left index fastest, then the
// linearized right index. Reals are written with 17 significant digits, so a
// write/read round trip reproduces every double bit-exactly. Blank lines and
// lines starting with '#' are ignored on input. A matrix is a tensor with
// singleton shapes: left [rows], right [cols].
void write_qten(std::ostream& out, const QuatTensor& t);
void write_qten_file(const std::string& path, const QuatTensor& t);

QuatTensor read_qten(std::istream& in);
QuatTensor read_qten_file(const std::string& path);

}  // namespace qtensor
