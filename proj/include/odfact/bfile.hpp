#pragma once

// OEIS b-file text: optional '#' comment lines, then "index value" pairs,
// one per line, indices strictly increasing.

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "odfact/bitring.hpp"

namespace odfact {

struct BFileEntry {
  std::int64_t index = 0;
  std::int64_t value = 0;
  std::size_t line = 0;  // 1-based source line
};

struct BFile {
  std::vector<BFileEntry> entries;
};

/// Throws parse_error("line N: ...") on malformed input.
BFile parse_bfile(std::istream& in);
BFile parse_bfile_text(std::string_view text);

/// Bits 0 .. n-1 of `bits` as b-file lines "k bit", preceded by `comment`
/// lines (each prefixed with "# ").
std::string format_bfile(const Residue2& bits, unsigned n, const std::vector<std::string>& comment);

}  // namespace odfact
