#include "odfact/bfile.hpp"

#include <charconv>
#include <sstream>

namespace odfact {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    const std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::int64_t parse_int(std::string_view tok, std::size_t line, const char* what) {
  std::int64_t v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && tok.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw parse_error("line " + std::to_string(line) + ": invalid " + what + " '" +
                      std::string(tok) + "'");
  }
  return v;
}

}  // namespace

BFile parse_bfile(std::istream& in) {
  BFile out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto tokens = split_ws(raw);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != 2) {
      throw parse_error("line " + std::to_string(line) + ": expected \"index value\", got " +
                        std::to_string(tokens.size()) + " fields");
    }
    BFileEntry entry{parse_int(tokens[0], line, "index"), parse_int(tokens[1], line, "value"),
                     line};
    if (!out.entries.empty() && entry.index <= out.entries.back().index) {
      throw parse_error("line " + std::to_string(line) + ": index " + std::to_string(entry.index) +
                        " does not increase (previous " +
                        std::to_string(out.entries.back().index) + ")");
    }
    out.entries.push_back(entry);
  }
  return out;
}

BFile parse_bfile_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_bfile(in);
}

std::string format_bfile(const Residue2& bits, unsigned n, const std::vector<std::string>& comment) {
  std::ostringstream os;
  for (const auto& c : comment) os << "# " << c << '\n';
  const std::string bbe = bbe_encode(bits, n);
  for (unsigned k = 0; k < n; ++k) os << k << ' ' << bbe[k] << '\n';
  return os.str();
}

}  // namespace odfact
