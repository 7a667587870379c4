#include "wlspec/graph6.hpp"

#include <cstdint>

#include "wlspec/errors.hpp"

namespace wlspec {
namespace {

constexpr std::string_view kHeader = ">>graph6<<";
constexpr std::uint64_t kMaxOrder = 100000;

int sixbits(std::string_view text, std::size_t pos) {
  unsigned char c = static_cast<unsigned char>(text[pos]);
  if (c < 63 || c > 126) {
    throw ParseError(pos, "character " + std::to_string(c) + " outside graph6 range 63..126");
  }
  return c - 63;
}

}  // namespace

Graph parse_graph6(std::string_view text) {
  std::size_t pos = 0;
  if (text.substr(0, kHeader.size()) == kHeader) pos = kHeader.size();
  std::size_t end = text.size();
  if (end > pos && text[end - 1] == '\n') --end;
  if (end > pos && text[end - 1] == '\r') --end;
  if (pos >= end) throw ParseError(pos, "missing vertex count");

  std::uint64_t n = 0;
  int first = sixbits(text, pos);
  if (first < 63) {
    n = static_cast<std::uint64_t>(first);
    pos += 1;
  } else {
    std::size_t width = 3;
    std::size_t start = pos + 1;
    if (start < end && text[start] == '~') {
      width = 6;
      start += 1;
    }
    if (start + width > end) throw ParseError(end, "truncated vertex count");
    for (std::size_t i = 0; i < width; ++i) n = (n << 6) | static_cast<std::uint64_t>(sixbits(text, start + i));
    if (n > kMaxOrder) throw ParseError(pos, "vertex count " + std::to_string(n) + " exceeds supported maximum");
    pos = start + width;
  }

  std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  std::size_t bytes = static_cast<std::size_t>((bits + 5) / 6);
  if (end - pos < bytes) throw ParseError(end, "truncated adjacency data: expected " + std::to_string(bytes) + " bytes");
  if (end - pos > bytes) throw ParseError(pos + bytes, "trailing bytes after adjacency data");

  int nv = static_cast<int>(n);
  std::vector<Edge> edges;
  std::uint64_t k = 0;
  for (int j = 1; j < nv; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      std::size_t at = pos + static_cast<std::size_t>(k / 6);
      int value = sixbits(text, at);
      if (value & (32 >> (k % 6))) edges.emplace_back(i, j);
    }
  }
  for (std::size_t b = 0; b < bytes; ++b) sixbits(text, pos + b);
  if (bits % 6 != 0) {
    int last = sixbits(text, pos + bytes - 1);
    int padding = static_cast<int>(6 - bits % 6);
    if (last & ((1 << padding) - 1)) throw ParseError(pos + bytes - 1, "non-zero padding bits");
  }
  return Graph(nv, std::move(edges));
}

std::string serialize_graph6(const Graph& g) {
  std::string out;
  auto n = static_cast<std::uint64_t>(g.order());
  if (n < 63) {
    out.push_back(static_cast<char>(63 + n));
  } else if (n < 258048) {
    out.push_back('~');
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(63 + ((n >> s) & 63)));
  } else {
    out += "~~";
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(63 + ((n >> s) & 63)));
  }
  int value = 0;
  int filled = 0;
  for (int j = 1; j < g.order(); ++j) {
    for (int i = 0; i < j; ++i) {
      value = (value << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + value));
        value = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(63 + (value << (6 - filled))));
  return out;
}

}  // namespace wlspec
