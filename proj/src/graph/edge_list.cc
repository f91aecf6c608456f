#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "irusim/graph/graph.h"

namespace irusim {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool parse_u64(std::string_view tok, std::uint64_t& out) {
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size();
}

bool parse_double(std::string_view tok, double& out) {
  // from_chars for floating point is available in libstdc++ 11.
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size();
}

template <typename Fn>
void for_each_line(const std::string& text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line_no;
    std::string_view line(text.data() + pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!fn(line, line_no)) return;
    if (end == text.size()) break;
    pos = end + 1;
  }
}

}  // namespace

EdgeList parse_matrix_market(const std::string& text) {
  enum class Field { kReal, kInteger, kPattern };
  enum class Symmetry { kGeneral, kSymmetric };
  Field field = Field::kPattern;
  Symmetry symmetry = Symmetry::kGeneral;
  bool have_header = false;
  bool have_size = false;
  std::uint64_t rows = 0, cols = 0, nnz = 0, seen = 0;
  EdgeList out;

  for_each_line(text, [&](std::string_view line, std::size_t no) {
    if (!have_header) {
      auto tok = split_ws(line);
      if (tok.size() != 5 || tok[0] != "%%MatrixMarket") {
        throw ParseError("malformed header, expected %%MatrixMarket matrix coordinate <field> <symmetry>", no);
      }
      if (lower(tok[1]) != "matrix" || lower(tok[2]) != "coordinate") {
        throw ParseError("malformed header, only 'matrix coordinate' is supported", no);
      }
      std::string f = lower(tok[3]);
      if (f == "real" || f == "double") field = Field::kReal;
      else if (f == "integer") field = Field::kInteger;
      else if (f == "pattern") field = Field::kPattern;
      else throw ParseError("malformed header, unsupported field '" + f + "'", no);
      std::string s = lower(tok[4]);
      if (s == "general") symmetry = Symmetry::kGeneral;
      else if (s == "symmetric") symmetry = Symmetry::kSymmetric;
      else throw ParseError("malformed header, unsupported symmetry '" + s + "'", no);
      have_header = true;
      return true;
    }
    auto tok = split_ws(line);
    if (tok.empty() || tok[0].front() == '%') return true;
    if (!have_size) {
      if (tok.size() != 3 || !parse_u64(tok[0], rows) || !parse_u64(tok[1], cols) ||
          !parse_u64(tok[2], nnz)) {
        throw ParseError("malformed size line", no);
      }
      have_size = true;
      out.num_nodes = std::max(rows, cols);
      out.edges.reserve(symmetry == Symmetry::kSymmetric ? 2 * nnz : nnz);
      return true;
    }
    const std::size_t want = field == Field::kPattern ? 2 : 3;
    if (tok.size() < want) throw ParseError("missing entry value", no);
    std::uint64_t r = 0, c = 0;
    if (!parse_u64(tok[0], r) || !parse_u64(tok[1], c)) {
      throw ParseError("non-integer coordinate", no);
    }
    if (r == 0 || c == 0 || r > rows || c > cols) throw ParseError("coordinate out of bounds", no);
    std::optional<float> w;
    if (field != Field::kPattern) {
      double v = 0;
      if (field == Field::kInteger) {
        long long iv = 0;
        auto [p, ec] = std::from_chars(tok[2].data(), tok[2].data() + tok[2].size(), iv);
        if (ec != std::errc() || p != tok[2].data() + tok[2].size()) {
          throw ParseError("non-integer value", no);
        }
        v = static_cast<double>(iv);
      } else if (!parse_double(tok[2], v)) {
        throw ParseError("non-numeric value", no);
      }
      w = static_cast<float>(v);
    }
    // MatrixMarket entry (i, j) is the edge row i -> column j, 1-based.
    const auto src = static_cast<NodeId>(r - 1);
    const auto dst = static_cast<NodeId>(c - 1);
    out.edges.push_back({src, dst, w});
    if (symmetry == Symmetry::kSymmetric && src != dst) out.edges.push_back({dst, src, w});
    ++seen;
    return true;
  });

  if (!have_header) throw ParseError("empty file, missing MatrixMarket header", 1);
  if (!have_size) throw ParseError("missing size line", 1);
  if (seen != nnz) {
    throw ParseError("declared " + std::to_string(nnz) + " entries, found " + std::to_string(seen), 0);
  }
  return out;
}

EdgeList load_matrix_market(const std::filesystem::path& path) {
  return parse_matrix_market(read_file(path));
}

EdgeList parse_edge_list(const std::string& text) {
  EdgeList out;
  std::uint64_t max_id = 0;
  bool any = false;
  for_each_line(text, [&](std::string_view line, std::size_t no) {
    auto tok = split_ws(line);
    if (tok.empty() || tok[0].front() == '#') return true;
    if (tok.size() < 2 || tok.size() > 3) throw ParseError("expected 'src dst [weight]'", no);
    std::uint64_t s = 0, d = 0;
    if (!parse_u64(tok[0], s) || !parse_u64(tok[1], d)) throw ParseError("non-numeric token", no);
    if (s >= kMaxIndexDomain || d >= kMaxIndexDomain) throw ParseError("node id exceeds 24-bit limit", no);
    std::optional<float> w;
    if (tok.size() == 3) {
      double v = 0;
      if (!parse_double(tok[2], v)) throw ParseError("non-numeric token", no);
      w = static_cast<float>(v);
    }
    out.edges.push_back({static_cast<NodeId>(s), static_cast<NodeId>(d), w});
    max_id = std::max({max_id, s, d});
    any = true;
    return true;
  });
  out.num_nodes = any ? max_id + 1 : 0;
  return out;
}

EdgeList load_edge_list(const std::filesystem::path& path) { return parse_edge_list(read_file(path)); }

}  // namespace irusim
