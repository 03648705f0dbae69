#include "graphwave/edge_io.hpp"

#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

namespace graphwave {
namespace {

constexpr std::array<char, 4> kMagic = {'G', 'W', 'E', 'L'};

u64 parse_id(std::string_view token, u64 line_no) {
  u64 value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("edge list line " + std::to_string(line_no) + ": bad vertex id '" +
                     std::string(token) + "'");
  }
  if (value >= kMaxVertexId) {
    throw ParseError("edge list line " + std::to_string(line_no) + ": id " +
                     std::to_string(value) + " exceeds the 2^48 sanity bound");
  }
  return value;
}

EdgeList load_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open edge list file: " + path);
  }
  EdgeList out;
  out.directed = true;
  u64 max_id = 0;
  bool any = false;
  std::string line;
  for (u64 line_no = 1; std::getline(in, line); ++line_no) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) {
      continue;  // blank or comment-only line
    }
    if (!(fields >> b) || (fields >> extra)) {
      throw ParseError("edge list line " + std::to_string(line_no) +
                       ": expected exactly two vertex ids");
    }
    const u64 u = parse_id(a, line_no);
    const u64 v = parse_id(b, line_no);
    out.edges.emplace_back(u, v);
    max_id = std::max({max_id, u, v});
    any = true;
  }
  out.n = any ? max_id + 1 : 0;
  return out;
}

void store_u32(std::ofstream& out, u32 value) {
  std::array<char, 4> buf;
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  out.write(buf.data(), buf.size());
}

void store_u64(std::ofstream& out, u64 value) {
  std::array<char, 8> buf;
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  out.write(buf.data(), buf.size());
}

u32 read_u32(const char* p) {
  u32 v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(p[i]);
  return v;
}

u64 read_u64(const char* p) {
  u64 v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(p[i]);
  return v;
}

EdgeList load_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open edge list file: " + path);
  }
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  EdgeList out;
  out.directed = true;
  std::size_t offset = 0;
  bool has_header = false;
  u64 header_m = 0;
  if (bytes.size() >= 24 && std::memcmp(bytes.data(), kMagic.data(), 4) == 0) {
    const u32 version = read_u32(bytes.data() + 4);
    if (version != 1 && version != 2) {
      throw ParseError("binary edge list: unknown format version " + std::to_string(version));
    }
    out.directed = (version == 1);
    out.n = read_u64(bytes.data() + 8);
    header_m = read_u64(bytes.data() + 16);
    offset = 24;
    has_header = true;
  }

  const std::size_t payload = bytes.size() - offset;
  if (payload % 16 != 0) {
    throw ParseError("binary edge list: payload is not a whole number of 16-byte records");
  }
  const u64 m = payload / 16;
  if (has_header && m != header_m) {
    throw ParseError("binary edge list: header promises " + std::to_string(header_m) +
                     " edges but file holds " + std::to_string(m));
  }

  out.edges.resize(m);
  u64 max_id = 0;
  for (u64 i = 0; i < m; ++i) {
    const char* rec = bytes.data() + offset + i * 16;
    const u64 u = read_u64(rec);
    const u64 v = read_u64(rec + 8);
    if (u >= kMaxVertexId || v >= kMaxVertexId) {
      throw ParseError("binary edge list record " + std::to_string(i) +
                       ": id exceeds the 2^48 sanity bound");
    }
    out.edges[i] = Edge{u, v};
    max_id = std::max({max_id, u, v});
  }
  if (!has_header) {
    out.n = m > 0 ? max_id + 1 : 0;
  } else if (m > 0 && max_id >= out.n) {
    throw ParseError("binary edge list: id " + std::to_string(max_id) +
                     " outside the header vertex count " + std::to_string(out.n));
  }
  return out;
}

}  // namespace

EdgeList load_edge_list(const std::string& path, EdgeFormat format) {
  return format == EdgeFormat::Text ? load_text(path) : load_binary(path);
}

void save_edge_list(const EdgeList& list, const std::string& path, EdgeFormat format) {
  if (format == EdgeFormat::Text) {
    std::ofstream out(path);
    if (!out) {
      throw ParseError("cannot write edge list file: " + path);
    }
    for (const auto& [u, v] : list.edges) {
      out << u << ' ' << v << '\n';
    }
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError("cannot write edge list file: " + path);
  }
  out.write(kMagic.data(), kMagic.size());
  store_u32(out, list.directed ? 1 : 2);
  store_u64(out, list.n);
  store_u64(out, list.edges.size());
  for (const auto& [u, v] : list.edges) {
    store_u64(out, u);
    store_u64(out, v);
  }
}

}  // namespace graphwave
