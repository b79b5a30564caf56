#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "ultra/preprocess/shortcut_graph.hpp"

namespace ultra::io {

// Layout, all integers little-endian:
//   "ULSC" | version u32 | stop count u32 | edge count u32
//   | edge count x (from u32, to u32, time u32) | FNV-1a 64 of all prior bytes
inline constexpr std::uint32_t kShortcutFormatVersion = 1;

class ShortcutFileError : public std::runtime_error {
 public:
  enum class Kind { Io, BadMagic, Version, Truncated, Checksum, Invalid };

  ShortcutFileError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

inline std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t size) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace detail {

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline std::uint64_t get_le(const std::uint8_t* p, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= std::uint64_t{p[i]} << (8 * i);
  return v;
}

}  // namespace detail

inline std::vector<std::uint8_t> encode_shortcuts(const ShortcutGraph& g) {
  std::vector<std::uint8_t> out{'U', 'L', 'S', 'C'};
  detail::put_u32(out, kShortcutFormatVersion);
  detail::put_u32(out, static_cast<std::uint32_t>(g.stop_count()));
  detail::put_u32(out, static_cast<std::uint32_t>(g.edge_count()));
  for (const Edge& e : g.edges()) {
    detail::put_u32(out, e.from);
    detail::put_u32(out, e.to);
    detail::put_u32(out, static_cast<std::uint32_t>(e.weight));
  }
  const std::uint64_t sum = fnv1a64(out.data(), out.size());
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(sum >> (8 * i)));
  return out;
}

inline ShortcutGraph decode_shortcuts(const std::vector<std::uint8_t>& bytes) {
  using Kind = ShortcutFileError::Kind;
  constexpr std::size_t header = 16, trailer = 8, record = 12;
  if (bytes.size() < 4 || !std::equal(bytes.begin(), bytes.begin() + 4, "ULSC")) {
    throw ShortcutFileError(Kind::BadMagic, "not a shortcut file");
  }
  if (bytes.size() < header + trailer) throw ShortcutFileError(Kind::Truncated, "shortcut file is truncated");
  const std::size_t body = bytes.size() - trailer;
  if (fnv1a64(bytes.data(), body) != detail::get_le(bytes.data() + body, 8)) {
    throw ShortcutFileError(Kind::Checksum, "shortcut file checksum mismatch");
  }
  const auto version = static_cast<std::uint32_t>(detail::get_le(bytes.data() + 4, 4));
  if (version != kShortcutFormatVersion) {
    throw ShortcutFileError(Kind::Version, "unsupported shortcut format version " + std::to_string(version));
  }
  const auto stops = static_cast<std::size_t>(detail::get_le(bytes.data() + 8, 4));
  const auto count = static_cast<std::size_t>(detail::get_le(bytes.data() + 12, 4));
  if (body != header + count * record) throw ShortcutFileError(Kind::Truncated, "edge count does not match the size");
  std::vector<Edge> edges;
  edges.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint8_t* p = bytes.data() + header + i * record;
    edges.push_back({static_cast<Vertex>(detail::get_le(p, 4)), static_cast<Vertex>(detail::get_le(p + 4, 4)),
                     static_cast<Time>(static_cast<std::uint32_t>(detail::get_le(p + 8, 4)))});
  }
  try {
    return ShortcutGraph(stops, std::move(edges));
  } catch (const ContractViolation& e) {
    throw ShortcutFileError(Kind::Invalid, e.what());
  }
}

inline void save_shortcuts(const std::filesystem::path& path, const ShortcutGraph& g) {
  const auto bytes = encode_shortcuts(g);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ShortcutFileError(ShortcutFileError::Kind::Io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ShortcutFileError(ShortcutFileError::Kind::Io, "cannot write " + path.string());
}

inline ShortcutGraph load_shortcuts(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ShortcutFileError(ShortcutFileError::Kind::Io, "cannot read " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_shortcuts(bytes);
}

}  // namespace ultra::io
