#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <type_traits>

// Little-endian primitive encoding shared by the binary file formats.
namespace ofs::binary {

template <typename T>
concept Primitive = std::is_integral_v<T> || std::is_floating_point_v<T>;

template <Primitive T>
void write(std::ostream& out, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t,
                               std::conditional_t<sizeof(T) == 4, std::uint32_t,
                                                  std::conditional_t<sizeof(T) == 2, std::uint16_t, std::uint8_t>>>;
  U bits = std::bit_cast<U>(value);
  char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
  out.write(buf, sizeof(T));
}

/// Returns false on short read.
template <Primitive T>
bool read(std::istream& in, T& value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t,
                               std::conditional_t<sizeof(T) == 4, std::uint32_t,
                                                  std::conditional_t<sizeof(T) == 2, std::uint16_t, std::uint8_t>>>;
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) return false;
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<U>(buf[i]) << (8 * i);
  value = std::bit_cast<T>(bits);
  return true;
}

inline void write_string(std::ostream& out, const std::string& s) {
  write(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline bool read_string(std::istream& in, std::string& s, std::uint32_t max_len = 1u << 20) {
  std::uint32_t len = 0;
  if (!read(in, len) || len > max_len) return false;
  s.resize(len);
  return len == 0 || static_cast<bool>(in.read(s.data(), len));
}

}  // namespace ofs::binary
