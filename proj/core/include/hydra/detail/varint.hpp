#pragma once

#include <cstdint>
#include <string>

namespace hydra::detail {

// Unsigned little-endian base-128 varint: 7 payload bits per byte, least
// significant group first, high bit set while more bytes follow.
inline void append_varint(std::string& out, std::uint64_t value) {
    while (value >= 0x80) {
        out.push_back(static_cast<char>((value & 0x7F) | 0x80));
        value >>= 7;
    }
    out.push_back(static_cast<char>(value));
}

// Returns false on truncated input or on more than 10 bytes.
inline bool read_varint(const std::string& in, std::size_t& pos, std::uint64_t& value) {
    value = 0;
    int shift = 0;
    while (pos < in.size() && shift <= 63) {
        const auto byte = static_cast<std::uint8_t>(in[pos++]);
        value |= static_cast<std::uint64_t>(byte & 0x7F) << shift;
        if ((byte & 0x80) == 0) return true;
        shift += 7;
    }
    return false;
}

}  // namespace hydra::detail
