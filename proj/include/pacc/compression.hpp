#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <zlib.h>

#include "pacc/errors.hpp"
#include "pacc/tensor.hpp"
#include "pacc/util.hpp"

namespace pacc::info {

inline bool is_ternary(const Tensor& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double v = m[i];
        if (v != -1.0 && v != 0.0 && v != 1.0) return false;
    }
    return true;
}

/// Canonical 2-bit packing of a ternary matrix: -1 -> 10, 0 -> 00, 1 -> 01,
/// four entries per byte, trailing slots zero.
inline std::string pack_ternary(const Tensor& m) {
    std::string out;
    out.reserve(m.size() / 4 + 1);
    unsigned byte = 0;
    int slot = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        unsigned code = 0;
        if (m[i] == -1.0) code = 2;
        else if (m[i] == 1.0) code = 1;
        byte |= code << (2 * slot);
        if (++slot == 4) {
            out.push_back(static_cast<char>(byte));
            byte = 0;
            slot = 0;
        }
    }
    if (slot != 0) out.push_back(static_cast<char>(byte));
    return out;
}

inline std::string serialize_f32(const Tensor& m) {
    std::string out;
    out.reserve(m.size() * 4);
    for (std::size_t i = 0; i < m.size(); ++i) put_f32_le(out, static_cast<float>(m[i]));
    return out;
}

inline std::size_t deflate_size(const std::string& raw) {
    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::vector<unsigned char> buf(bound);
    uLongf out_len = bound;
    const int rc = compress2(buf.data(), &out_len,
                             reinterpret_cast<const unsigned char*>(raw.data()),
                             static_cast<uLong>(raw.size()), Z_DEFAULT_COMPRESSION);
    require(rc == Z_OK, Errc::io_error, "deflate failed");
    return static_cast<std::size_t>(out_len);
}

/// Redundancy proxy: serialized bytes / deflated bytes. Ternary matrices use
/// the canonical 2-bit packing; real-valued matrices (learned embeddings)
/// are serialized as little-endian float32.
inline double compression_ratio(const Tensor& m) {
    require(m.size() > 0, Errc::empty_dataset, "compression ratio of an empty matrix");
    const std::string raw = is_ternary(m) ? pack_ternary(m) : serialize_f32(m);
    const std::size_t compressed = deflate_size(raw);
    return static_cast<double>(raw.size()) / static_cast<double>(compressed);
}

} // namespace pacc::info
