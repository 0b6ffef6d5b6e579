#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "pacc/errors.hpp"
#include "pacc/util.hpp"

namespace pacc::net {

struct RawPacket {
    std::uint32_t ts_sec = 0;
    std::uint32_t ts_usec = 0;
    std::uint32_t captured_length = 0;
    std::uint32_t original_length = 0;
    std::vector<std::uint8_t> link_bytes;

    double timestamp() const { return static_cast<double>(ts_sec) + 1e-6 * ts_usec; }
};

namespace detail {

constexpr std::uint32_t kPcapMagic = 0xa1b2c3d4u;
constexpr std::uint32_t kPcapMagicSwapped = 0xd4c3b2a1u;
constexpr std::uint32_t kLinkTypeEthernet = 1;

inline std::uint32_t swap32(std::uint32_t v) {
    return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
}

} // namespace detail

/// Classic PCAP reader (little- or big-endian), Ethernet link type only.
inline std::vector<RawPacket> read_pcap(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), Errc::io_error, "cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::size_t size = bytes.size();

    require(size >= 24, Errc::bad_magic, "file too short for a capture header: " + path);
    const std::uint32_t magic_raw = get_le<std::uint32_t>(p);
    bool swapped = false;
    if (magic_raw == detail::kPcapMagic) {
        swapped = false;
    } else if (magic_raw == detail::kPcapMagicSwapped) {
        swapped = true;
    } else {
        fail(Errc::bad_magic, "unsupported capture format in " + path);
    }
    auto rd32 = [&](std::size_t off) {
        const std::uint32_t v = get_le<std::uint32_t>(p + off);
        return swapped ? detail::swap32(v) : v;
    };

    const std::uint32_t link_type = rd32(20);
    require(link_type == detail::kLinkTypeEthernet, Errc::unsupported_link_type,
            "link type " + std::to_string(link_type) + " (only Ethernet is supported)");

    std::vector<RawPacket> packets;
    std::size_t off = 24;
    while (off < size) {
        require(off + 16 <= size, Errc::truncated, "record header runs past end of " + path);
        RawPacket pkt;
        pkt.ts_sec = rd32(off);
        pkt.ts_usec = rd32(off + 4);
        pkt.captured_length = rd32(off + 8);
        pkt.original_length = rd32(off + 12);
        off += 16;
        require(off + pkt.captured_length <= size, Errc::truncated,
                "record shorter than its declared captured length in " + path);
        pkt.link_bytes.assign(p + off, p + off + pkt.captured_length);
        off += pkt.captured_length;
        if (pkt.original_length < pkt.captured_length) pkt.original_length = pkt.captured_length;
        packets.push_back(std::move(pkt));
    }
    return packets;
}

} // namespace pacc::net
