#pragma once

// Hand-written packet fixtures. The literal frames below were authored
// byte-by-byte next to an independent hex dump of the intended headers; the
// expected field values asserted in tests come from that dump, not from the
// parser under test.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace testsupport {

using Bytes = std::vector<std::uint8_t>;

// Ethernet(aa:bb:cc:dd:ee:ff <- 11:22:33:44:55:66, 0x0800)
// IPv4(v4 ihl5 tos0 len44 id 0x1234 flags DF ttl64 proto TCP csum 0xbeef
//      10.0.0.1 -> 10.0.0.2)
// TCP(1234 -> 443, seq 1, ack 2, off5, PSH|ACK, win 256, csum 0xcafe)
// payload "ABCD"
inline Bytes frame_ipv4_tcp() {
    return {
        0xaa, 0xbb, 0xcc, 0xdd, 0xee, 0xff, 0x11, 0x22, 0x33, 0x44, 0x55, 0x66, 0x08, 0x00,
        0x45, 0x00, 0x00, 0x2c, 0x12, 0x34, 0x40, 0x00, 0x40, 0x06, 0xbe, 0xef,
        0x0a, 0x00, 0x00, 0x01, 0x0a, 0x00, 0x00, 0x02,
        0x04, 0xd2, 0x01, 0xbb, 0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x02,
        0x50, 0x18, 0x01, 0x00, 0xca, 0xfe, 0x00, 0x00,
        0x41, 0x42, 0x43, 0x44,
    };
}

// The same connection seen in the opposite direction, payload "EF".
inline Bytes frame_ipv4_tcp_reverse() {
    return {
        0x11, 0x22, 0x33, 0x44, 0x55, 0x66, 0xaa, 0xbb, 0xcc, 0xdd, 0xee, 0xff, 0x08, 0x00,
        0x45, 0x00, 0x00, 0x2a, 0x12, 0x35, 0x40, 0x00, 0x40, 0x06, 0xbe, 0xf0,
        0x0a, 0x00, 0x00, 0x02, 0x0a, 0x00, 0x00, 0x01,
        0x01, 0xbb, 0x04, 0xd2, 0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x05,
        0x50, 0x10, 0x02, 0x00, 0xca, 0xff, 0x00, 0x00,
        0x45, 0x46,
    };
}

// Ethernet + IPv4(proto UDP len31 id 0x0042 ttl 17 192.168.1.5 -> 192.168.1.9)
// UDP(4000 -> 53, length 11, csum 0x1111), payload "xyz"
inline Bytes frame_ipv4_udp() {
    return {
        0x02, 0x00, 0x00, 0x00, 0x00, 0x01, 0x02, 0x00, 0x00, 0x00, 0x00, 0x02, 0x08, 0x00,
        0x45, 0x00, 0x00, 0x1f, 0x00, 0x42, 0x00, 0x00, 0x11, 0x11, 0xab, 0xcd,
        0xc0, 0xa8, 0x01, 0x05, 0xc0, 0xa8, 0x01, 0x09,
        0x0f, 0xa0, 0x00, 0x35, 0x00, 0x0b, 0x11, 0x11,
        0x78, 0x79, 0x7a,
    };
}

// Ethernet with an unknown ethertype; everything after the header is payload.
inline Bytes frame_unknown_ethertype() {
    return {
        0x02, 0x00, 0x00, 0x00, 0x00, 0x03, 0x02, 0x00, 0x00, 0x00, 0x00, 0x04, 0x99, 0x99,
        0xde, 0xad, 0xbe, 0xef, 0x01,
    };
}

// Ethernet + IPv6(flow label 0x12345, payload_length 10, next UDP, hop 64,
// fe80::1 -> fe80::2) + UDP(1000 -> 2000, length 10), payload 0xCAFE.
inline Bytes frame_ipv6_udp() {
    return {
        0x02, 0x00, 0x00, 0x00, 0x00, 0x05, 0x02, 0x00, 0x00, 0x00, 0x00, 0x06, 0x86, 0xdd,
        0x60, 0x01, 0x23, 0x45, 0x00, 0x0a, 0x11, 0x40,
        0xfe, 0x80, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x01,
        0xfe, 0x80, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x02,
        0x03, 0xe8, 0x07, 0xd0, 0x00, 0x0a, 0x00, 0x00,
        0xca, 0xfe,
    };
}

// VLAN-tagged (0x8100, VID 7) variant of an IPv4/TCP frame.
inline Bytes frame_vlan_ipv4_tcp() {
    Bytes f = frame_ipv4_tcp();
    Bytes vlan = {0x81, 0x00, 0x00, 0x07};
    f.insert(f.begin() + 12, vlan.begin(), vlan.end());
    return f;
}

// IPv4 header declares ihl 5 but capture stops after 10 header bytes.
inline Bytes frame_truncated_ipv4() {
    return {
        0x02, 0x00, 0x00, 0x00, 0x00, 0x07, 0x02, 0x00, 0x00, 0x00, 0x00, 0x08, 0x08, 0x00,
        0x45, 0x00, 0x00, 0x2c, 0x12, 0x34, 0x40, 0x00, 0x40, 0x06,
    };
}

// ---------------------------------------------------------------------------
// Programmatic frame builders for volume generation.
// ---------------------------------------------------------------------------

inline void be16(Bytes& b, std::uint16_t v) {
    b.push_back(static_cast<std::uint8_t>(v >> 8));
    b.push_back(static_cast<std::uint8_t>(v & 0xff));
}
inline void be32(Bytes& b, std::uint32_t v) {
    be16(b, static_cast<std::uint16_t>(v >> 16));
    be16(b, static_cast<std::uint16_t>(v & 0xffff));
}

inline Bytes build_ipv4_tcp(std::uint32_t src_ip, std::uint32_t dst_ip, std::uint16_t sport,
                            std::uint16_t dport, std::uint32_t seq, std::uint16_t flags,
                            const Bytes& payload, std::uint8_t ttl = 64,
                            std::uint16_t window = 4096) {
    Bytes f = {0x02, 0, 0, 0, 0, 0x11, 0x02, 0, 0, 0, 0, 0x22};
    be16(f, 0x0800);
    f.push_back(0x45);
    f.push_back(0x00);
    be16(f, static_cast<std::uint16_t>(40 + payload.size()));
    be16(f, 0x0100);
    be16(f, 0x4000);
    f.push_back(ttl);
    f.push_back(6);
    be16(f, 0x0000);
    be32(f, src_ip);
    be32(f, dst_ip);
    be16(f, sport);
    be16(f, dport);
    be32(f, seq);
    be32(f, seq + 1);
    f.push_back(0x50);
    f.push_back(static_cast<std::uint8_t>(flags & 0xff));
    be16(f, window);
    be16(f, 0x0000);
    be16(f, 0x0000);
    f.insert(f.end(), payload.begin(), payload.end());
    return f;
}

inline Bytes build_ipv4_udp(std::uint32_t src_ip, std::uint32_t dst_ip, std::uint16_t sport,
                            std::uint16_t dport, const Bytes& payload, std::uint8_t ttl = 64) {
    Bytes f = {0x02, 0, 0, 0, 0, 0x33, 0x02, 0, 0, 0, 0, 0x44};
    be16(f, 0x0800);
    f.push_back(0x45);
    f.push_back(0x00);
    be16(f, static_cast<std::uint16_t>(28 + payload.size()));
    be16(f, 0x0200);
    be16(f, 0x0000);
    f.push_back(ttl);
    f.push_back(17);
    be16(f, 0x0000);
    be32(f, src_ip);
    be32(f, dst_ip);
    be16(f, sport);
    be16(f, dport);
    be16(f, static_cast<std::uint16_t>(8 + payload.size()));
    be16(f, 0x0000);
    f.insert(f.end(), payload.begin(), payload.end());
    return f;
}

// ---------------------------------------------------------------------------
// PCAP writing
// ---------------------------------------------------------------------------

struct TimedFrame {
    std::uint32_t ts_sec = 0;
    std::uint32_t ts_usec = 0;
    Bytes frame;
};

inline void write_pcap(const std::filesystem::path& path, const std::vector<TimedFrame>& frames,
                       bool big_endian = false, std::uint32_t link_type = 1,
                       std::uint32_t magic = 0xa1b2c3d4u) {
    auto put32 = [&](Bytes& out, std::uint32_t v) {
        if (big_endian) {
            out.push_back(static_cast<std::uint8_t>(v >> 24));
            out.push_back(static_cast<std::uint8_t>(v >> 16));
            out.push_back(static_cast<std::uint8_t>(v >> 8));
            out.push_back(static_cast<std::uint8_t>(v));
        } else {
            out.push_back(static_cast<std::uint8_t>(v));
            out.push_back(static_cast<std::uint8_t>(v >> 8));
            out.push_back(static_cast<std::uint8_t>(v >> 16));
            out.push_back(static_cast<std::uint8_t>(v >> 24));
        }
    };
    auto put16 = [&](Bytes& out, std::uint16_t v) {
        if (big_endian) {
            out.push_back(static_cast<std::uint8_t>(v >> 8));
            out.push_back(static_cast<std::uint8_t>(v));
        } else {
            out.push_back(static_cast<std::uint8_t>(v));
            out.push_back(static_cast<std::uint8_t>(v >> 8));
        }
    };
    Bytes out;
    put32(out, magic);
    put16(out, 2);
    put16(out, 4);
    put32(out, 0);
    put32(out, 0);
    put32(out, 65535);
    put32(out, link_type);
    for (const auto& tf : frames) {
        put32(out, tf.ts_sec);
        put32(out, tf.ts_usec);
        put32(out, static_cast<std::uint32_t>(tf.frame.size()));
        put32(out, static_cast<std::uint32_t>(tf.frame.size()));
        out.insert(out.end(), tf.frame.begin(), tf.frame.end());
    }
    std::ofstream f(path, std::ios::binary);
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
}

/// Two labelled capture files plus a manifest, for end-to-end runs. Class 0
/// carries short TCP flows toward port 443, class 1 longer UDP flows toward
/// port 53 with distinct payload texture.
inline void make_labeled_captures(const std::filesystem::path& dir, int flows_per_class,
                                  unsigned seed = 1) {
    std::filesystem::create_directories(dir);
    auto prng = [state = static_cast<std::uint64_t>(seed * 2654435761u)]() mutable {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };

    std::vector<TimedFrame> web;
    for (int i = 0; i < flows_per_class; ++i) {
        const std::uint32_t client = 0x0a000100u + static_cast<std::uint32_t>(i);
        const std::uint16_t sport = static_cast<std::uint16_t>(20000 + i);
        for (int p = 0; p < 4; ++p) {
            Bytes payload(static_cast<std::size_t>(40 + (prng() % 8)));
            for (auto& b : payload) b = static_cast<std::uint8_t>(prng() & 0xff);
            const bool from_client = p % 2 == 0;
            web.push_back({static_cast<std::uint32_t>(1000 + i),
                           static_cast<std::uint32_t>(1000 * p),
                           build_ipv4_tcp(from_client ? client : 0x0a000001u,
                                          from_client ? 0x0a000001u : client,
                                          from_client ? sport : 443,
                                          from_client ? 443 : sport,
                                          static_cast<std::uint32_t>(100 * p), 0x18, payload)});
        }
    }
    write_pcap(dir / "web.pcap", web);

    std::vector<TimedFrame> dns;
    for (int i = 0; i < flows_per_class; ++i) {
        const std::uint32_t client = 0x0a000200u + static_cast<std::uint32_t>(i);
        const std::uint16_t sport = static_cast<std::uint16_t>(30000 + i);
        for (int p = 0; p < 6; ++p) {
            Bytes payload(static_cast<std::size_t>(12 + (prng() % 4)));
            for (auto& b : payload) b = static_cast<std::uint8_t>((prng() % 2) ? 0x00 : 0xff);
            const bool from_client = p % 2 == 0;
            dns.push_back({static_cast<std::uint32_t>(2000 + i),
                           static_cast<std::uint32_t>(500 * p),
                           build_ipv4_udp(from_client ? client : 0x0a000002u,
                                          from_client ? 0x0a000002u : client,
                                          from_client ? sport : 53,
                                          from_client ? 53 : sport, payload, 128)});
        }
    }
    write_pcap(dir / "dns.pcap", dns);

    std::ofstream manifest(dir / "manifest.csv");
    manifest << "path,label_name\n";
    manifest << (dir / "web.pcap").string() << ",web\n";
    manifest << (dir / "dns.pcap").string() << ",dns\n";
}

} // namespace testsupport
