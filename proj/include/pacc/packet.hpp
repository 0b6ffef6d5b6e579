#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pacc/layers.hpp"
#include "pacc/pcap.hpp"

namespace pacc::net {

struct EthernetInfo {
    std::array<std::uint8_t, 6> dst_mac{};
    std::array<std::uint8_t, 6> src_mac{};
    std::uint16_t ethertype = 0;
};

struct Ipv4Info {
    std::uint8_t version = 0;
    std::uint8_t ihl = 0; // 32-bit words
    std::uint8_t tos = 0;
    std::uint16_t total_length = 0;
    std::uint16_t identification = 0;
    std::uint8_t flags = 0;          // 3 bits
    std::uint16_t frag_offset = 0;   // 13 bits
    std::uint8_t ttl = 0;
    std::uint8_t protocol = 0;
    std::uint16_t checksum = 0;
    std::uint32_t src_addr = 0;
    std::uint32_t dst_addr = 0;
    std::vector<std::uint8_t> raw; // full header including options
};

struct Ipv6Info {
    std::uint8_t version = 0;
    std::uint8_t traffic_class = 0;
    std::uint32_t flow_label = 0; // 20 bits
    std::uint16_t payload_length = 0;
    std::uint8_t next_header = 0;
    std::uint8_t hop_limit = 0;
    std::array<std::uint8_t, 16> src_addr{};
    std::array<std::uint8_t, 16> dst_addr{};
    std::vector<std::uint8_t> raw; // fixed 40-byte header
};

struct TcpInfo {
    std::uint16_t src_port = 0;
    std::uint16_t dst_port = 0;
    std::uint32_t seq = 0;
    std::uint32_t ack = 0;
    std::uint8_t data_offset = 0; // 32-bit words
    std::uint8_t reserved = 0;    // 3 bits
    std::uint16_t flags = 0;      // 9 bits: NS CWR ECE URG ACK PSH RST SYN FIN
    std::uint16_t window = 0;
    std::uint16_t checksum = 0;
    std::uint16_t urgent_ptr = 0;
    std::vector<std::uint8_t> options; // up to 40 bytes
    std::vector<std::uint8_t> raw;     // full header including options
};

struct UdpInfo {
    std::uint16_t src_port = 0;
    std::uint16_t dst_port = 0;
    std::uint16_t length = 0;
    std::uint16_t checksum = 0;
    std::vector<std::uint8_t> raw; // 8 bytes
};

/// One parsed packet. Deeper layers are absent whenever their parse failed;
/// `malformed` records that a declared length ran past the captured bytes.
struct PacketHeaders {
    double timestamp = 0.0;
    std::string source_file;
    std::optional<EthernetInfo> link;
    std::optional<Ipv4Info> ipv4;
    std::optional<Ipv6Info> ipv6;
    std::optional<TcpInfo> tcp;
    std::optional<UdpInfo> udp;
    std::vector<std::uint8_t> payload;
    bool malformed = false;

    bool has_layer(LayerId id) const {
        switch (id) {
            case LayerId::link: return link.has_value();
            case LayerId::network: return ipv4.has_value() || ipv6.has_value();
            case LayerId::transport: return tcp.has_value() || udp.has_value();
            case LayerId::application: return !payload.empty();
        }
        return false;
    }

    std::uint8_t ip_protocol() const {
        if (ipv4) return ipv4->protocol;
        if (ipv6) return ipv6->next_header;
        return 0;
    }
};

namespace detail {

inline std::uint16_t be16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
}
inline std::uint32_t be32(const std::uint8_t* p) {
    return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
           (static_cast<std::uint32_t>(p[2]) << 8) | p[3];
}

constexpr std::uint16_t kEthertypeIpv4 = 0x0800;
constexpr std::uint16_t kEthertypeIpv6 = 0x86DD;
constexpr std::uint16_t kEthertypeVlan = 0x8100;
constexpr std::uint8_t kProtoTcp = 6;
constexpr std::uint8_t kProtoUdp = 17;

inline void parse_transport(PacketHeaders& h, std::uint8_t proto, const std::uint8_t* p,
                            std::size_t len) {
    if (proto == kProtoTcp) {
        if (len < 20) {
            h.malformed = true;
            h.payload.assign(p, p + len);
            return;
        }
        TcpInfo t;
        t.src_port = be16(p);
        t.dst_port = be16(p + 2);
        t.seq = be32(p + 4);
        t.ack = be32(p + 8);
        t.data_offset = p[12] >> 4;
        t.reserved = (p[12] >> 1) & 0x7;
        t.flags = static_cast<std::uint16_t>(((p[12] & 0x1) << 8) | p[13]);
        t.window = be16(p + 14);
        t.checksum = be16(p + 16);
        t.urgent_ptr = be16(p + 18);
        const std::size_t hdr_len = static_cast<std::size_t>(t.data_offset) * 4;
        if (t.data_offset < 5 || hdr_len > len) {
            h.malformed = true;
            h.payload.assign(p, p + len);
            return;
        }
        t.options.assign(p + 20, p + hdr_len);
        t.raw.assign(p, p + hdr_len);
        h.tcp = std::move(t);
        h.payload.assign(p + hdr_len, p + len);
    } else if (proto == kProtoUdp) {
        if (len < 8) {
            h.malformed = true;
            h.payload.assign(p, p + len);
            return;
        }
        UdpInfo u;
        u.src_port = be16(p);
        u.dst_port = be16(p + 2);
        u.length = be16(p + 4);
        u.checksum = be16(p + 6);
        u.raw.assign(p, p + 8);
        h.udp = std::move(u);
        h.payload.assign(p + 8, p + len);
    } else {
        h.payload.assign(p, p + len);
    }
}

} // namespace detail

/// Ethernet / IPv4 / IPv6 / TCP / UDP dispatch. One VLAN tag is unwrapped;
/// unknown ethertypes and protocols leave deeper layers absent and route the
/// remaining bytes to the payload.
inline PacketHeaders parse_packet(const RawPacket& pkt) {
    PacketHeaders h;
    h.timestamp = pkt.timestamp();
    const std::uint8_t* p = pkt.link_bytes.data();
    std::size_t len = pkt.link_bytes.size();

    if (len < 14) {
        h.malformed = true;
        h.payload.assign(p, p + len);
        return h;
    }
    EthernetInfo eth;
    std::copy(p, p + 6, eth.dst_mac.begin());
    std::copy(p + 6, p + 12, eth.src_mac.begin());
    eth.ethertype = detail::be16(p + 12);
    std::size_t off = 14;
    if (eth.ethertype == detail::kEthertypeVlan && len >= 18) {
        eth.ethertype = detail::be16(p + 16);
        off = 18;
    }
    h.link = eth;
    p += off;
    len -= off;

    if (eth.ethertype == detail::kEthertypeIpv4) {
        if (len < 20) {
            h.malformed = true;
            h.payload.assign(p, p + len);
            return h;
        }
        Ipv4Info ip;
        ip.version = p[0] >> 4;
        ip.ihl = p[0] & 0xf;
        ip.tos = p[1];
        ip.total_length = detail::be16(p + 2);
        ip.identification = detail::be16(p + 4);
        ip.flags = p[6] >> 5;
        ip.frag_offset = static_cast<std::uint16_t>(detail::be16(p + 6) & 0x1fff);
        ip.ttl = p[8];
        ip.protocol = p[9];
        ip.checksum = detail::be16(p + 10);
        ip.src_addr = detail::be32(p + 12);
        ip.dst_addr = detail::be32(p + 16);
        const std::size_t hdr_len = static_cast<std::size_t>(ip.ihl) * 4;
        if (ip.ihl < 5 || hdr_len > len) {
            h.malformed = true;
            h.payload.assign(p, p + len);
            return h;
        }
        ip.raw.assign(p, p + hdr_len);
        const std::uint8_t proto = ip.protocol;
        // Ethernet frames may be padded past the IP datagram; trust the
        // shorter of the captured extent and the declared total length.
        std::size_t ip_extent = len;
        if (ip.total_length >= hdr_len && ip.total_length < len) ip_extent = ip.total_length;
        h.ipv4 = std::move(ip);
        detail::parse_transport(h, proto, p + hdr_len, ip_extent - hdr_len);
    } else if (eth.ethertype == detail::kEthertypeIpv6) {
        if (len < 40) {
            h.malformed = true;
            h.payload.assign(p, p + len);
            return h;
        }
        Ipv6Info ip;
        ip.version = p[0] >> 4;
        ip.traffic_class = static_cast<std::uint8_t>(((p[0] & 0xf) << 4) | (p[1] >> 4));
        ip.flow_label = (static_cast<std::uint32_t>(p[1] & 0xf) << 16) | (p[2] << 8) | p[3];
        ip.payload_length = detail::be16(p + 4);
        ip.next_header = p[6];
        ip.hop_limit = p[7];
        std::copy(p + 8, p + 24, ip.src_addr.begin());
        std::copy(p + 24, p + 40, ip.dst_addr.begin());
        ip.raw.assign(p, p + 40);
        const std::uint8_t proto = ip.next_header;
        h.ipv6 = std::move(ip);
        detail::parse_transport(h, proto, p + 40, len - 40);
    } else {
        h.payload.assign(p, p + len);
    }
    return h;
}

} // namespace pacc::net
