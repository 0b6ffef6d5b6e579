#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pacc/errors.hpp"
#include "pacc/layers.hpp"

namespace pacc {

struct FieldSpec {
    std::string name;
    std::size_t width = 0;  // bits
    std::size_t offset = 0; // bit offset inside one packet slot
};

/// Fixed per-packet bit layout of one protocol layer. Protocol alternatives
/// (IPv4/IPv6, TCP/UDP) occupy parallel bands at fixed offsets so every
/// field has one deterministic position.
struct LayerSchema {
    LayerId layer = LayerId::link;
    std::vector<FieldSpec> fields;
    std::size_t total_bits_per_packet = 0;

    const FieldSpec* find(const std::string& name) const {
        for (const auto& f : fields)
            if (f.name == name) return &f;
        return nullptr;
    }
};

namespace detail {

inline LayerSchema make_schema(LayerId layer,
                               std::vector<std::pair<std::string, std::size_t>> fields) {
    LayerSchema s;
    s.layer = layer;
    std::size_t off = 0;
    for (auto& [name, width] : fields) {
        s.fields.push_back({name, width, off});
        off += width;
    }
    s.total_bits_per_packet = off;
    return s;
}

} // namespace detail

/// The four default layer layouts. LINK covers the Ethernet header, NETWORK
/// holds IPv4 and IPv6 bands, TRANSPORT holds TCP (fixed header plus a
/// 40-byte option region) and UDP bands, APPLICATION the first
/// `payload_bytes` payload bytes.
inline std::vector<LayerSchema> default_schemas(std::size_t packets_per_flow,
                                                std::size_t payload_bytes) {
    require(packets_per_flow >= 1, Errc::invalid_argument, "packets_per_flow must be >= 1");
    std::vector<LayerSchema> schemas;
    schemas.push_back(detail::make_schema(LayerId::link, {
        {"eth_dst_mac", 48}, {"eth_src_mac", 48}, {"eth_ethertype", 16},
    }));
    schemas.push_back(detail::make_schema(LayerId::network, {
        {"ipv4_version", 4},     {"ipv4_ihl", 4},
        {"ipv4_tos", 8},         {"ipv4_total_length", 16},
        {"ipv4_identification", 16}, {"ipv4_flags", 3},
        {"ipv4_frag_offset", 13},    {"ipv4_ttl", 8},
        {"ipv4_protocol", 8},    {"ipv4_checksum", 16},
        {"ipv4_src_addr", 32},   {"ipv4_dst_addr", 32},
        {"ipv6_version", 4},     {"ipv6_traffic_class", 8},
        {"ipv6_flow_label", 20}, {"ipv6_payload_length", 16},
        {"ipv6_next_header", 8}, {"ipv6_hop_limit", 8},
        {"ipv6_src_addr", 128},  {"ipv6_dst_addr", 128},
    }));
    schemas.push_back(detail::make_schema(LayerId::transport, {
        {"tcp_src_port", 16}, {"tcp_dst_port", 16},
        {"tcp_seq", 32},      {"tcp_ack", 32},
        {"tcp_data_offset", 4}, {"tcp_reserved", 3},
        {"tcp_flags", 9},     {"tcp_window", 16},
        {"tcp_checksum", 16}, {"tcp_urgent_ptr", 16},
        {"tcp_options", 320},
        {"udp_src_port", 16}, {"udp_dst_port", 16},
        {"udp_length", 16},   {"udp_checksum", 16},
    }));
    schemas.push_back(detail::make_schema(
        LayerId::application, payload_bytes == 0
                                  ? std::vector<std::pair<std::string, std::size_t>>{}
                                  : std::vector<std::pair<std::string, std::size_t>>{
                                        {"payload", 8 * payload_bytes}}));
    return schemas;
}

/// Fields whose bit positions are overwritten with the fill value.
struct MaskSpec {
    std::set<std::pair<LayerId, std::string>> masked_fields;
    double fill_value = -1.0;

    bool contains(LayerId layer, const std::string& field) const {
        return masked_fields.count({layer, field}) > 0;
    }

    void add(LayerId layer, const std::string& field) { masked_fields.insert({layer, field}); }

    /// Environment-identifying fields: addresses, identifiers, checksums and
    /// sequence numbers. Ports are appended only on request.
    static MaskSpec default_mask(bool mask_ports = false) {
        MaskSpec m;
        m.add(LayerId::link, "eth_dst_mac");
        m.add(LayerId::link, "eth_src_mac");
        m.add(LayerId::network, "ipv4_src_addr");
        m.add(LayerId::network, "ipv4_dst_addr");
        m.add(LayerId::network, "ipv4_identification");
        m.add(LayerId::network, "ipv4_checksum");
        m.add(LayerId::network, "ipv6_src_addr");
        m.add(LayerId::network, "ipv6_dst_addr");
        m.add(LayerId::transport, "tcp_seq");
        m.add(LayerId::transport, "tcp_ack");
        m.add(LayerId::transport, "tcp_checksum");
        m.add(LayerId::transport, "udp_checksum");
        if (mask_ports) {
            m.add(LayerId::transport, "tcp_src_port");
            m.add(LayerId::transport, "tcp_dst_port");
            m.add(LayerId::transport, "udp_src_port");
            m.add(LayerId::transport, "udp_dst_port");
        }
        return m;
    }

    void validate_against(const std::vector<LayerSchema>& schemas) const {
        for (const auto& [layer, field] : masked_fields) {
            bool found = false;
            for (const auto& s : schemas)
                if (s.layer == layer && s.find(field)) found = true;
            require(found, Errc::unknown_field,
                    std::string(layer_name(layer)) + ":" + field + " not in any schema");
        }
    }
};

} // namespace pacc
