#pragma once

#include <string>
#include <vector>

#include "pacc/errors.hpp"
#include "pacc/flow.hpp"
#include "pacc/schema.hpp"
#include "pacc/tensor.hpp"
#include "pacc/util.hpp"

namespace pacc {

struct ViewMatrix {
    LayerId layer = LayerId::link;
    Tensor data; // N x d_f, entries in {-1, 0, 1}
    std::size_t d_f = 0;
};

struct FlowIndexEntry {
    net::FlowKey key;
    std::string source;
    double first_ts = 0.0;
};

struct MultiviewDataset {
    std::vector<ViewMatrix> views;
    std::vector<int> labels;
    int class_count = 0;
    std::vector<std::string> class_names;
    std::vector<FlowIndexEntry> flow_index;

    std::size_t flow_count() const { return labels.size(); }
    std::size_t view_count() const { return views.size(); }
};

struct ViewConfig {
    std::size_t packets_per_flow = 10;
    std::size_t payload_bytes = 64;
    double fill_value = -1.0;
    std::vector<LayerId> enabled_layers = {LayerId::link, LayerId::network, LayerId::transport,
                                           LayerId::application};
    MaskSpec mask = MaskSpec::default_mask();
};

namespace detail {

inline void emit_bits(std::vector<double>& out, std::size_t pos, std::uint64_t value,
                      std::size_t width) {
    for (std::size_t i = 0; i < width; ++i)
        out[pos + i] = static_cast<double>((value >> (width - 1 - i)) & 1u);
}

inline void emit_bytes(std::vector<double>& out, std::size_t pos,
                       const std::uint8_t* bytes, std::size_t count) {
    for (std::size_t b = 0; b < count; ++b)
        for (std::size_t i = 0; i < 8; ++i)
            out[pos + 8 * b + i] = static_cast<double>((bytes[b] >> (7 - i)) & 1u);
}

inline void encode_packet(std::vector<double>& out, std::size_t base,
                          const net::PacketHeaders& h, const LayerSchema& schema) {
    auto field_pos = [&](const char* name) {
        const FieldSpec* f = schema.find(name);
        return base + f->offset;
    };
    switch (schema.layer) {
        case LayerId::link: {
            if (!h.link) return;
            emit_bytes(out, field_pos("eth_dst_mac"), h.link->dst_mac.data(), 6);
            emit_bytes(out, field_pos("eth_src_mac"), h.link->src_mac.data(), 6);
            emit_bits(out, field_pos("eth_ethertype"), h.link->ethertype, 16);
            return;
        }
        case LayerId::network: {
            if (h.ipv4) {
                const auto& ip = *h.ipv4;
                emit_bits(out, field_pos("ipv4_version"), ip.version, 4);
                emit_bits(out, field_pos("ipv4_ihl"), ip.ihl, 4);
                emit_bits(out, field_pos("ipv4_tos"), ip.tos, 8);
                emit_bits(out, field_pos("ipv4_total_length"), ip.total_length, 16);
                emit_bits(out, field_pos("ipv4_identification"), ip.identification, 16);
                emit_bits(out, field_pos("ipv4_flags"), ip.flags, 3);
                emit_bits(out, field_pos("ipv4_frag_offset"), ip.frag_offset, 13);
                emit_bits(out, field_pos("ipv4_ttl"), ip.ttl, 8);
                emit_bits(out, field_pos("ipv4_protocol"), ip.protocol, 8);
                emit_bits(out, field_pos("ipv4_checksum"), ip.checksum, 16);
                emit_bits(out, field_pos("ipv4_src_addr"), ip.src_addr, 32);
                emit_bits(out, field_pos("ipv4_dst_addr"), ip.dst_addr, 32);
            } else if (h.ipv6) {
                const auto& ip = *h.ipv6;
                emit_bits(out, field_pos("ipv6_version"), ip.version, 4);
                emit_bits(out, field_pos("ipv6_traffic_class"), ip.traffic_class, 8);
                emit_bits(out, field_pos("ipv6_flow_label"), ip.flow_label, 20);
                emit_bits(out, field_pos("ipv6_payload_length"), ip.payload_length, 16);
                emit_bits(out, field_pos("ipv6_next_header"), ip.next_header, 8);
                emit_bits(out, field_pos("ipv6_hop_limit"), ip.hop_limit, 8);
                emit_bytes(out, field_pos("ipv6_src_addr"), ip.src_addr.data(), 16);
                emit_bytes(out, field_pos("ipv6_dst_addr"), ip.dst_addr.data(), 16);
            }
            return;
        }
        case LayerId::transport: {
            if (h.tcp) {
                const auto& t = *h.tcp;
                emit_bits(out, field_pos("tcp_src_port"), t.src_port, 16);
                emit_bits(out, field_pos("tcp_dst_port"), t.dst_port, 16);
                emit_bits(out, field_pos("tcp_seq"), t.seq, 32);
                emit_bits(out, field_pos("tcp_ack"), t.ack, 32);
                emit_bits(out, field_pos("tcp_data_offset"), t.data_offset, 4);
                emit_bits(out, field_pos("tcp_reserved"), t.reserved, 3);
                emit_bits(out, field_pos("tcp_flags"), t.flags, 9);
                emit_bits(out, field_pos("tcp_window"), t.window, 16);
                emit_bits(out, field_pos("tcp_checksum"), t.checksum, 16);
                emit_bits(out, field_pos("tcp_urgent_ptr"), t.urgent_ptr, 16);
                // present option bytes become bits, the rest of the option
                // region keeps the fill value
                const std::size_t n = std::min<std::size_t>(t.options.size(), 40);
                emit_bytes(out, field_pos("tcp_options"), t.options.data(), n);
            } else if (h.udp) {
                const auto& u = *h.udp;
                emit_bits(out, field_pos("udp_src_port"), u.src_port, 16);
                emit_bits(out, field_pos("udp_dst_port"), u.dst_port, 16);
                emit_bits(out, field_pos("udp_length"), u.length, 16);
                emit_bits(out, field_pos("udp_checksum"), u.checksum, 16);
            }
            return;
        }
        case LayerId::application: {
            if (schema.total_bits_per_packet == 0 || h.payload.empty()) return;
            const std::size_t cap = schema.total_bits_per_packet / 8;
            const std::size_t n = std::min(h.payload.size(), cap);
            emit_bytes(out, field_pos("payload"), h.payload.data(), n);
            return;
        }
    }
}

} // namespace detail

/// Encode one flow under one layer schema into a vector of exactly
/// packets_per_flow * total_bits_per_packet entries. Present fields emit
/// big-endian 0/1 bits; absent fields, absent layers and padding packets
/// emit the fill value. Flows longer than packets_per_flow are truncated.
inline std::vector<double> encode_flow(const net::FlowRecord& flow, const LayerSchema& schema,
                                       std::size_t packets_per_flow, double fill_value = -1.0) {
    require(packets_per_flow >= 1, Errc::invalid_argument, "packets_per_flow must be >= 1");
    std::vector<double> out(packets_per_flow * schema.total_bits_per_packet, fill_value);
    const std::size_t n = std::min(flow.packets.size(), packets_per_flow);
    for (std::size_t p = 0; p < n; ++p)
        detail::encode_packet(out, p * schema.total_bits_per_packet, flow.packets[p], schema);
    return out;
}

/// Overwrite the bit positions of every masked field (all packet slots)
/// with the fill value.
inline void apply_mask(ViewMatrix& view, const MaskSpec& mask, const LayerSchema& schema) {
    const std::size_t bits = schema.total_bits_per_packet;
    if (bits == 0) return;
    const std::size_t slots = view.d_f / bits;
    for (const auto& [layer, field] : mask.masked_fields) {
        if (layer != schema.layer) continue;
        const FieldSpec* f = schema.find(field);
        require(f != nullptr, Errc::unknown_field,
                std::string(layer_name(layer)) + ":" + field + " not in schema");
        for (std::size_t s = 0; s < slots; ++s) {
            const std::size_t base = s * bits + f->offset;
            for (std::size_t r = 0; r < view.data.rows(); ++r)
                for (std::size_t i = 0; i < f->width; ++i)
                    view.data.at(r, base + i) = mask.fill_value;
        }
    }
}

/// Encode all flows into one ViewMatrix per enabled layer, apply masking and
/// align the label vector. Zero-width layers (payload_bytes = 0) are
/// dropped from the view list.
inline MultiviewDataset build_views(const std::vector<net::FlowRecord>& flows,
                                    const ViewConfig& config,
                                    const std::vector<std::string>& class_names = {}) {
    require(!config.enabled_layers.empty(), Errc::no_enabled_layers, "no layers enabled");
    require(!flows.empty(), Errc::empty_dataset, "no flows to encode");

    const auto schemas = default_schemas(config.packets_per_flow, config.payload_bytes);
    config.mask.validate_against(schemas);

    MultiviewDataset ds;
    ds.class_names = class_names;
    ds.labels.reserve(flows.size());
    int max_label = -1;
    for (const auto& f : flows) {
        require(f.label.has_value(), Errc::empty_dataset,
                "unlabeled flow " + f.key.to_string() + " cannot enter a dataset");
        ds.labels.push_back(*f.label);
        max_label = std::max(max_label, *f.label);
        ds.flow_index.push_back({f.key, f.source_file, f.first_timestamp()});
    }
    ds.class_count = class_names.empty() ? max_label + 1 : static_cast<int>(class_names.size());

    for (LayerId layer : config.enabled_layers) {
        const LayerSchema* schema = nullptr;
        for (const auto& s : schemas)
            if (s.layer == layer) schema = &s;
        require(schema != nullptr, Errc::unknown_field, "no schema for layer");
        if (schema->total_bits_per_packet == 0) continue;

        ViewMatrix vm;
        vm.layer = layer;
        vm.d_f = config.packets_per_flow * schema->total_bits_per_packet;
        vm.data = Tensor::matrix(flows.size(), vm.d_f);
        parallel_for(flows.size(), [&](std::size_t r) {
            const auto row =
                encode_flow(flows[r], *schema, config.packets_per_flow, config.fill_value);
            for (std::size_t c = 0; c < vm.d_f; ++c) vm.data.at(r, c) = row[c];
        });
        apply_mask(vm, config.mask, *schema);
        ds.views.push_back(std::move(vm));
    }
    require(!ds.views.empty(), Errc::no_enabled_layers, "all enabled layers have zero width");
    return ds;
}

} // namespace pacc
