#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pacc/errors.hpp"
#include "pacc/packet.hpp"

namespace pacc::net {

struct Endpoint {
    std::array<std::uint8_t, 16> ip{}; // zero-padded; length below
    std::uint8_t ip_len = 0;
    std::uint16_t port = 0;

    auto operator<=>(const Endpoint&) const = default;

    std::string to_string() const {
        std::ostringstream os;
        if (ip_len == 4) {
            os << int(ip[0]) << '.' << int(ip[1]) << '.' << int(ip[2]) << '.' << int(ip[3]);
        } else {
            static const char* hex = "0123456789abcdef";
            for (int i = 0; i < ip_len; ++i) {
                if (i && i % 2 == 0) os << ':';
                os << hex[ip[i] >> 4] << hex[ip[i] & 0xf];
            }
        }
        os << ':' << port;
        return os.str();
    }
};

/// Canonical bidirectional key: the lexicographically smaller endpoint is
/// always stored first, so both directions of a connection share one key.
struct FlowKey {
    Endpoint a;
    Endpoint b;
    std::uint8_t protocol = 0;

    auto operator<=>(const FlowKey&) const = default;

    std::string to_string() const {
        return a.to_string() + "<->" + b.to_string() + "/" + std::to_string(protocol);
    }
};

inline FlowKey flow_key(const PacketHeaders& h) {
    require(h.ipv4.has_value() || h.ipv6.has_value(), Errc::no_network_layer,
            "flow key needs a parsed network layer");
    Endpoint src, dst;
    if (h.ipv4) {
        src.ip_len = dst.ip_len = 4;
        for (int i = 0; i < 4; ++i) {
            src.ip[i] = static_cast<std::uint8_t>(h.ipv4->src_addr >> (8 * (3 - i)));
            dst.ip[i] = static_cast<std::uint8_t>(h.ipv4->dst_addr >> (8 * (3 - i)));
        }
    } else {
        src.ip_len = dst.ip_len = 16;
        std::copy(h.ipv6->src_addr.begin(), h.ipv6->src_addr.end(), src.ip.begin());
        std::copy(h.ipv6->dst_addr.begin(), h.ipv6->dst_addr.end(), dst.ip.begin());
    }
    if (h.tcp) {
        src.port = h.tcp->src_port;
        dst.port = h.tcp->dst_port;
    } else if (h.udp) {
        src.port = h.udp->src_port;
        dst.port = h.udp->dst_port;
    }
    FlowKey key;
    key.protocol = h.ip_protocol();
    if (dst < src) {
        key.a = dst;
        key.b = src;
    } else {
        key.a = src;
        key.b = dst;
    }
    return key;
}

struct FlowRecord {
    FlowKey key;
    std::vector<PacketHeaders> packets; // time-ascending
    std::optional<int> label;
    std::string source_file;

    double first_timestamp() const { return packets.empty() ? 0.0 : packets.front().timestamp; }
};

// ---------------------------------------------------------------------------
// Label manifest: CSV `path,label_name`; names are mapped to indices by
// first appearance.
// ---------------------------------------------------------------------------

class LabelManifest {
public:
    static LabelManifest load_csv(const std::string& path) {
        std::ifstream in(path);
        require(in.good(), Errc::io_error, "manifest not found: " + path);
        LabelManifest m;
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            const auto comma = line.find(',');
            require(comma != std::string::npos, Errc::invalid_argument,
                    "manifest line without comma: " + line);
            std::string p = line.substr(0, comma);
            std::string name = line.substr(comma + 1);
            if (first && p == "path" && name == "label_name") {
                first = false;
                continue;
            }
            first = false;
            m.add(p, name);
        }
        return m;
    }

    void add(const std::string& path, const std::string& label_name) {
        int idx;
        auto it = name_to_index_.find(label_name);
        if (it == name_to_index_.end()) {
            idx = static_cast<int>(class_names_.size());
            class_names_.push_back(label_name);
            name_to_index_.emplace(label_name, idx);
        } else {
            idx = it->second;
        }
        by_path_[path] = idx;
        by_path_[basename(path)] = idx;
    }

    std::optional<int> label_for(const std::string& source_file) const {
        auto it = by_path_.find(source_file);
        if (it == by_path_.end()) it = by_path_.find(basename(source_file));
        if (it == by_path_.end()) return std::nullopt;
        return it->second;
    }

    const std::vector<std::string>& class_names() const { return class_names_; }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["classes"] = class_names_;
        return j;
    }

    static std::string basename(const std::string& p) {
        const auto slash = p.find_last_of('/');
        return slash == std::string::npos ? p : p.substr(slash + 1);
    }

private:
    std::vector<std::string> class_names_;
    std::map<std::string, int> name_to_index_;
    std::map<std::string, int> by_path_;
};

/// Group parsed packets into bidirectional flows. Packets without a network
/// layer are skipped. Output is ordered by (first packet timestamp, key);
/// an idle timeout of 0 disables splitting.
inline std::vector<FlowRecord> assemble_flows(const std::vector<PacketHeaders>& packets,
                                              const LabelManifest* manifest = nullptr,
                                              double idle_timeout = 0.0) {
    std::map<FlowKey, std::vector<const PacketHeaders*>> groups;
    for (const auto& h : packets) {
        if (!h.ipv4 && !h.ipv6) continue;
        groups[flow_key(h)].push_back(&h);
    }

    std::vector<FlowRecord> flows;
    for (auto& [key, members] : groups) {
        std::stable_sort(members.begin(), members.end(),
                         [](const PacketHeaders* x, const PacketHeaders* y) {
                             return x->timestamp < y->timestamp;
                         });
        FlowRecord current;
        current.key = key;
        for (const auto* h : members) {
            if (idle_timeout > 0.0 && !current.packets.empty() &&
                h->timestamp - current.packets.back().timestamp > idle_timeout) {
                flows.push_back(std::move(current));
                current = FlowRecord{};
                current.key = key;
            }
            current.packets.push_back(*h);
        }
        if (!current.packets.empty()) flows.push_back(std::move(current));
    }

    for (auto& f : flows) {
        f.source_file = f.packets.front().source_file;
        if (manifest) f.label = manifest->label_for(f.source_file);
    }
    std::stable_sort(flows.begin(), flows.end(), [](const FlowRecord& x, const FlowRecord& y) {
        if (x.first_timestamp() != y.first_timestamp())
            return x.first_timestamp() < y.first_timestamp();
        return x.key < y.key;
    });
    return flows;
}

} // namespace pacc::net
