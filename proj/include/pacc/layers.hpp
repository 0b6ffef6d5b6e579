#pragma once

#include <optional>
#include <string>

#include "pacc/errors.hpp"

namespace pacc {

enum class LayerId : int { link = 0, network = 1, transport = 2, application = 3 };

inline const char* layer_name(LayerId id) {
    switch (id) {
        case LayerId::link: return "LINK";
        case LayerId::network: return "NETWORK";
        case LayerId::transport: return "TRANSPORT";
        case LayerId::application: return "APPLICATION";
    }
    return "?";
}

/// Accepts both schema names and the L2/L3/L4/L7 shorthand.
inline std::optional<LayerId> layer_from_name(const std::string& s) {
    if (s == "LINK" || s == "L2" || s == "l2" || s == "link") return LayerId::link;
    if (s == "NETWORK" || s == "L3" || s == "l3" || s == "network") return LayerId::network;
    if (s == "TRANSPORT" || s == "L4" || s == "l4" || s == "transport") return LayerId::transport;
    if (s == "APPLICATION" || s == "L7" || s == "l7" || s == "application")
        return LayerId::application;
    return std::nullopt;
}

} // namespace pacc
