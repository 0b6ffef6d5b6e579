#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pacc/errors.hpp"
#include "pacc/model.hpp"
#include "pacc/tensor.hpp"
#include "pacc/util.hpp"

namespace pacc::model {

// Checkpoint file: 8-byte magic "PACCCKPT", u32 version, u64 JSON length,
// config JSON (model + training snapshot), u64 parameter count, then per
// parameter: u64 name length, name, u32 rank, u64 dims, row-major f64 LE.

class Checkpoint {
public:
    nlohmann::json config;
    std::vector<std::pair<std::string, Tensor>> params;

    static constexpr char kMagic[9] = "PACCCKPT";
    static constexpr std::uint32_t kVersion = 1;

    static Checkpoint from_model(const PaccModel& m, nlohmann::json extra = {}) {
        Checkpoint ck;
        ck.config["model"] = m.config().to_json();
        if (!extra.is_null()) ck.config["training"] = std::move(extra);
        for (const auto& [name, var] : m.named_parameters()) ck.params.emplace_back(name, var->value);
        return ck;
    }

    /// Rebuild the model these weights came from.
    PaccModel to_model() const {
        PaccModel m(ModelConfig::from_json(config.at("model")), /*seed=*/0, /*zero_init=*/true);
        apply_to(m);
        return m;
    }

    void apply_to(PaccModel& m) const {
        std::map<std::string, const Tensor*> by_name;
        for (const auto& [name, t] : params) by_name[name] = &t;
        for (auto& [name, var] : m.named_parameters()) {
            auto it = by_name.find(name);
            require(it != by_name.end(), Errc::dim_mismatch, "checkpoint missing " + name);
            require(it->second->shape() == var->value.shape(), Errc::dim_mismatch,
                    "checkpoint shape mismatch for " + name);
            var->value = *it->second;
        }
    }

    std::string serialize() const {
        std::string out;
        out.append(kMagic, 8);
        put_le<std::uint32_t>(out, kVersion);
        const std::string cfg = config.dump();
        put_le<std::uint64_t>(out, cfg.size());
        out += cfg;
        put_le<std::uint64_t>(out, params.size());
        for (const auto& [name, t] : params) {
            put_le<std::uint64_t>(out, name.size());
            out += name;
            put_le<std::uint32_t>(out, static_cast<std::uint32_t>(t.shape().size()));
            for (auto d : t.shape()) put_le<std::uint64_t>(out, d);
            for (std::size_t i = 0; i < t.size(); ++i) put_f64_le(out, t[i]);
        }
        return out;
    }

    void save(const std::filesystem::path& path) const {
        std::ofstream f(path, std::ios::binary);
        require(f.good(), Errc::io_error, "cannot write " + path.string());
        const std::string bytes = serialize();
        f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        require(f.good(), Errc::io_error, "short write to " + path.string());
    }

    static Checkpoint load(const std::filesystem::path& path) {
        std::ifstream f(path, std::ios::binary);
        require(f.good(), Errc::io_error, "cannot open " + path.string());
        std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
        require(bytes.size() >= 20, Errc::format_version_mismatch, "checkpoint too short");
        const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
        require(std::string(bytes.data(), 8) == kMagic, Errc::format_version_mismatch,
                "bad checkpoint magic");
        require(get_le<std::uint32_t>(p + 8) == kVersion, Errc::format_version_mismatch,
                "unsupported checkpoint version");
        std::size_t off = 12;
        auto need = [&](std::size_t n) {
            require(off + n <= bytes.size(), Errc::format_version_mismatch,
                    "truncated checkpoint");
        };
        need(8);
        const auto cfg_len = get_le<std::uint64_t>(p + off);
        off += 8;
        need(cfg_len);
        Checkpoint ck;
        ck.config = nlohmann::json::parse(bytes.substr(off, cfg_len));
        off += cfg_len;
        need(8);
        const auto count = get_le<std::uint64_t>(p + off);
        off += 8;
        for (std::uint64_t i = 0; i < count; ++i) {
            need(8);
            const auto name_len = get_le<std::uint64_t>(p + off);
            off += 8;
            need(name_len);
            std::string name = bytes.substr(off, name_len);
            off += name_len;
            need(4);
            const auto rank = get_le<std::uint32_t>(p + off);
            off += 4;
            std::vector<std::size_t> dims;
            std::size_t n = 1;
            for (std::uint32_t r = 0; r < rank; ++r) {
                need(8);
                dims.push_back(get_le<std::uint64_t>(p + off));
                n *= dims.back();
                off += 8;
            }
            need(8 * n);
            Tensor t(dims);
            for (std::size_t e = 0; e < n; ++e) {
                t[e] = get_f64_le(p + off);
                off += 8;
            }
            ck.params.emplace_back(std::move(name), std::move(t));
        }
        return ck;
    }
};

} // namespace pacc::model
