#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pacc/errors.hpp"
#include "pacc/schema.hpp"
#include "pacc/util.hpp"
#include "pacc/views.hpp"

namespace pacc {

// On-disk dataset layout: one PACCVIEW matrix per view plus labels.csv,
// schema.json and flows.csv. PACCVIEW files are: 8-byte magic, u32 version,
// u32 layer id, u64 N, u64 d_f, then N*d_f row-major little-endian float32.

namespace viewio {

constexpr char kMagic[9] = "PACCVIEW";
constexpr std::uint32_t kVersion = 1;

// Extra layer ids for derived matrices written by embedding export.
constexpr std::uint32_t kFusedId = 100;
constexpr std::uint32_t kWeightsId = 101;

inline void write_matrix(const std::filesystem::path& path, std::uint32_t layer_id,
                         const Tensor& m) {
    std::string out;
    out.append(kMagic, 8);
    put_le<std::uint32_t>(out, kVersion);
    put_le<std::uint32_t>(out, layer_id);
    put_le<std::uint64_t>(out, m.rows());
    put_le<std::uint64_t>(out, m.cols());
    out.reserve(out.size() + m.size() * 4);
    for (std::size_t i = 0; i < m.size(); ++i) put_f32_le(out, static_cast<float>(m[i]));
    std::ofstream f(path, std::ios::binary);
    require(f.good(), Errc::io_error, "cannot write " + path.string());
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    require(f.good(), Errc::io_error, "short write to " + path.string());
}

struct MatrixFile {
    std::uint32_t layer_id = 0;
    Tensor data;
};

inline MatrixFile read_matrix(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    require(f.good(), Errc::io_error, "cannot open " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    require(bytes.size() >= 32, Errc::format_version_mismatch,
            "file too short for a view header: " + path.string());
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    require(std::string(bytes.data(), 8) == kMagic, Errc::format_version_mismatch,
            "bad magic in " + path.string());
    const auto version = get_le<std::uint32_t>(p + 8);
    require(version == kVersion, Errc::format_version_mismatch,
            "unsupported view format version " + std::to_string(version));
    MatrixFile mf;
    mf.layer_id = get_le<std::uint32_t>(p + 12);
    const auto n = get_le<std::uint64_t>(p + 16);
    const auto d = get_le<std::uint64_t>(p + 24);
    require(bytes.size() == 32 + n * d * 4, Errc::format_version_mismatch,
            "payload size mismatch in " + path.string());
    mf.data = Tensor::matrix(n, d);
    for (std::size_t i = 0; i < n * d; ++i)
        mf.data[i] = static_cast<double>(get_f32_le(p + 32 + 4 * i));
    return mf;
}

inline void write_labels_csv(const std::filesystem::path& path, const std::vector<int>& labels) {
    std::ofstream f(path);
    require(f.good(), Errc::io_error, "cannot write " + path.string());
    f << "row,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i) f << i << ',' << labels[i] << '\n';
}

inline std::vector<int> read_labels_csv(const std::filesystem::path& path) {
    std::ifstream f(path);
    require(f.good(), Errc::io_error, "cannot open " + path.string());
    std::vector<int> labels;
    std::string line;
    std::getline(f, line); // header
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        require(comma != std::string::npos, Errc::io_error, "bad labels row: " + line);
        labels.push_back(std::stoi(line.substr(comma + 1)));
    }
    return labels;
}

} // namespace viewio

inline nlohmann::json schema_to_json(const ViewConfig& config) {
    const auto schemas = default_schemas(config.packets_per_flow, config.payload_bytes);
    nlohmann::json j;
    j["format_version"] = viewio::kVersion;
    j["packets_per_flow"] = config.packets_per_flow;
    j["payload_bytes"] = config.payload_bytes;
    j["fill_value"] = config.fill_value;
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& s : schemas) {
        nlohmann::json fields = nlohmann::json::array();
        for (const auto& f : s.fields)
            fields.push_back({{"name", f.name}, {"width", f.width}, {"offset", f.offset}});
        layers.push_back({{"layer", layer_name(s.layer)},
                          {"bits_per_packet", s.total_bits_per_packet},
                          {"fields", fields}});
    }
    j["layers"] = layers;
    nlohmann::json mask = nlohmann::json::array();
    for (const auto& [layer, field] : config.mask.masked_fields)
        mask.push_back({{"layer", layer_name(layer)}, {"field", field}});
    j["mask"] = mask;
    return j;
}

/// Write a dataset directory; refuses nothing (callers handle overwrite
/// policy). Round-trips losslessly: ternary entries are exact in float32.
inline void export_views(const MultiviewDataset& ds, const std::filesystem::path& dir,
                         const ViewConfig& config) {
    std::filesystem::create_directories(dir);
    for (const auto& v : ds.views)
        viewio::write_matrix(dir / ("view_" + std::string(layer_name(v.layer)) + ".pvw"),
                             static_cast<std::uint32_t>(v.layer), v.data);
    viewio::write_labels_csv(dir / "labels.csv", ds.labels);

    nlohmann::json schema = schema_to_json(config);
    schema["class_names"] = ds.class_names;
    schema["class_count"] = ds.class_count;
    std::ofstream sj(dir / "schema.json");
    require(sj.good(), Errc::io_error, "cannot write schema.json");
    sj << schema.dump(2) << '\n';

    std::ofstream fc(dir / "flows.csv");
    require(fc.good(), Errc::io_error, "cannot write flows.csv");
    fc << "row,source,first_ts,protocol,endpoint_a,endpoint_b\n";
    for (std::size_t i = 0; i < ds.flow_index.size(); ++i) {
        const auto& fe = ds.flow_index[i];
        fc << i << ',' << fe.source << ',' << fe.first_ts << ',' << int(fe.key.protocol) << ','
           << fe.key.a.to_string() << ',' << fe.key.b.to_string() << '\n';
    }
}

inline MultiviewDataset import_views(const std::filesystem::path& dir) {
    require(std::filesystem::exists(dir / "schema.json"), Errc::io_error,
            "no schema.json in " + dir.string());
    std::ifstream sj(dir / "schema.json");
    nlohmann::json schema = nlohmann::json::parse(sj);
    require(schema.value("format_version", 0u) == viewio::kVersion,
            Errc::format_version_mismatch, "schema format version mismatch");

    MultiviewDataset ds;
    ds.labels = viewio::read_labels_csv(dir / "labels.csv");
    ds.class_names = schema.value("class_names", std::vector<std::string>{});
    ds.class_count = schema.value("class_count", 0);
    if (ds.class_count == 0) {
        int mx = -1;
        for (int l : ds.labels) mx = std::max(mx, l);
        ds.class_count = mx + 1;
    }

    std::map<std::uint32_t, viewio::MatrixFile> found;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".pvw") continue;
        auto mf = viewio::read_matrix(entry.path());
        found.emplace(mf.layer_id, std::move(mf));
    }
    require(!found.empty(), Errc::empty_dataset, "no view files in " + dir.string());
    for (auto& [layer_id, mf] : found) {
        require(layer_id <= 3, Errc::format_version_mismatch,
                "unexpected derived matrix in a dataset directory");
        require(mf.data.rows() == ds.labels.size(), Errc::dim_mismatch,
                "view rows do not match labels");
        ViewMatrix vm;
        vm.layer = static_cast<LayerId>(layer_id);
        vm.d_f = mf.data.cols();
        vm.data = std::move(mf.data);
        ds.views.push_back(std::move(vm));
    }

    if (std::filesystem::exists(dir / "flows.csv")) {
        std::ifstream fc(dir / "flows.csv");
        std::string line;
        std::getline(fc, line);
        while (std::getline(fc, line)) {
            if (line.empty()) continue;
            FlowIndexEntry fe;
            const auto c1 = line.find(',');
            const auto c2 = line.find(',', c1 + 1);
            const auto c3 = line.find(',', c2 + 1);
            fe.source = line.substr(c1 + 1, c2 - c1 - 1);
            fe.first_ts = std::stod(line.substr(c2 + 1, c3 - c2 - 1));
            ds.flow_index.push_back(std::move(fe));
        }
    }
    return ds;
}

/// Loose loader for analyze: any directory of .pvw files plus labels.csv
/// (raw views or exported embeddings).
struct LoadedMatrices {
    std::vector<std::string> names;
    std::vector<Tensor> matrices;
    std::vector<int> labels;
};

inline LoadedMatrices load_matrix_dir(const std::filesystem::path& dir, bool include_derived) {
    LoadedMatrices out;
    out.labels = viewio::read_labels_csv(dir / "labels.csv");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".pvw") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<std::pair<std::uint32_t, std::pair<std::string, Tensor>>> loaded;
    for (const auto& f : files) {
        auto mf = viewio::read_matrix(f);
        if (!include_derived && mf.layer_id > 3) continue;
        loaded.emplace_back(mf.layer_id, std::make_pair(f.stem().string(), std::move(mf.data)));
    }
    std::stable_sort(loaded.begin(), loaded.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [id, named] : loaded) {
        require(named.second.rows() == out.labels.size(), Errc::dim_mismatch,
                "matrix rows do not match labels in " + dir.string());
        out.names.push_back(named.first);
        out.matrices.push_back(std::move(named.second));
        (void)id;
    }
    require(!out.matrices.empty(), Errc::empty_dataset, "no matrices in " + dir.string());
    return out;
}

} // namespace pacc
