// pacc: packet captures -> per-layer bit views -> redundancy analysis ->
// cross-layer consensus training -> classification reports.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pacc/eval.hpp"
#include "pacc/flow.hpp"
#include "pacc/packet.hpp"
#include "pacc/pcap.hpp"
#include "pacc/redundancy.hpp"
#include "pacc/trainer.hpp"
#include "pacc/view_io.hpp"
#include "pacc/views.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

int exit_code_for(pacc::Errc code) {
    switch (code) {
        case pacc::Errc::bad_magic:
        case pacc::Errc::truncated:
        case pacc::Errc::unsupported_link_type:
        case pacc::Errc::unknown_field:
        case pacc::Errc::no_enabled_layers:
        case pacc::Errc::empty_dataset:
        case pacc::Errc::io_error:
        case pacc::Errc::format_version_mismatch:
        case pacc::Errc::label_out_of_range:
        case pacc::Errc::class_too_small:
        case pacc::Errc::dim_mismatch:
        case pacc::Errc::empty_split:
        case pacc::Errc::invalid_argument:
            return kExitUsage;
        default:
            return kExitRuntime;
    }
}

// ---------------------------------------------------------------------------
// Run configuration: one flat JSON document mirroring the training options
// plus encoding/analysis settings. CLI flags override file keys; unknown
// keys are rejected.
// ---------------------------------------------------------------------------

struct RunConfig {
    pacc::train::TrainConfig train;
    std::vector<std::string> layers = {"LINK", "NETWORK", "TRANSPORT", "APPLICATION"};
    std::vector<std::string> mask;       // "LAYER:field" entries added on top
    bool default_mask = true;
    bool mask_ports = false;
    std::size_t packets_per_flow = 10;
    std::size_t payload_bytes = 64;
    double fill_value = -1.0;
    double idle_timeout = 0.0;
    std::size_t pca_k = 3;
    int bins = 8;

    json to_json() const {
        json j = train.to_json();
        j["layers"] = layers;
        j["mask"] = mask;
        j["default_mask"] = default_mask;
        j["mask_ports"] = mask_ports;
        j["packets_per_flow"] = packets_per_flow;
        j["payload_bytes"] = payload_bytes;
        j["fill_value"] = fill_value;
        j["idle_timeout"] = idle_timeout;
        j["pca_k"] = pca_k;
        j["bins"] = bins;
        return j;
    }

    static const std::set<std::string>& known_keys() {
        static const std::set<std::string> keys = [] {
            std::set<std::string> k;
            for (const auto& [key, value] : RunConfig{}.to_json().items()) k.insert(key);
            return k;
        }();
        return keys;
    }

    void merge_file(const fs::path& path) {
        std::ifstream in(path);
        pacc::require(in.good(), pacc::Errc::io_error, "config not found: " + path.string());
        json j = json::parse(in, nullptr, /*allow_exceptions=*/true);
        for (const auto& [key, value] : j.items())
            pacc::require(known_keys().count(key) > 0, pacc::Errc::invalid_argument,
                          "unknown config key '" + key + "'");
        train = pacc::train::TrainConfig::from_json(j);
        auto get = [&](const char* key, auto& target) {
            if (j.contains(key)) target = j.at(key).get<std::decay_t<decltype(target)>>();
        };
        get("layers", layers);
        get("mask", mask);
        get("default_mask", default_mask);
        get("mask_ports", mask_ports);
        get("packets_per_flow", packets_per_flow);
        get("payload_bytes", payload_bytes);
        get("fill_value", fill_value);
        get("idle_timeout", idle_timeout);
        get("pca_k", pca_k);
        get("bins", bins);
    }

    pacc::ViewConfig view_config() const {
        pacc::ViewConfig vc;
        vc.packets_per_flow = packets_per_flow;
        vc.payload_bytes = payload_bytes;
        vc.fill_value = fill_value;
        vc.enabled_layers.clear();
        for (const auto& name : layers) {
            auto id = pacc::layer_from_name(name);
            pacc::require(id.has_value(), pacc::Errc::invalid_argument,
                          "unknown layer '" + name + "'");
            vc.enabled_layers.push_back(*id);
        }
        vc.mask = default_mask ? pacc::MaskSpec::default_mask(mask_ports) : pacc::MaskSpec{};
        vc.mask.fill_value = fill_value;
        for (const auto& entry : mask) {
            const auto colon = entry.find(':');
            pacc::require(colon != std::string::npos, pacc::Errc::invalid_argument,
                          "mask entries use LAYER:field, got '" + entry + "'");
            auto id = pacc::layer_from_name(entry.substr(0, colon));
            pacc::require(id.has_value(), pacc::Errc::invalid_argument,
                          "unknown layer in mask entry '" + entry + "'");
            vc.mask.add(*id, entry.substr(colon + 1));
        }
        return vc;
    }
};

// ---------------------------------------------------------------------------
// Output-directory discipline
// ---------------------------------------------------------------------------

void ensure_out_dir(const fs::path& dir, bool force) {
    if (fs::exists(dir) && !fs::is_empty(dir)) {
        pacc::require(force, pacc::Errc::invalid_argument,
                      "output directory " + dir.string() + " is not empty (use --force)");
    }
    fs::create_directories(dir);
}

std::uint64_t hash_file(const fs::path& path, std::uint64_t seed) {
    std::ifstream in(path, std::ios::binary);
    pacc::require(in.good(), pacc::Errc::io_error, "cannot open " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return pacc::fnv1a(bytes, seed);
}

std::uint64_t hash_inputs(const std::vector<fs::path>& inputs) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& p : inputs) {
        h = pacc::fnv1a(p.filename().string(), h);
        h = hash_file(p, h);
    }
    return h;
}

void write_effective_config(const fs::path& dir, const std::string& command,
                            const RunConfig& cfg, const std::vector<fs::path>& inputs) {
    json j;
    j["command"] = command;
    j["config"] = cfg.to_json();
    std::vector<std::string> names;
    for (const auto& p : inputs) names.push_back(p.string());
    j["inputs"] = names;
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(hash_inputs(inputs)));
    j["input_hash"] = hex;
    std::ofstream out(dir / "effective_config.json");
    pacc::require(out.good(), pacc::Errc::io_error, "cannot write effective_config.json");
    out << j.dump(2) << '\n';
}

std::vector<fs::path> dataset_input_files(const fs::path& views_dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(views_dir))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    pacc::require(out.good(), pacc::Errc::io_error, "cannot write " + path.string());
    out << text;
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

int cmd_encode(const RunConfig& cfg, const fs::path& pcap_dir, const fs::path& manifest_path,
               const fs::path& out, bool force) {
    ensure_out_dir(out, force);
    auto manifest = pacc::net::LabelManifest::load_csv(manifest_path.string());

    std::vector<fs::path> pcaps;
    for (const auto& entry : fs::directory_iterator(pcap_dir))
        if (entry.path().extension() == ".pcap") pcaps.push_back(entry.path());
    std::sort(pcaps.begin(), pcaps.end());
    pacc::require(!pcaps.empty(), pacc::Errc::empty_dataset,
                  "no .pcap files in " + pcap_dir.string());

    // capture files are independent flow universes
    std::vector<pacc::net::FlowRecord> flows;
    std::size_t unlabeled = 0;
    for (const auto& path : pcaps) {
        auto raw = pacc::net::read_pcap(path.string());
        std::vector<pacc::net::PacketHeaders> parsed;
        parsed.reserve(raw.size());
        for (const auto& pkt : raw) {
            auto h = pacc::net::parse_packet(pkt);
            h.source_file = path.string();
            parsed.push_back(std::move(h));
        }
        auto file_flows = pacc::net::assemble_flows(parsed, &manifest, cfg.idle_timeout);
        for (auto& f : file_flows) {
            if (!f.label.has_value()) {
                ++unlabeled;
                continue;
            }
            flows.push_back(std::move(f));
        }
    }
    if (unlabeled > 0)
        std::cerr << "warning: " << unlabeled << " flows had no manifest entry and were dropped\n";

    auto ds = pacc::build_views(flows, cfg.view_config(), manifest.class_names());
    pacc::export_views(ds, out, cfg.view_config());
    write_text(out / "labels.json", manifest.to_json().dump(2) + "\n");

    std::vector<fs::path> inputs = pcaps;
    inputs.push_back(manifest_path);
    write_effective_config(out, "encode", cfg, inputs);

    std::map<int, std::size_t> per_class;
    for (int l : ds.labels) ++per_class[l];
    std::cout << "flows: " << ds.flow_count() << "\nviews: " << ds.view_count()
              << "\nclasses: " << ds.class_count << "\n";
    for (const auto& [cls, count] : per_class)
        std::cout << "  class " << cls << " (" << manifest.class_names()[static_cast<std::size_t>(cls)]
                  << "): " << count << "\n";
    return kExitOk;
}

int cmd_analyze(const RunConfig& cfg, const fs::path& views_dir, const fs::path& out, bool force,
                int silhouette_mode /* -1 auto, 0 off, 1 on */) {
    pacc::require(cfg.bins >= 2, pacc::Errc::invalid_argument, "bins must be >= 2");
    pacc::require(cfg.pca_k >= 1, pacc::Errc::invalid_argument, "pca-k must be >= 1");
    ensure_out_dir(out, force);

    auto loaded = pacc::load_matrix_dir(views_dir, /*include_derived=*/false);
    std::vector<const pacc::Tensor*> mats;
    for (const auto& m : loaded.matrices) mats.push_back(&m);

    bool with_sil = silhouette_mode == 1;
    if (silhouette_mode < 0) {
        std::size_t total_cols = 0;
        for (const auto& m : loaded.matrices) total_cols += m.cols();
        with_sil = loaded.labels.size() <= 4000 && total_cols <= 4096;
    }

    auto rep = pacc::info::redundancy_report(mats, loaded.names, loaded.labels, cfg.pca_k,
                                             cfg.bins, with_sil);

    // embedding exports carry a fused matrix; score it too when present
    json extra;
    if (fs::exists(views_dir / "fused.pvw")) {
        auto fused = pacc::viewio::read_matrix(views_dir / "fused.pvw");
        extra["fused_silhouette"] = pacc::info::silhouette(fused.data, loaded.labels);
        extra["fused_compression_ratio"] = pacc::info::compression_ratio(fused.data);
    }

    json j = rep.to_json();
    if (!extra.is_null()) j["fused"] = extra;
    write_text(out / "redundancy_report.json", j.dump(2) + "\n");
    write_text(out / "redundancy_report.csv", rep.cmi_csv());
    write_effective_config(out, "analyze", cfg, dataset_input_files(views_dir));
    std::cout << "layers: " << loaded.names.size() << "\nreport: "
              << (out / "redundancy_report.json").string() << "\n";
    return kExitOk;
}

int cmd_train(const RunConfig& cfg, const fs::path& views_dir, const fs::path& out, bool force) {
    ensure_out_dir(out, force);
    auto ds = pacc::import_views(views_dir);
    auto result = pacc::train::train(ds, cfg.train);
    result.checkpoint.save(out / "checkpoint.ckpt");
    write_text(out / "history.csv", result.history.to_csv());

    auto test_eval = pacc::eval::evaluate(result.checkpoint, ds, result.data_split.test);
    write_text(out / "metrics.json", test_eval.report.to_json().dump(2) + "\n");
    write_text(out / "confusion.csv", test_eval.matrix.to_csv());
    write_effective_config(out, "train", cfg, dataset_input_files(views_dir));

    std::cout << "best_val_accuracy: " << result.history.best_val_accuracy
              << "\ntest_accuracy: " << test_eval.report.accuracy
              << "\ntest_macro_f1: " << test_eval.report.macro_f1 << "\n";
    return kExitOk;
}

int cmd_ablate(const RunConfig& cfg, const fs::path& views_dir, const fs::path& out, bool force) {
    ensure_out_dir(out, force);
    auto ds = pacc::import_views(views_dir);
    auto rows = pacc::train::run_ablations(ds, cfg.train);
    write_text(out / "ablation_table.csv", pacc::train::ablation_table_csv(rows));
    for (const auto& r : rows)
        write_text(out / ("history_" + r.variant + ".csv"), r.run.history.to_csv());
    write_effective_config(out, "ablate", cfg, dataset_input_files(views_dir));
    for (const auto& r : rows)
        std::cout << r.variant << ": acc=" << r.test_accuracy << " macro_f1=" << r.test_macro_f1
                  << "\n";
    return kExitOk;
}

int cmd_eval(const RunConfig& cfg, const fs::path& views_dir, const fs::path& ckpt_path,
             const fs::path& out, bool force, const std::string& split_name) {
    ensure_out_dir(out, force);
    auto ds = pacc::import_views(views_dir);
    auto ck = pacc::model::Checkpoint::load(ckpt_path);

    // splits are reproducible from the training snapshot
    auto tcfg = pacc::train::TrainConfig::from_json(ck.config.at("training"));
    auto sp = pacc::train::split(ds.labels, tcfg.split_mode, tcfg.seed);
    std::vector<std::size_t> rows;
    if (split_name == "train") rows = sp.train;
    else if (split_name == "val") rows = sp.val;
    else if (split_name == "test") rows = sp.test;
    else if (split_name == "all")
        for (std::size_t i = 0; i < ds.flow_count(); ++i) rows.push_back(i);
    else
        pacc::fail(pacc::Errc::invalid_argument, "split must be train|val|test|all");

    auto res = pacc::eval::evaluate(ck, ds, rows);
    write_text(out / "metrics.json", res.report.to_json().dump(2) + "\n");
    write_text(out / "confusion.csv", res.matrix.to_csv());
    auto inputs = dataset_input_files(views_dir);
    inputs.push_back(ckpt_path);
    write_effective_config(out, "eval", cfg, inputs);
    std::cout << "accuracy: " << res.report.accuracy << "\nmacro_f1: " << res.report.macro_f1
              << "\n";
    return kExitOk;
}

int cmd_predict(const fs::path& views_dir, const fs::path& ckpt_path, std::size_t row,
                const fs::path& out) {
    auto ds = pacc::import_views(views_dir);
    pacc::require(row < ds.flow_count(), pacc::Errc::invalid_argument,
                  "row " + std::to_string(row) + " out of range");
    auto net = pacc::model::Checkpoint::load(ckpt_path).to_model();
    auto preds = net.predict(pacc::train::detail::batch_views(ds, {row}));
    const auto& p = preds.at(0);

    json j;
    j["row"] = row;
    j["class"] = p.label;
    if (p.label < static_cast<int>(ds.class_names.size()))
        j["class_name"] = ds.class_names[static_cast<std::size_t>(p.label)];
    j["global_probs"] = p.global_probs;
    j["per_layer_probs"] = p.layer_probs;
    j["fusion_weights"] = p.fusion_weights;
    j["fused_embedding"] = p.fused;
    const std::string text = j.dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        write_text(out, text);
    return kExitOk;
}

int cmd_export_embeddings(const RunConfig& cfg, const fs::path& views_dir,
                          const fs::path& ckpt_path, const fs::path& out, bool force) {
    ensure_out_dir(out, force);
    auto ds = pacc::import_views(views_dir);
    auto net = pacc::model::Checkpoint::load(ckpt_path).to_model();
    pacc::eval::export_embeddings(net, ds, out);
    auto inputs = dataset_input_files(views_dir);
    inputs.push_back(ckpt_path);
    write_effective_config(out, "export-embeddings", cfg, inputs);
    std::cout << "embeddings: " << out.string() << "\n";
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const fs::path& views_dir, const fs::path& out, bool force,
              const std::string& param, const std::vector<double>& values) {
    pacc::require(param == "dim" || param == "beta", pacc::Errc::invalid_argument,
                  "sweep parameter must be dim or beta");
    pacc::require(!values.empty(), pacc::Errc::invalid_argument, "no sweep values given");
    ensure_out_dir(out, force);
    auto ds = pacc::import_views(views_dir);

    std::string csv = "value,accuracy,macro_f1\n";
    for (double v : values) {
        auto run_cfg = cfg.train;
        if (param == "dim") {
            pacc::require(v >= 1, pacc::Errc::invalid_argument, "dim must be >= 1");
            run_cfg.latent_dim = static_cast<std::size_t>(v);
        } else {
            run_cfg.beta_cb = v;
        }
        auto result = pacc::train::train(ds, run_cfg);
        auto test_eval = pacc::eval::evaluate(result.checkpoint, ds, result.data_split.test);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%g,%.6f,%.6f\n", v, test_eval.report.accuracy,
                      test_eval.report.macro_f1);
        csv += buf;
        std::cerr << "sweep " << param << "=" << v << " acc=" << test_eval.report.accuracy
                  << " macro_f1=" << test_eval.report.macro_f1 << "\n";
    }
    write_text(out / "sweep.csv", csv);
    write_effective_config(out, "sweep", cfg, dataset_input_files(views_dir));
    std::cout << (out / "sweep.csv").string() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"protocol-aware cross-layer traffic representation toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    app.add_option("--config", config_path, "JSON run configuration (flags override keys)")
        ->envname("PACC_CONFIG");

    // shared options, wired into every subcommand that needs them
    bool force = false;
    std::string out_dir;
    std::string views_dir;
    std::string ckpt_path;

    auto add_common = [&](CLI::App* sub, bool needs_out = true) {
        if (needs_out) sub->add_option("--out", out_dir, "output directory")->required();
        sub->add_flag("--force", force, "overwrite a non-empty output directory");
    };
    auto add_train_flags = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.train.seed, "run seed");
        sub->add_option("--batch-size", cfg.train.batch_size, "minibatch size");
        sub->add_option("--lr", cfg.train.lr, "Adam learning rate");
        sub->add_option("--epochs", cfg.train.epochs, "epoch budget");
        sub->add_option("--patience", cfg.train.patience, "early-stopping patience");
        sub->add_option("--beta", cfg.train.beta_cb, "class-balance beta");
        sub->add_option("--latent-dim", cfg.train.latent_dim, "latent dimension D");
        sub->add_option("--split-mode", cfg.train.split_mode, "8:1:1 or 9:1");
        sub->add_option("--dropout", cfg.train.dropout, "encoder dropout rate");
        sub->add_option("--encoder-hidden", cfg.train.encoder_hidden, "encoder hidden widths");
        sub->add_option("--decoder-hidden", cfg.train.decoder_hidden, "decoder hidden widths");
        sub->add_option("--tau-nce", cfg.train.tau_nce, "InfoNCE temperature");
        sub->add_option("--tau-fuse", cfg.train.tau_fuse, "fusion softmax temperature");
        sub->add_flag("--no-rec,!--rec", cfg.train.use_rec, "toggle reconstruction loss");
        sub->add_flag("--no-con,!--con", cfg.train.use_con, "toggle consensus loss");
        sub->add_flag("--no-task,!--task", cfg.train.use_task, "toggle per-layer supervision");
    };

    // encode
    std::string pcap_dir, manifest_path;
    auto* enc = app.add_subcommand("encode", "pcap files -> multiview bit dataset");
    enc->add_option("--pcap-dir", pcap_dir, "directory of .pcap files")->required();
    enc->add_option("--manifest", manifest_path, "CSV manifest path,label_name")->required();
    enc->add_option("--layers", cfg.layers, "enabled layers (LINK/NETWORK/TRANSPORT/APPLICATION or L2/L3/L4/L7)");
    enc->add_option("--packets-per-flow", cfg.packets_per_flow, "packet slots per flow");
    enc->add_option("--payload-bytes", cfg.payload_bytes, "payload bytes in the L7 view");
    enc->add_option("--fill", cfg.fill_value, "fill value for absent bits");
    enc->add_option("--mask", cfg.mask, "extra masked fields, LAYER:field");
    enc->add_flag("--mask-ports", cfg.mask_ports, "also mask transport ports");
    enc->add_flag("!--no-default-mask", cfg.default_mask, "drop the default artifact mask");
    enc->add_option("--idle-timeout", cfg.idle_timeout, "split flows idle longer than this (s)");
    add_common(enc);

    // analyze
    int silhouette_mode = -1;
    auto* ana = app.add_subcommand("analyze", "redundancy / task-relevance report");
    ana->add_option("--views", views_dir, "dataset or embedding directory")->required();
    ana->add_option("--pca-k", cfg.pca_k, "PCA components per view");
    ana->add_option("--bins", cfg.bins, "quantile bins per component");
    ana->add_flag_function("--silhouette", [&](std::int64_t) { silhouette_mode = 1; },
                           "force silhouette computation");
    ana->add_flag_function("--no-silhouette", [&](std::int64_t) { silhouette_mode = 0; },
                           "skip silhouette computation");
    add_common(ana);

    // train
    auto* trn = app.add_subcommand("train", "train the consensus model");
    trn->add_option("--views", views_dir, "dataset directory")->required();
    add_train_flags(trn);
    add_common(trn);

    // ablate
    auto* abl = app.add_subcommand("ablate", "train loss-term ablation variants");
    abl->add_option("--views", views_dir, "dataset directory")->required();
    add_train_flags(abl);
    add_common(abl);

    // eval
    std::string split_name = "test";
    auto* evl = app.add_subcommand("eval", "score a checkpoint on a split");
    evl->add_option("--views", views_dir, "dataset directory")->required();
    evl->add_option("--checkpoint", ckpt_path, "checkpoint file")->required();
    evl->add_option("--split", split_name, "train|val|test|all");
    add_common(evl);

    // predict
    std::size_t row = 0;
    std::string predict_out;
    auto* prd = app.add_subcommand("predict", "per-flow prediction with diagnostics");
    prd->add_option("--views", views_dir, "dataset directory")->required();
    prd->add_option("--checkpoint", ckpt_path, "checkpoint file")->required();
    prd->add_option("--row", row, "flow row index");
    prd->add_option("--out", predict_out, "write JSON here instead of stdout");

    // export-embeddings
    auto* exp = app.add_subcommand("export-embeddings", "write per-layer latents and fusion data");
    exp->add_option("--views", views_dir, "dataset directory")->required();
    exp->add_option("--checkpoint", ckpt_path, "checkpoint file")->required();
    add_common(exp);

    // sweep
    std::string sweep_param;
    std::vector<double> sweep_values;
    auto* swp = app.add_subcommand("sweep", "latent-dimension or beta sensitivity sweep");
    swp->add_option("--views", views_dir, "dataset directory")->required();
    swp->add_option("--param", sweep_param, "dim or beta")->required();
    swp->add_option("--values", sweep_values, "sweep values")->required();
    add_train_flags(swp);
    add_common(swp);

    // config file merging must happen before flag overrides; CLI11 parses
    // flags afterwards, so pre-scan for --config first
    try {
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--config") cfg.merge_file(argv[i + 1]);
    } catch (const pacc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (enc->parsed()) return cmd_encode(cfg, pcap_dir, manifest_path, out_dir, force);
        if (ana->parsed()) return cmd_analyze(cfg, views_dir, out_dir, force, silhouette_mode);
        if (trn->parsed()) return cmd_train(cfg, views_dir, out_dir, force);
        if (abl->parsed()) return cmd_ablate(cfg, views_dir, out_dir, force);
        if (evl->parsed()) return cmd_eval(cfg, views_dir, ckpt_path, out_dir, force, split_name);
        if (prd->parsed()) return cmd_predict(views_dir, ckpt_path, row, predict_out);
        if (exp->parsed()) return cmd_export_embeddings(cfg, views_dir, ckpt_path, out_dir, force);
        if (swp->parsed()) return cmd_sweep(cfg, views_dir, out_dir, force, sweep_param, sweep_values);
    } catch (const pacc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
