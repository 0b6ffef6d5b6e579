#pragma once

#include <stdexcept>
#include <string>

namespace pacc {

// Every failure mode in the library maps to one of these codes so callers
// (and the CLI exit-code logic) can react without string matching.
enum class Errc {
    bad_magic,
    truncated,
    unsupported_link_type,
    malformed,
    no_network_layer,
    unknown_field,
    no_enabled_layers,
    empty_dataset,
    io_error,
    format_version_mismatch,
    empty_distribution,
    degenerate_rank,
    single_class,
    shape_mismatch,
    non_positive_temperature,
    non_scalar_objective,
    batch_too_small,
    label_out_of_range,
    empty_class,
    all_rows_degenerate,
    class_too_small,
    non_finite_loss,
    dim_mismatch,
    empty_split,
    invalid_argument,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::bad_magic: return "BadMagic";
        case Errc::truncated: return "Truncated";
        case Errc::unsupported_link_type: return "UnsupportedLinkType";
        case Errc::malformed: return "Malformed";
        case Errc::no_network_layer: return "NoNetworkLayer";
        case Errc::unknown_field: return "UnknownField";
        case Errc::no_enabled_layers: return "NoEnabledLayers";
        case Errc::empty_dataset: return "EmptyDataset";
        case Errc::io_error: return "IoError";
        case Errc::format_version_mismatch: return "FormatVersionMismatch";
        case Errc::empty_distribution: return "EmptyDistribution";
        case Errc::degenerate_rank: return "DegenerateRank";
        case Errc::single_class: return "SingleClass";
        case Errc::shape_mismatch: return "ShapeMismatch";
        case Errc::non_positive_temperature: return "NonPositiveTemperature";
        case Errc::non_scalar_objective: return "NonScalarObjective";
        case Errc::batch_too_small: return "BatchTooSmall";
        case Errc::label_out_of_range: return "LabelOutOfRange";
        case Errc::empty_class: return "EmptyClass";
        case Errc::all_rows_degenerate: return "AllRowsDegenerate";
        case Errc::class_too_small: return "ClassTooSmall";
        case Errc::non_finite_loss: return "NonFiniteLoss";
        case Errc::dim_mismatch: return "DimMismatch";
        case Errc::empty_split: return "EmptySplit";
        case Errc::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Errc code, const std::string& what) {
    if (!ok) fail(code, what);
}

} // namespace pacc
