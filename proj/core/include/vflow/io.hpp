#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "vflow/field.hpp"
#include "vflow/mask.hpp"
#include "vflow/measurement.hpp"

namespace vflow {

// Every file is: 8-byte magic | uint64 little-endian header length H |
// H bytes of UTF-8 JSON header | binary payload. The byte-level layout is
// documented in docs/file-formats.md.

inline constexpr std::string_view kFormatVersion = "1.0";

enum class FieldKind { magnitude, phase, label, velocity };

std::string to_string(FieldKind kind);
FieldKind parse_field_kind(std::string_view name);

struct FieldFile {
  ScalarField values;
  FieldKind kind = FieldKind::magnitude;
  std::string units;
  std::string name;

  bool operator==(const FieldFile&) const = default;
};

/// Metadata carried by a dataset header next to the measurement set.
struct DatasetInfo {
  /// Mask file path as written in the header, relative to the dataset file.
  std::string mask_file;
  std::uint64_t seed = 0;
  int frame = 0;
};

struct LoadedDataset {
  MeasurementSet data;
  DatasetInfo info;
};

std::string encode_mask(const SamplingMask& mask);
SamplingMask decode_mask(std::string_view bytes);

std::string encode_field(const FieldFile& field);
FieldFile decode_field(std::string_view bytes);

/// The dataset payload holds 4 * m complex samples (real, imaginary doubles)
/// in channel order flow+, flow-, noflow+, noflow-.
std::string encode_dataset(const MeasurementSet& data, const DatasetInfo& info);
/// Decodes against an already loaded mask (the one named by the header).
LoadedDataset decode_dataset(std::string_view bytes, std::shared_ptr<const SamplingMask> mask);
/// Header of a dataset without its payload, for resolving the mask reference.
DatasetInfo peek_dataset_info(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

void write_mask(const std::filesystem::path& path, const SamplingMask& mask);
SamplingMask read_mask(const std::filesystem::path& path);

void write_field(const std::filesystem::path& path, const FieldFile& field);
FieldFile read_field(const std::filesystem::path& path);

void write_dataset(const std::filesystem::path& path, const MeasurementSet& data,
                   const DatasetInfo& info);
/// Reads the dataset and the mask file it references.
LoadedDataset read_dataset(const std::filesystem::path& path);

}  // namespace vflow
