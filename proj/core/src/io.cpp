#include "vflow/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "json.hpp"

namespace vflow {
namespace {

using nlohmann::json;

constexpr std::string_view kMaskMagic = "VFLOWMSK";
constexpr std::string_view kFieldMagic = "VFLOWFLD";
constexpr std::string_view kDatasetMagic = "VFLOWDAT";

template <typename T>
void append_le(std::string& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.append(bytes, sizeof(T));
}

template <typename T>
T read_le(std::string_view bytes, std::size_t offset) {
  char buf[sizeof(T)];
  std::memcpy(buf, bytes.data() + offset, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

std::string pack(std::string_view magic, const json& header, std::string_view payload) {
  const std::string text = header.dump();
  std::string out;
  out.reserve(magic.size() + 8 + text.size() + payload.size());
  out.append(magic);
  append_le<std::uint64_t>(out, text.size());
  out.append(text);
  out.append(payload);
  return out;
}

struct Unpacked {
  json header;
  std::string_view payload;
};

Unpacked unpack(std::string_view bytes, std::string_view magic) {
  if (bytes.size() < magic.size() + 8 || bytes.substr(0, magic.size()) != magic) {
    throw FormatError("bad magic: expected a " + std::string(magic) + " file");
  }
  const auto len = read_le<std::uint64_t>(bytes, magic.size());
  const std::size_t start = magic.size() + 8;
  if (len > bytes.size() - start) throw FormatError("header length exceeds file size");
  Unpacked u;
  try {
    u.header = json::parse(bytes.substr(start, len));
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed JSON header: ") + e.what());
  }
  if (!u.header.is_object()) throw FormatError("header is not a JSON object");
  const std::string version = u.header.value("format_version", "");
  if (version.empty()) throw FormatError("header lacks format_version");
  if (version.substr(0, version.find('.')) != kFormatVersion.substr(0, kFormatVersion.find('.'))) {
    throw FormatError("unsupported major format version " + version);
  }
  u.payload = bytes.substr(start + len);
  return u;
}

template <typename T>
T field_of(const json& header, const char* key) {
  try {
    return header.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("header field '") + key + "': " + e.what());
  }
}

void expect_payload(std::string_view payload, std::size_t expected) {
  if (payload.size() != expected) {
    throw FormatError("payload holds " + std::to_string(payload.size()) + " bytes, expected " +
                      std::to_string(expected));
  }
}

std::size_t checked_dim(const json& header, const char* key) {
  const auto v = field_of<std::int64_t>(header, key);
  if (v < 2 || v > (1 << 20)) throw FormatError(std::string("invalid ") + key);
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::magnitude: return "magnitude";
    case FieldKind::phase: return "phase";
    case FieldKind::label: return "label";
    case FieldKind::velocity: return "velocity";
  }
  return "unknown";
}

FieldKind parse_field_kind(std::string_view name) {
  if (name == "magnitude") return FieldKind::magnitude;
  if (name == "phase") return FieldKind::phase;
  if (name == "label") return FieldKind::label;
  if (name == "velocity") return FieldKind::velocity;
  throw FormatError("unknown field kind '" + std::string(name) + "'");
}

std::string encode_mask(const SamplingMask& mask) {
  json h;
  h["format_version"] = kFormatVersion;
  h["width"] = mask.width();
  h["height"] = mask.height();
  h["kind"] = to_string(mask.kind());
  h["fraction"] = mask.fraction();
  h["seed"] = mask.seed();
  h["count"] = mask.count();
  std::string bits((mask.size() + 7) / 8, '\0');
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask.is_selected(i)) bits[i / 8] = static_cast<char>(bits[i / 8] | (1u << (i % 8)));
  }
  return pack(kMaskMagic, h, bits);
}

SamplingMask decode_mask(std::string_view bytes) {
  const Unpacked u = unpack(bytes, kMaskMagic);
  const std::size_t w = checked_dim(u.header, "width");
  const std::size_t h = checked_dim(u.header, "height");
  expect_payload(u.payload, (w * h + 7) / 8);
  BinaryField sel(w, h);
  for (std::size_t i = 0; i < w * h; ++i) {
    sel[i] = (static_cast<unsigned char>(u.payload[i / 8]) >> (i % 8)) & 1u;
  }
  MaskKind kind;
  try {
    kind = parse_mask_kind(field_of<std::string>(u.header, "kind"));
  } catch (const ConfigError& e) {
    throw FormatError(e.what());
  }
  SamplingMask mask(std::move(sel), kind, field_of<double>(u.header, "fraction"),
                    field_of<std::uint64_t>(u.header, "seed"));
  if (mask.count() != field_of<std::size_t>(u.header, "count")) {
    throw FormatError("mask bitmap does not match its header count");
  }
  return mask;
}

std::string encode_field(const FieldFile& field) {
  json h;
  h["format_version"] = kFormatVersion;
  h["width"] = field.values.width();
  h["height"] = field.values.height();
  h["kind"] = to_string(field.kind);
  h["units"] = field.units;
  h["name"] = field.name;
  std::string payload;
  payload.reserve(field.values.size() * 8);
  for (double v : field.values) append_le(payload, v);
  return pack(kFieldMagic, h, payload);
}

FieldFile decode_field(std::string_view bytes) {
  const Unpacked u = unpack(bytes, kFieldMagic);
  const std::size_t w = checked_dim(u.header, "width");
  const std::size_t h = checked_dim(u.header, "height");
  expect_payload(u.payload, w * h * 8);
  FieldFile f;
  f.values = ScalarField(w, h);
  for (std::size_t i = 0; i < w * h; ++i) f.values[i] = read_le<double>(u.payload, 8 * i);
  f.kind = parse_field_kind(field_of<std::string>(u.header, "kind"));
  f.units = u.header.value("units", "");
  f.name = u.header.value("name", "");
  return f;
}

std::string encode_dataset(const MeasurementSet& data, const DatasetInfo& info) {
  data.validate();
  const std::size_t m = data.channels[0].mask->count();
  json h;
  h["format_version"] = kFormatVersion;
  h["width"] = data.width();
  h["height"] = data.height();
  h["channels"] = json::array();
  for (auto name : kChannelNames) h["channels"].push_back(std::string(name));
  h["component"] = data.component;
  h["zeta"] = data.zeta;
  h["sigma"] = data.noise_sigma();
  h["mask"] = info.mask_file;
  h["samples_per_channel"] = m;
  h["seed"] = info.seed;
  h["frame"] = info.frame;
  std::string payload;
  payload.reserve(4 * m * 16);
  for (const auto& ch : data.channels) {
    for (const auto& s : ch.samples) {
      append_le(payload, s.real());
      append_le(payload, s.imag());
    }
  }
  return pack(kDatasetMagic, h, payload);
}

DatasetInfo peek_dataset_info(std::string_view bytes) {
  const Unpacked u = unpack(bytes, kDatasetMagic);
  DatasetInfo info;
  info.mask_file = field_of<std::string>(u.header, "mask");
  info.seed = field_of<std::uint64_t>(u.header, "seed");
  info.frame = field_of<int>(u.header, "frame");
  return info;
}

LoadedDataset decode_dataset(std::string_view bytes, std::shared_ptr<const SamplingMask> mask) {
  const Unpacked u = unpack(bytes, kDatasetMagic);
  if (!mask) throw FormatError("dataset decoding needs its sampling mask");
  const std::size_t w = checked_dim(u.header, "width");
  const std::size_t h = checked_dim(u.header, "height");
  if (w != mask->width() || h != mask->height()) {
    throw FormatError("dataset dimensions do not match the referenced mask");
  }
  const auto names = field_of<std::vector<std::string>>(u.header, "channels");
  if (names.size() != 4) throw FormatError("dataset must list exactly 4 channels");
  for (std::size_t l = 0; l < 4; ++l) {
    if (names[l] != kChannelNames[l]) throw FormatError("unexpected channel order in header");
  }
  const auto m = field_of<std::size_t>(u.header, "samples_per_channel");
  if (m != mask->count()) throw FormatError("samples_per_channel does not match the mask");
  expect_payload(u.payload, 4 * m * 16);

  LoadedDataset out;
  out.info = peek_dataset_info(bytes);
  out.data.zeta = field_of<double>(u.header, "zeta");
  out.data.component = field_of<std::string>(u.header, "component");
  const double sigma = field_of<double>(u.header, "sigma");
  std::size_t offset = 0;
  for (std::size_t l = 0; l < 4; ++l) {
    KSpaceChannel ch;
    ch.mask = mask;
    ch.noise_sigma = sigma;
    ch.samples.resize(m);
    for (std::size_t s = 0; s < m; ++s) {
      const double re = read_le<double>(u.payload, offset);
      const double im = read_le<double>(u.payload, offset + 8);
      ch.samples[s] = Complex(re, im);
      offset += 16;
    }
    out.data.channels.push_back(std::move(ch));
  }
  try {
    out.data.validate();
  } catch (const ConfigError& e) {
    throw FormatError(std::string("invalid dataset: ") + e.what());
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error writing " + path.string());
}

void write_mask(const std::filesystem::path& path, const SamplingMask& mask) {
  write_file(path, encode_mask(mask));
}

SamplingMask read_mask(const std::filesystem::path& path) { return decode_mask(read_file(path)); }

void write_field(const std::filesystem::path& path, const FieldFile& field) {
  write_file(path, encode_field(field));
}

FieldFile read_field(const std::filesystem::path& path) { return decode_field(read_file(path)); }

void write_dataset(const std::filesystem::path& path, const MeasurementSet& data,
                   const DatasetInfo& info) {
  write_file(path, encode_dataset(data, info));
}

LoadedDataset read_dataset(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  const DatasetInfo info = peek_dataset_info(bytes);
  auto mask =
      std::make_shared<const SamplingMask>(read_mask(path.parent_path() / info.mask_file));
  return decode_dataset(bytes, std::move(mask));
}

}  // namespace vflow
