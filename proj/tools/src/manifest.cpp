#include "manifest.hpp"

#include <array>

#include "json.hpp"
#include "vflow/errors.hpp"
#include "vflow/io.hpp"

namespace vflow {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kManifestVersion = "1.0";

ScalarField from_labels(const BinaryField& b) {
  ScalarField f(b.width(), b.height());
  for (std::size_t i = 0; i < b.size(); ++i) f[i] = b[i] ? 1.0 : 0.0;
  return f;
}

BinaryField to_labels(const ScalarField& f) {
  BinaryField b(f.width(), f.height());
  for (std::size_t i = 0; i < f.size(); ++i) b[i] = f[i] >= 0.5 ? 1 : 0;
  return b;
}

std::string put(const fs::path& dir, const std::string& stem, const ScalarField& values,
                FieldKind kind, const std::string& units) {
  const std::string file = stem + ".vff";
  write_field(dir / file, FieldFile{values, kind, units, stem});
  return file;
}

ScalarField get(const fs::path& dir, const json& name, FieldKind expected) {
  if (!name.is_string()) throw FormatError("manifest entry is not a path");
  FieldFile f = read_field(dir / name.get<std::string>());
  if (f.kind != expected) {
    throw FormatError("field " + name.get<std::string>() + " has kind " + to_string(f.kind) +
                      ", expected " + to_string(expected));
  }
  return std::move(f.values);
}

json parse_manifest(const fs::path& manifest) {
  json j;
  try {
    j = json::parse(read_file(manifest));
  } catch (const json::exception& e) {
    throw FormatError(manifest.string() + ": " + e.what());
  }
  const std::string version = j.value("format_version", "");
  if (version.substr(0, version.find('.')) != "1") {
    throw FormatError(manifest.string() + ": unsupported manifest version '" + version + "'");
  }
  return j;
}

}  // namespace

fs::path write_recon(const fs::path& dir, const ReconManifest& recon) {
  fs::create_directories(dir);
  const Reconstruction& r = recon.reconstruction;
  json j;
  j["format_version"] = kManifestVersion;
  j["method"] = recon.method;
  j["component"] = recon.component;
  json mags = json::array(), phases = json::array();
  for (std::size_t c = 0; c < 4; ++c) {
    const std::string idx = std::to_string(c + 1);
    mags.push_back(put(dir, "u" + idx, r.magnitudes[c], FieldKind::magnitude, "a.u."));
    phases.push_back(put(dir, "phi" + idx, r.phases[c], FieldKind::phase, "rad"));
  }
  j["magnitudes"] = mags;
  j["phases"] = phases;
  j["velocity"] = put(dir, "velocity", r.velocity, FieldKind::velocity, "velocity units");
  if (r.labels) {
    json labels = json::array();
    for (std::size_t c = 0; c < 4; ++c) {
      labels.push_back(put(dir, "labels" + std::to_string(c + 1), from_labels((*r.labels)[c]),
                           FieldKind::label, "1"));
    }
    j["labels"] = labels;
  }
  if (recon.iterations) j["iterations"] = *recon.iterations;
  if (recon.stopped_by_discrepancy) j["stopped_by_discrepancy"] = *recon.stopped_by_discrepancy;
  const fs::path manifest = dir / "recon.json";
  write_file(manifest, j.dump(2) + "\n");
  return manifest;
}

ReconManifest read_recon(const fs::path& manifest) {
  const json j = parse_manifest(manifest);
  const fs::path dir = manifest.parent_path();
  ReconManifest m;
  try {
    m.method = j.at("method").get<std::string>();
    m.component = j.at("component").get<std::string>();
    for (std::size_t c = 0; c < 4; ++c) {
      m.reconstruction.magnitudes[c] = get(dir, j.at("magnitudes").at(c), FieldKind::magnitude);
      m.reconstruction.phases[c] = get(dir, j.at("phases").at(c), FieldKind::phase);
    }
    m.reconstruction.velocity = get(dir, j.at("velocity"), FieldKind::velocity);
    if (j.contains("labels")) {
      std::array<BinaryField, 4> labels;
      for (std::size_t c = 0; c < 4; ++c) {
        labels[c] = to_labels(get(dir, j.at("labels").at(c), FieldKind::label));
      }
      m.reconstruction.labels = std::move(labels);
    }
    if (j.contains("iterations")) m.iterations = j.at("iterations").get<int>();
    if (j.contains("stopped_by_discrepancy")) {
      m.stopped_by_discrepancy = j.at("stopped_by_discrepancy").get<bool>();
    }
  } catch (const json::exception& e) {
    throw FormatError(manifest.string() + ": " + e.what());
  }
  return m;
}

fs::path write_truth(const fs::path& dir, const GroundTruth& truth) {
  fs::create_directories(dir);
  json j;
  j["format_version"] = kManifestVersion;
  j["magnitude"] = put(dir, "magnitude", truth.magnitude, FieldKind::magnitude, "a.u.");
  j["labels"] = put(dir, "labels", from_labels(truth.labels), FieldKind::label, "1");
  j["center"] = {truth.center_x, truth.center_z};
  const std::array<std::string, 2> names = {"x", "z"};
  const std::array<const ScalarField*, 2> velocity = {&truth.vx, &truth.vz};
  for (std::size_t c = 0; c < 2; ++c) {
    json comp;
    comp["velocity"] = put(dir, "v" + names[c], *velocity[c], FieldKind::velocity,
                           "velocity units");
    json phases = json::array();
    for (std::size_t l = 0; l < 4; ++l) {
      phases.push_back(put(dir, "phi_" + names[c] + std::to_string(l + 1), truth.phases[c][l],
                           FieldKind::phase, "rad"));
    }
    comp["phases"] = phases;
    j["components"][names[c]] = comp;
  }
  const fs::path manifest = dir / "truth.json";
  write_file(manifest, j.dump(2) + "\n");
  return manifest;
}

EvalTruth read_truth(const fs::path& manifest, const std::string& component) {
  const json j = parse_manifest(manifest);
  const fs::path dir = manifest.parent_path();
  EvalTruth t;
  try {
    t.magnitude = get(dir, j.at("magnitude"), FieldKind::magnitude);
    t.labels = to_labels(get(dir, j.at("labels"), FieldKind::label));
    const json& comps = j.at("components");
    if (!comps.contains(component)) {
      throw FormatError(manifest.string() + ": no ground truth for component '" + component + "'");
    }
    const json& comp = comps.at(component);
    t.velocity = get(dir, comp.at("velocity"), FieldKind::velocity);
    for (std::size_t l = 0; l < 4; ++l) {
      t.phases[l] = get(dir, comp.at("phases").at(l), FieldKind::phase);
    }
  } catch (const json::exception& e) {
    throw FormatError(manifest.string() + ": " + e.what());
  }
  return t;
}

}  // namespace vflow
