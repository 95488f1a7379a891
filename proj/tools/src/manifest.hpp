#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "vflow/metrics.hpp"
#include "vflow/phantom.hpp"
#include "vflow/sequential.hpp"

namespace vflow {

// JSON manifests that tie the field files of one reconstruction, or of one
// simulated frame's ground truth, together. Paths inside a manifest are
// relative to the manifest's directory.

struct ReconManifest {
  std::string method;
  std::string component;
  Reconstruction reconstruction;
  std::optional<int> iterations;
  std::optional<bool> stopped_by_discrepancy;
};

/// Writes u1..u4, phi1..phi4, velocity (and labels1..4 when present) into
/// `dir` plus `dir`/recon.json. Returns the manifest path.
std::filesystem::path write_recon(const std::filesystem::path& dir, const ReconManifest& recon);
ReconManifest read_recon(const std::filesystem::path& manifest);

/// Writes the magnitude, labels, both velocity components and both phase
/// quads into `dir` plus `dir`/truth.json.
std::filesystem::path write_truth(const std::filesystem::path& dir, const GroundTruth& truth);
/// Ground truth for one encoded component ("x" or "z").
EvalTruth read_truth(const std::filesystem::path& manifest, const std::string& component);

}  // namespace vflow
