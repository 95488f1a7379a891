#include "vflow/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "manifest.hpp"
#include "vflow/vflow.hpp"

namespace vflow {

namespace fs = std::filesystem;

namespace {

struct JointFlags {
  std::optional<double> alpha, beta, delta, eta, tau, c1, c2, nu, inner_tol, cg_tol;
  std::optional<int> outer_max, inner_iters, cg_iters;
  std::optional<std::string> stop_rule, phase_init;
  bool c_update = false;

  JointParams params() const {
    JointParams p;
    if (alpha) p.alpha = *alpha;
    if (beta) p.beta = *beta;
    if (delta) p.delta = *delta;
    if (eta) p.eta = *eta;
    if (tau) p.tau = *tau;
    if (c1) p.c1 = *c1;
    if (c2) p.c2 = *c2;
    if (nu) p.discrepancy_factor = *nu;
    if (outer_max) p.outer_max = *outer_max;
    if (inner_iters) p.inner.max_iters = *inner_iters;
    if (inner_tol) p.inner.rel_tol = *inner_tol;
    if (cg_tol) p.cg_tol = *cg_tol;
    if (cg_iters) p.cg_max_iters = *cg_iters;
    if (stop_rule) {
      if (*stop_rule == "fixed") p.stop_rule = StopRule::fixed_iters;
      else if (*stop_rule == "discrepancy") p.stop_rule = StopRule::discrepancy;
      else throw ConfigError("unknown stop rule '" + *stop_rule + "'");
    }
    if (phase_init) {
      if (*phase_init == "zero") p.phase_init = PhaseInit::zero;
      else if (*phase_init == "zero-fill") p.phase_init = PhaseInit::zero_fill;
      else throw ConfigError("unknown phase init '" + *phase_init + "'");
    }
    p.c_update = c_update;
    p.validate();
    return p;
  }
};

void add_joint_flags(CLI::App* app, JointFlags& f, const std::string& alpha_name) {
  app->add_option(alpha_name, f.alpha, "joint: TV weight on magnitudes (default 0.2)");
  app->add_option("--beta", f.beta, "joint: TV weight on labels (default 0.2)");
  app->add_option("--delta", f.delta, "joint: segmentation coupling weight (default 0.5)");
  app->add_option("--eta", f.eta, "joint: phase-difference smoothing weight (default 0.5)");
  app->add_option("--tau", f.tau, "joint: phase proximal scale (default 1)");
  app->add_option("--c1", f.c1, "joint: bubble region constant (default 0.25)");
  app->add_option("--c2", f.c2, "joint: fluid region constant (default 1)");
  app->add_flag("--c-update", f.c_update, "joint: re-estimate c1, c2 after every outer step");
  app->add_option("--outer-max", f.outer_max, "joint: outer iteration cap (default 50)");
  app->add_option("--stop-rule", f.stop_rule, "joint: fixed | discrepancy (default)")
      ->check(CLI::IsMember({"fixed", "discrepancy"}));
  app->add_option("--nu", f.nu, "joint: discrepancy factor (default 1)");
  app->add_option("--phase-init", f.phase_init, "joint: zero (default) | zero-fill")
      ->check(CLI::IsMember({"zero", "zero-fill"}));
  app->add_option("--inner-iters", f.inner_iters, "joint: PDHG iterations per subproblem");
  app->add_option("--inner-tol", f.inner_tol, "joint: PDHG relative tolerance");
  app->add_option("--cg-tol", f.cg_tol, "joint: CG tolerance of the phase step");
  app->add_option("--cg-iters", f.cg_iters, "joint: CG iteration cap");
}

// Per-subcommand `--config FILE`: `key = value` lines named after the long
// flags, '#' comments. Applied after parsing to the options the command line
// left unset, so flags win.
struct Subcommand {
  CLI::App* app = nullptr;
  std::optional<std::string> config;
  std::vector<std::string> required;
};

void add_config(Subcommand& sub) {
  sub.app->add_option("--config", sub.config,
                      "key = value file; command-line flags take precedence");
}

CLI::Option* require(Subcommand& sub, CLI::Option* opt) {
  sub.required.push_back(opt->get_name());
  return opt;
}

void merge_config(Subcommand& sub) {
  if (sub.config) {
    std::ifstream in(*sub.config);
    if (!in) throw IoError("cannot open config file " + *sub.config);
    for (const CLI::ConfigItem& item : CLI::ConfigINI().from_config(in)) {
      if (item.name == "++" || item.name == "--") continue;
      if (!item.parents.empty() && item.parents != std::vector<std::string>{sub.app->get_name()}) {
        throw ConfigError("config section '" + item.parents.front() + "' does not belong to " +
                          sub.app->get_name());
      }
      CLI::Option* opt = sub.app->get_option_no_throw("--" + item.name);
      if (opt == nullptr || item.name == "config") {
        throw CLI::ExtrasError("config key '" + item.name + "'", CLI::ExitCodes::ExtrasError);
      }
      if (opt->count() > 0) continue;
      opt->add_result(item.inputs);
      opt->run_callback();
    }
  }
  for (const std::string& name : sub.required) {
    if (sub.app->get_option(name)->count() == 0) throw CLI::RequiredError(name);
  }
}

constexpr double kSequentialAlpha = 0.02;
constexpr int kSequentialIters = 500;

struct Solved {
  ReconManifest manifest;
  std::vector<JointIterate> history;
};

Solved solve(const MeasurementSet& data, const std::string& method, double seq_alpha,
             const PdhgConfig& seq_cfg, const JointParams& jp) {
  Solved s;
  s.manifest.method = method;
  s.manifest.component = data.component;
  if (method == "zerofill") {
    s.manifest.reconstruction = run_zero_fill(data);
  } else if (method == "sequential") {
    s.manifest.reconstruction = run_sequential(data, seq_alpha, seq_cfg);
  } else if (method == "joint") {
    JointResult r = run_joint(data, jp);
    s.manifest.reconstruction = std::move(r.reconstruction);
    s.manifest.iterations = static_cast<int>(r.history.size());
    s.manifest.stopped_by_discrepancy = r.stopped_by_discrepancy;
    s.history = std::move(r.history);
  } else {
    throw ConfigError("unknown method '" + method + "'");
  }
  return s;
}

void write_history(const fs::path& path, const std::vector<JointIterate>& history) {
  if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  write_history_csv(f, history);
  if (!f) throw IoError("failed writing " + path.string());
}

std::string frame_dir(int frame) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "frame_%03d", frame);
  return buf;
}

double resolve_sigma(const std::optional<double>& sigma, const std::optional<double>& snr,
                     const PhantomSpec& spec, const SamplingMask& mask, std::uint64_t seed) {
  if (sigma) {
    if (*sigma < 0.0) throw ConfigError("sigma must be nonnegative");
    return *sigma;
  }
  if (snr) return sigma_for_snr(spec, mask, *snr, seed);
  return 0.0;
}

struct MaskFlags {
  std::string kind = "center-weighted";
  double fraction = 1.0;
  int center_radius = 4;
  double density_power = 2.0;

  SamplingMask make(std::uint64_t seed, std::size_t w, std::size_t h) const {
    return make_mask(parse_mask_kind(kind), fraction, seed, w, h,
                     MaskOptions{center_radius, density_power});
  }
};

void add_mask_flags(CLI::App* app, MaskFlags& m, const std::string& fraction_help) {
  app->add_option("--mask-kind", m.kind,
                  "uniform-random | variable-density | radial-lines | center-weighted")
      ->capture_default_str();
  app->add_option("--fraction", m.fraction, fraction_help)->capture_default_str();
  app->add_option("--center-radius", m.center_radius, "half-width of the fully sampled center")
      ->capture_default_str();
  app->add_option("--density-power", m.density_power, "variable-density decay exponent")
      ->capture_default_str();
}

void add_phantom_flags(CLI::App* app, PhantomSpec& spec) {
  app->add_option("--width", spec.width, "grid width")->capture_default_str();
  app->add_option("--height", spec.height, "grid height")->capture_default_str();
  app->add_option("--center-x", spec.center_x, "sphere center column")->capture_default_str();
  app->add_option("--center-z", spec.center_z, "sphere center row")->capture_default_str();
  app->add_option("--radius", spec.radius, "sphere radius, pixels")->capture_default_str();
  app->add_option("--rise-speed", spec.rise_speed, "rise speed U")->capture_default_str();
  app->add_option("--fluid-level", spec.fluid_level, "fluid magnitude")->capture_default_str();
  app->add_option("--bubble-level", spec.bubble_level, "bubble magnitude")->capture_default_str();
  app->add_option("--background-amplitude", spec.background_amplitude,
                  "peak background phase, rad")
      ->capture_default_str();
  app->add_option("--zeta", spec.zeta, "encoding sensitivity, rad per velocity unit")
      ->capture_default_str();
}

void check_fraction(const SamplingMask& mask, double fraction) {
  const double n = static_cast<double>(mask.width() * mask.height());
  const double expected = std::clamp(std::round(fraction * n), 1.0, n);
  if (static_cast<double>(mask.count()) != expected) {
    throw ConfigError("dataset samples " + std::to_string(mask.count()) +
                      " coefficients, --fraction " + std::to_string(fraction) + " implies " +
                      std::to_string(static_cast<long>(expected)));
  }
}

EvalReport evaluate_manifest(const ReconManifest& m, const EvalTruth& truth) {
  return evaluate(m.reconstruction, truth, m.method, m.component);
}

void emit_table(const ComparisonTable& table, const std::optional<fs::path>& csv,
                const std::optional<fs::path>& text, std::ostream& out) {
  const std::string rendered = table.render_text();
  out << rendered;
  if (csv) write_file(*csv, table.render_csv());
  if (text) write_file(*text, rendered);
}

template <typename T>
bool is_a(const std::exception& e) {
  return dynamic_cast<const T*>(&e) != nullptr;
}

int report_failure(const std::exception& e, std::ostream& err) {
  if (is_a<IoError>(e) || is_a<fs::filesystem_error>(e)) {
    err << "vflow: io error: " << e.what() << "\n";
    return kExitIo;
  }
  if (is_a<FormatError>(e)) {
    err << "vflow: format error: " << e.what() << "\n";
    return kExitFormat;
  }
  if (is_a<DivergenceError>(e)) {
    err << "vflow: solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  if (is_a<ConfigError>(e) || is_a<DimensionError>(e)) {
    err << "vflow: invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  }
  err << "vflow: " << e.what() << "\n";
  return kExitError;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Velocity-encoded MRI reconstruction: phantom simulation, sequential TV and "
               "joint Bregman reconstruction, evaluation and rendering.",
               "vflow"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "vflow 1.0.0");

  // simulate
  PhantomSpec sim_spec;
  MaskFlags sim_mask;
  std::string sim_out;
  std::optional<std::string> sim_mask_file;
  std::optional<double> sim_sigma, sim_snr;
  std::uint64_t sim_seed = 7;
  auto* simulate = app.add_subcommand("simulate", "rising-sphere phantom to dataset files");
  Subcommand simulate_sub{simulate, {}, {}};
  add_config(simulate_sub);
  add_phantom_flags(simulate, sim_spec);
  add_mask_flags(simulate, sim_mask, "sampled fraction of k-space");
  simulate->add_option("--frames", sim_spec.frames, "number of frames")->capture_default_str();
  simulate->add_option("--displacement-x", sim_spec.displacement_x, "per-frame shift, columns")
      ->capture_default_str();
  simulate->add_option("--displacement-z", sim_spec.displacement_z, "per-frame shift, rows")
      ->capture_default_str();
  simulate->add_option("--seed", sim_seed, "master seed for mask, background and noise")
      ->capture_default_str();
  auto* sim_sigma_opt =
      simulate->add_option("--sigma", sim_sigma, "noise std per real component (default 0)");
  simulate->add_option("--snr", sim_snr, "data SNR in dB; sets sigma")->excludes(sim_sigma_opt);
  simulate->add_option("--mask", sim_mask_file, "use an existing mask file")
      ->check(CLI::ExistingFile);
  require(simulate_sub, simulate->add_option("--out", sim_out, "output directory"));

  // mask
  MaskFlags mk;
  std::size_t mk_width = 64, mk_height = 64;
  std::uint64_t mk_seed = 7;
  std::string mk_out;
  auto* mask_cmd = app.add_subcommand("mask", "write a sampling mask file");
  Subcommand mask_cmd_sub{mask_cmd, {}, {}};
  add_config(mask_cmd_sub);
  add_mask_flags(mask_cmd, mk, "sampled fraction of k-space");
  mask_cmd->add_option("--width", mk_width, "grid width")->capture_default_str();
  mask_cmd->add_option("--height", mk_height, "grid height")->capture_default_str();
  mask_cmd->add_option("--seed", mk_seed, "mask seed")->capture_default_str();
  require(mask_cmd_sub, mask_cmd->add_option("--out", mk_out, "output mask file"));

  // reconstruct
  std::string rc_data, rc_out, rc_method = "sequential";
  std::optional<double> rc_fraction;
  std::optional<std::string> rc_history;
  JointFlags rc_joint;
  int rc_iters = kSequentialIters;
  double rc_tol = 1e-6;
  auto* reconstruct = app.add_subcommand("reconstruct", "reconstruct one dataset file");
  Subcommand reconstruct_sub{reconstruct, {}, {}};
  add_config(reconstruct_sub);
  require(reconstruct_sub, reconstruct->add_option("--data", rc_data, "dataset file"));
  reconstruct->add_option("--method", rc_method, "zerofill | sequential | joint")
      ->check(CLI::IsMember({"zerofill", "sequential", "joint"}))
      ->capture_default_str();
  require(reconstruct_sub, reconstruct->add_option("--out", rc_out, "output directory"));
  reconstruct->add_option("--fraction", rc_fraction,
                          "expected sampled fraction; fails when the dataset's mask differs");
  reconstruct->add_option("--iters", rc_iters, "sequential: PDHG iteration cap")
      ->capture_default_str();
  reconstruct->add_option("--tol", rc_tol, "sequential: PDHG relative tolerance")
      ->capture_default_str();
  reconstruct->add_option("--history", rc_history, "joint: per-iteration CSV diagnostics");
  add_joint_flags(reconstruct, rc_joint, "--alpha");
  reconstruct->get_option("--alpha")->description(
      "TV weight (sequential default 0.02, joint default 0.2)");

  // eval
  std::vector<std::string> ev_recons;
  std::string ev_truth;
  std::optional<std::string> ev_csv, ev_table;
  auto* eval = app.add_subcommand("eval", "compare reconstructions against ground truth");
  Subcommand eval_sub{eval, {}, {}};
  add_config(eval_sub);
  require(eval_sub, eval->add_option("--recon", ev_recons,
                                     "reconstruction manifest (recon.json), repeatable"));
  require(eval_sub, eval->add_option("--truth", ev_truth, "ground-truth manifest (truth.json)"));
  eval->add_option("--csv", ev_csv, "write the table as CSV");
  eval->add_option("--table", ev_table, "write the aligned text table");

  // render
  std::string rd_field, rd_out, rd_style;
  std::optional<std::string> rd_second;
  int rd_stride = 4;
  auto* render_cmd = app.add_subcommand("render", "render a field file to PNG or SVG");
  Subcommand render_cmd_sub{render_cmd, {}, {}};
  add_config(render_cmd_sub);
  require(render_cmd_sub, render_cmd->add_option("--field", rd_field, "field file"));
  require(render_cmd_sub,
          render_cmd->add_option("--style", rd_style, "gray | signed-colormap | quiver")
              ->check(CLI::IsMember({"gray", "signed-colormap", "quiver"})));
  render_cmd->add_option("--second", rd_second, "quiver: second velocity component field");
  render_cmd->add_option("--stride", rd_stride, "quiver: arrow spacing in pixels")
      ->capture_default_str();
  require(render_cmd_sub, render_cmd->add_option("--out", rd_out, "output image"));

  // pipeline
  PhantomSpec pl_spec;
  MaskFlags pl_mask;
  pl_mask.fraction = 0.11;
  std::uint64_t pl_seed = 7;
  std::optional<double> pl_sigma;
  double pl_snr = 30.0;
  double pl_seq_alpha = kSequentialAlpha;
  int pl_seq_iters = kSequentialIters;
  std::string pl_out = "vflow-pipeline";
  std::vector<std::string> pl_components = {"x", "z"};
  JointFlags pl_joint;
  auto* pipeline = app.add_subcommand(
      "pipeline", "simulate one frame, reconstruct it with every method, evaluate");
  Subcommand pipeline_sub{pipeline, {}, {}};
  add_config(pipeline_sub);
  add_phantom_flags(pipeline, pl_spec);
  add_mask_flags(pipeline, pl_mask, "sampled fraction of k-space");
  pipeline->add_option("--seed", pl_seed, "master seed")->capture_default_str();
  auto* pl_sigma_opt = pipeline->add_option("--sigma", pl_sigma, "noise std per real component");
  pipeline->add_option("--snr", pl_snr, "data SNR in dB")
      ->capture_default_str()
      ->excludes(pl_sigma_opt);
  pipeline->add_option("--seq-alpha", pl_seq_alpha, "sequential TV weight")
      ->capture_default_str();
  pipeline->add_option("--seq-iters", pl_seq_iters, "sequential PDHG iteration cap")
      ->capture_default_str();
  pipeline->add_option("--components", pl_components, "encoded components to run (x, z)")
      ->delimiter(',')
      ->check(CLI::IsMember({"x", "z"}))
      ->capture_default_str();
  pipeline->add_option("--out", pl_out, "output directory")->capture_default_str();
  add_joint_flags(pipeline, pl_joint, "--alpha");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    for (Subcommand* sub : {&simulate_sub, &mask_cmd_sub, &reconstruct_sub, &eval_sub,
                            &render_cmd_sub, &pipeline_sub}) {
      if (*sub->app) merge_config(*sub);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    return report_failure(e, err);
  }

  try {
    if (*simulate) {
      sim_spec.validate();
      const fs::path root(sim_out);
      fs::create_directories(root);
      SamplingMask mask = sim_mask_file
                              ? read_mask(*sim_mask_file)
                              : sim_mask.make(sim_seed, sim_spec.width, sim_spec.height);
      if (mask.width() != sim_spec.width || mask.height() != sim_spec.height) {
        throw DimensionError("mask grid does not match the phantom grid");
      }
      write_mask(root / "mask.vfm", mask);
      auto shared = std::make_shared<const SamplingMask>(std::move(mask));
      const double sigma = resolve_sigma(sim_sigma, sim_snr, sim_spec, *shared, sim_seed);
      const auto frames = generate_sequence(sim_spec, shared, sigma, sim_seed);
      for (std::size_t k = 0; k < frames.size(); ++k) {
        const fs::path dir = root / frame_dir(static_cast<int>(k));
        for (const MeasurementSet& data : frames[k].datasets) {
          write_dataset(dir / (data.component + ".vfd"), data,
                        DatasetInfo{"../mask.vfm", sim_seed, static_cast<int>(k)});
        }
        write_truth(dir / "truth", frames[k].truth);
      }
      out << "wrote " << frames.size() << " frame(s) to " << root.string() << " (m = "
          << shared->count() << ", sigma = " << sigma << ")\n";
    } else if (*mask_cmd) {
      const SamplingMask mask = mk.make(mk_seed, mk_width, mk_height);
      write_mask(mk_out, mask);
      out << "wrote " << mk_out << ": " << to_string(mask.kind()) << ", " << mask.count()
          << " of " << mk_width * mk_height << " coefficients\n";
    } else if (*reconstruct) {
      const LoadedDataset loaded = read_dataset(rc_data);
      if (rc_fraction) check_fraction(*loaded.data.channels.at(0).mask, *rc_fraction);
      JointFlags jf = rc_joint;
      double seq_alpha = kSequentialAlpha;
      if (rc_method == "sequential" && jf.alpha) {
        seq_alpha = *jf.alpha;
        jf.alpha.reset();
      }
      if (!(seq_alpha > 0.0)) throw ConfigError("alpha must be positive");
      const JointParams jp = jf.params();
      const Solved s =
          solve(loaded.data, rc_method, seq_alpha, PdhgConfig{.max_iters = rc_iters, .rel_tol = rc_tol},
                jp);
      const fs::path manifest = write_recon(rc_out, s.manifest);
      if (rc_history) {
        if (rc_method != "joint") throw ConfigError("--history applies to the joint method");
        write_history(*rc_history, s.history);
      }
      out << "wrote " << manifest.string();
      if (s.manifest.iterations) {
        out << " (" << *s.manifest.iterations << " outer iterations"
            << (*s.manifest.stopped_by_discrepancy ? ", stopped by discrepancy" : "") << ")";
      }
      out << "\n";
    } else if (*eval) {
      std::vector<EvalReport> reports;
      std::string component;
      std::optional<EvalTruth> truth;
      for (const std::string& r : ev_recons) {
        const ReconManifest m = read_recon(r);
        if (!truth) {
          component = m.component;
          truth = read_truth(ev_truth, component);
        } else if (m.component != component) {
          throw ConfigError("reconstructions encode different components (" + component +
                            ", " + m.component + ")");
        }
        reports.push_back(evaluate_manifest(m, *truth));
      }
      const auto opt_path = [](const std::optional<std::string>& s) -> std::optional<fs::path> {
        return s ? std::optional<fs::path>(*s) : std::nullopt;
      };
      emit_table(compare_methods(std::move(reports)), opt_path(ev_csv), opt_path(ev_table), out);
    } else if (*render_cmd) {
      RenderOptions options;
      options.stride = rd_stride;
      if (rd_second) options.second = read_field(*rd_second);
      render(read_field(rd_field), parse_render_style(rd_style), rd_out, options);
      out << "wrote " << rd_out << "\n";
    } else if (*pipeline) {
      pl_spec.validate();
      if (!(pl_seq_alpha > 0.0)) throw ConfigError("seq-alpha must be positive");
      const JointParams jp = pl_joint.params();
      const fs::path root(pl_out);
      fs::create_directories(root);
      auto mask = std::make_shared<const SamplingMask>(
          pl_mask.make(pl_seed, pl_spec.width, pl_spec.height));
      write_mask(root / "mask.vfm", *mask);
      const double sigma =
          pl_sigma ? resolve_sigma(pl_sigma, std::nullopt, pl_spec, *mask, pl_seed)
                   : sigma_for_snr(pl_spec, *mask, pl_snr, pl_seed);
      const SimulatedFrame frame = synthesize_channels(pl_spec, mask, sigma, pl_seed);
      const fs::path truth_manifest = write_truth(root / "truth", frame.truth);
      out << "m = " << mask->count() << ", sigma = " << sigma << "\n";
      for (const MeasurementSet& data : frame.datasets) {
        if (std::find(pl_components.begin(), pl_components.end(), data.component) ==
            pl_components.end()) {
          continue;
        }
        write_dataset(root / (data.component + ".vfd"), data,
                      DatasetInfo{"mask.vfm", pl_seed, 0});
        const EvalTruth truth = read_truth(truth_manifest, data.component);
        std::vector<EvalReport> reports;
        for (const std::string method : {"zerofill", "sequential", "joint"}) {
          const Solved s = solve(data, method, pl_seq_alpha,
                                 PdhgConfig{.max_iters = pl_seq_iters}, jp);
          write_recon(root / (method + "_" + data.component), s.manifest);
          if (method == "joint") {
            write_history(root / ("history_" + data.component + ".csv"), s.history);
          }
          reports.push_back(evaluate_manifest(s.manifest, truth));
        }
        out << "component " << data.component << "\n";
        emit_table(compare_methods(std::move(reports)),
                   root / ("report_" + data.component + ".csv"),
                   root / ("report_" + data.component + ".txt"), out);
      }
    }
  } catch (const std::exception& e) {
    return report_failure(e, err);
  }
  return kExitOk;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace vflow
