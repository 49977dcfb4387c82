// Copyright 2026 The Sharpmark Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "sharpmark/sharpmark.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitPartial = 2;  // some inputs unusable, the rest processed
constexpr int kExitInvalid = 3;  // malformed manifest/input, nothing produced

struct MetricFlags {
  std::string backend = "hpf";
  double alpha = 2.0;
  int block = 7;
  double epsilon = 1e-4;
  int border = -1;
  std::string gray_mode = "single";

  sharpmark::SharpnessConfig to_config() const {
    sharpmark::SharpnessConfig cfg;
    cfg.backend = backend == "uwt" ? sharpmark::Backend::Uwt : sharpmark::Backend::Hpf;
    cfg.alpha = alpha;
    cfg.block = block;
    cfg.epsilon = epsilon;
    cfg.border = border;
    cfg.gray_mode =
        gray_mode == "third" ? sharpmark::GrayMode::Third : sharpmark::GrayMode::Single;
    return cfg;
  }
};

void add_metric_flags(CLI::App* cmd, MetricFlags* flags, bool with_backend = true) {
  if (with_backend) {
    cmd->add_option("--backend", flags->backend, "Stimulus backend")
        ->check(CLI::IsMember({"hpf", "uwt"}))
        ->capture_default_str();
  }
  cmd->add_option("--alpha", flags->alpha, "Stimulus exponent")->capture_default_str();
  cmd->add_option("--block", flags->block, "Block/window side (odd, >= 3)")
      ->capture_default_str();
  cmd->add_option("--epsilon", flags->epsilon, "Numerical stabilizer")->capture_default_str();
  cmd->add_option("--border", flags->border, "Pixels cropped per side (negative = block)")
      ->capture_default_str();
  cmd->add_option("--gray-mode", flags->gray_mode, "Single-channel folding rule")
      ->check(CLI::IsMember({"single", "third"}))
      ->capture_default_str();
}

int cmd_score(const std::vector<std::string>& paths, const MetricFlags& flags) {
  const sharpmark::SharpnessConfig cfg = flags.to_config();
  cfg.validate();

  struct Slot {
    double score = 0.0;
    std::string error;
  };
  std::vector<Slot> slots(paths.size());
  sharpmark::parallel_for(paths.size(), [&](std::size_t i) {
    try {
      slots[i].score = sharpmark::score_and_maps(sharpmark::load_image(paths[i]), cfg).score;
    } catch (const std::exception& e) {
      slots[i].error = e.what();
    }
  });

  bool partial = false;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (slots[i].error.empty()) {
      std::cout << paths[i] << '\t' << sharpmark::format_sig6(slots[i].score) << '\t'
                << flags.backend << '\n';
    } else {
      std::cerr << "sharpmark: " << slots[i].error << '\n';
      partial = true;
    }
  }
  return partial ? kExitPartial : kExitOk;
}

int cmd_map(const std::string& path, const MetricFlags& flags, const fs::path& out_dir) {
  const sharpmark::SharpnessConfig cfg = flags.to_config();
  cfg.validate();
  const sharpmark::SharpnessResult result =
      sharpmark::score_and_maps(sharpmark::load_image(path), cfg);
  const std::string stem = fs::path(path).stem().string();
  sharpmark::write_pgm_normalized(result.bs_map, out_dir / (stem + ".smap.pgm"));
  sharpmark::write_pgm_normalized(result.lbs_map, out_dir / (stem + ".lbsmap.pgm"));
  return kExitOk;
}

int cmd_sweep(const std::string& path, const std::vector<double>& sigmas,
              const MetricFlags& flags) {
  for (double s : sigmas) {
    if (s < 0.0) {
      std::cerr << "sharpmark: negative sigma " << s << " rejected\n";
      return kExitInvalid;
    }
  }
  const sharpmark::InputImage pristine = sharpmark::load_image(path);
  sharpmark::SharpnessConfig hpf_cfg = flags.to_config();
  hpf_cfg.backend = sharpmark::Backend::Hpf;
  sharpmark::SharpnessConfig uwt_cfg = hpf_cfg;
  uwt_cfg.backend = sharpmark::Backend::Uwt;
  hpf_cfg.validate();

  struct Row {
    double hpf = 0.0, uwt = 0.0;
  };
  std::vector<Row> rows(sigmas.size());
  sharpmark::parallel_for(sigmas.size(), [&](std::size_t i) {
    sharpmark::InputImage blurred = pristine;
    for (sharpmark::ImagePlane& plane : blurred.planes) {
      plane = sharpmark::gaussian_blur(plane, sigmas[i]);
    }
    rows[i].hpf = sharpmark::score_and_maps(blurred, hpf_cfg).score;
    rows[i].uwt = sharpmark::score_and_maps(blurred, uwt_cfg).score;
  });

  std::cout << "sigma,qs_hpf,qs_uwt\n";
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    std::cout << sharpmark::format_sig6(sigmas[i]) << ','
              << sharpmark::format_sig6(rows[i].hpf) << ','
              << sharpmark::format_sig6(rows[i].uwt) << '\n';
  }
  return kExitOk;
}

int cmd_eval(const std::string& manifest, const MetricFlags& flags,
             const std::vector<double>& alphas, const fs::path& out_dir) {
  std::vector<double> alpha_list = alphas;
  if (alpha_list.empty()) alpha_list.push_back(flags.alpha);

  std::vector<sharpmark::CorrelationReport> reports;
  bool partial = false;
  for (std::size_t k = 0; k < alpha_list.size(); ++k) {
    MetricFlags run = flags;
    run.alpha = alpha_list[k];
    const sharpmark::ManifestEvaluation ev =
        sharpmark::evaluate_manifest(manifest, run.to_config());
    for (const std::string& s : ev.skipped) {
      std::cerr << "sharpmark: skipped " << s << '\n';
      partial = true;
    }
    if (!ev.fit_converged) {
      std::cerr << "sharpmark: warning: logistic fit hit the iteration budget "
                << "(alpha=" << sharpmark::format_sig6(alpha_list[k])
                << "); reporting best parameters found\n";
    }
    const std::string suffix =
        alpha_list.size() == 1 ? "" : "_" + std::to_string(k + 1);
    std::ofstream per_image(out_dir / ("per_image" + suffix + ".csv"));
    if (!per_image) throw std::runtime_error("cannot write per-image CSV in " + out_dir.string());
    sharpmark::write_per_image_csv(per_image, ev);
    reports.push_back(ev.report);
  }

  std::ofstream report_file(out_dir / "report.csv");
  if (!report_file) throw std::runtime_error("cannot write report.csv in " + out_dir.string());
  sharpmark::write_report_csv(report_file, reports);
  sharpmark::write_report_csv(std::cout, reports);
  return partial ? kExitPartial : kExitOk;
}

int cmd_aggregate(const std::vector<std::string>& report_paths,
                  const std::vector<double>& weights) {
  std::vector<std::pair<sharpmark::CorrelationReport, double>> entries;
  for (const std::string& rp : report_paths) {
    std::ifstream in(rp);
    if (!in) throw std::runtime_error(rp + ": cannot open report");
    for (const sharpmark::CorrelationReport& r : sharpmark::parse_report_csv(in, rp)) {
      entries.emplace_back(r, static_cast<double>(r.n));
    }
  }
  if (!weights.empty()) {
    if (weights.size() != entries.size()) {
      throw std::runtime_error("aggregate: got " + std::to_string(weights.size()) +
                               " weights for " + std::to_string(entries.size()) +
                               " report rows");
    }
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i].second = weights[i];
  }
  sharpmark::write_aggregate_csv(std::cout, sharpmark::aggregate_reports(entries));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"No-reference perceptual sharpness assessment"};
  app.require_subcommand(1);

  MetricFlags flags;
  std::vector<std::string> paths;
  std::string single_path;
  std::string manifest;
  std::vector<double> sigmas;
  std::vector<double> eval_alphas;
  std::vector<std::string> report_paths;
  std::vector<double> weights;
  std::string out_dir = ".";

  CLI::App* score = app.add_subcommand("score", "Score images (one line per image)");
  score->add_option("paths", paths, "Input images")->required();
  add_metric_flags(score, &flags);

  CLI::App* map = app.add_subcommand("map", "Write sharpness-map PGMs for one image");
  map->add_option("path", single_path, "Input image")->required();
  map->add_option("--out", out_dir, "Output directory")->capture_default_str();
  add_metric_flags(map, &flags);

  CLI::App* sweep = app.add_subcommand("sweep", "Score a blur ladder of one image (CSV to stdout)");
  sweep->add_option("path", single_path, "Pristine input image")->required();
  sweep->add_option("--sigmas", sigmas, "Gaussian blur sigmas")
      ->required()
      ->delimiter(',');
  add_metric_flags(sweep, &flags, /*with_backend=*/false);

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a manifest against subjective scores");
  eval->add_option("manifest", manifest, "CSV manifest (path,subjective,group)")->required();
  eval->add_option("--out", out_dir, "Output directory for report/per-image CSVs")
      ->capture_default_str();
  eval->add_option("--alphas", eval_alphas,
                   "Repeat the evaluation for each alpha (one report row per value)")
      ->delimiter(',');
  add_metric_flags(eval, &flags);

  CLI::App* aggregate = app.add_subcommand("aggregate", "Combine report CSVs (summary to stdout)");
  aggregate->add_option("reports", report_paths, "Report CSV files")->required();
  aggregate->add_option("--weights", weights,
                        "Per-row weights (default: each row's sample count)")
      ->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (score->parsed()) return cmd_score(paths, flags);
    if (map->parsed()) return cmd_map(single_path, flags, out_dir);
    if (sweep->parsed()) return cmd_sweep(single_path, sigmas, flags);
    if (eval->parsed()) return cmd_eval(manifest, flags, eval_alphas, out_dir);
    if (aggregate->parsed()) return cmd_aggregate(report_paths, weights);
  } catch (const std::exception& e) {
    std::cerr << "sharpmark: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}
