// radig: hierarchical image segmentation pipeline and evaluation harness.
//
// Subcommands: segment, ucm, eval, bench, convert-gt. Exit codes: 0 on
// success, 2 for I/O failures, 3 for validation failures.

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "radig/eval.hpp"
#include "radig/image_io.hpp"
#include "radig/pipeline.hpp"

namespace fs = std::filesystem;
using namespace radig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 2;
constexpr int kExitValidation = 3;

double elapsed_ms(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string format_threshold(double t) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.4f", t);
  return buf;
}

void apply_thread_env() {
  if (const char* env = std::getenv("RADIG_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

// --- configuration --------------------------------------------------------

struct RunConfig {
  std::vector<std::string> inputs;
  std::string out_dir = ".";
  std::vector<double> thresholds;
  std::vector<std::string> ablations;
  bool debug_dumps = false;
  bool ucm16 = false;
  int reps = 3;
  int threshold_count = 64;
  double gamma_object = 0.95;
  double gamma_part = 0.25;
  double fb_tol = 0.0075;
  double epsilon = 1e-12;
  std::string config_file;
  std::string csv_path;
  std::string pred_dir;
  std::string gt_dir;
};

DistanceConfig make_distance_config(const RunConfig& rc) {
  DistanceConfig cfg;
  cfg.epsilon = rc.epsilon;
  for (const std::string& name : rc.ablations) {
    if (name == "gm-boundary") {
      cfg.contrast_init = ContrastInit::kGradientMean;
    } else if (name == "l1-boundary") {
      cfg.length_norm = LengthNorm::kL1;
    } else if (name == "wo-wasserstein") {
      cfg.appearance = AppearanceMetric::kMeanSquaredEuclid;
    } else if (name == "drop-surface") {
      cfg.surface_term = false;
    } else if (name == "drop-boundary") {
      cfg.boundary_term = false;
    } else if (name == "drop-linkage") {
      cfg.linkage_term = false;
    } else {
      throw ValidationError("unknown ablation '" + name + "'");
    }
  }
  cfg.validate();
  return cfg;
}

std::vector<double> parse_threshold_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const double t = std::stod(item);
    if (t < 0.0 || t > 1.0) throw ValidationError("threshold out of [0,1]: " + item);
    out.push_back(t);
  }
  return out;
}

// key=value file; '#' starts a comment. Flags that were given explicitly win.
void apply_config_file(RunConfig& rc, const CLI::App& cmd) {
  if (rc.config_file.empty()) return;
  std::ifstream in(rc.config_file);
  if (!in) throw IoError("cannot open config file '" + rc.config_file + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  auto flag_given = [&cmd](const std::string& flag) {
    const CLI::Option* opt = cmd.get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  if (kv.count("thresholds") && !flag_given("--thresholds")) {
    rc.thresholds = parse_threshold_list(kv["thresholds"]);
  }
  if (kv.count("ablate") && !flag_given("--ablate")) {
    std::stringstream ss(kv["ablate"]);
    std::string item;
    rc.ablations.clear();
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) rc.ablations.push_back(item);
    }
  }
  if (kv.count("epsilon") && !flag_given("--epsilon")) rc.epsilon = std::stod(kv["epsilon"]);
  if (kv.count("gamma_object") && !flag_given("--gamma-object")) {
    rc.gamma_object = std::stod(kv["gamma_object"]);
  }
  if (kv.count("gamma_part") && !flag_given("--gamma-part")) rc.gamma_part = std::stod(kv["gamma_part"]);
  if (kv.count("fb_tol") && !flag_given("--fb-tol")) rc.fb_tol = std::stod(kv["fb_tol"]);
  if (kv.count("reps") && !flag_given("--reps")) rc.reps = std::stoi(kv["reps"]);
}

// --- segment / ucm ---------------------------------------------------------

void write_segment_outputs(const fs::path& out_dir, const std::string& stem,
                           const PipelineResult& result, const RunConfig& rc, bool ucm_only) {
  const CrackMap cm = ucm(result.hierarchy, result.levels);
  const PlaneF ucm_raster = render_ucm(cm);
  if (rc.ucm16) {
    write_gray_png16(out_dir / (stem + ".ucm.png"), ucm_raster);
  } else {
    write_gray_png8(out_dir / (stem + ".ucm.png"), ucm_raster);
  }
  if (ucm_only) return;

  std::ofstream json(out_dir / (stem + ".hier.json"), std::ios::binary);
  if (!json) throw IoError("cannot write hierarchy JSON for '" + stem + "'");
  json << serialize(result.hierarchy, result.levels);
  json.close();
  write_label_png(out_dir / (stem + ".atoms.png"), result.atoms);

  for (double t : rc.thresholds) {
    const LabelMap seg = cut(result.hierarchy, result.levels, t);
    write_label_png(out_dir / (stem + ".seg_" + format_threshold(t) + ".png"), seg);
  }
  if (rc.debug_dumps) {
    PlaneF grad = result.grad;
    const float peak = *std::max_element(grad.data.begin(), grad.data.end());
    if (peak > 0.0f) {
      for (float& v : grad.data) v /= peak;
    }
    write_gray_png16(out_dir / (stem + ".grad.png"), grad);
    write_label_png(out_dir / (stem + ".watershed.png"), result.atoms);
  }
}

int run_segment(const RunConfig& rc, bool ucm_only) {
  const DistanceConfig cfg = make_distance_config(rc);
  fs::create_directories(rc.out_dir);
  std::atomic<int> io_errors{0};
  std::atomic<int> validation_errors{0};

  const int n = static_cast<int>(rc.inputs.size());
#pragma omp parallel for schedule(dynamic) if (n > 1)
  for (int i = 0; i < n; ++i) {
    const fs::path input(rc.inputs[i]);
    try {
      const RgbImage img = read_rgb(input);
      const PipelineResult result = run_pipeline(img, cfg);
      write_segment_outputs(rc.out_dir, input.stem().string(), result, rc, ucm_only);
#pragma omp critical(radig_log)
      std::cout << input.string() << ": " << result.atoms.region_count << " atoms, "
                << result.hierarchy.events.size() << " merges\n";
    } catch (const IoError& e) {
      ++io_errors;
#pragma omp critical(radig_log)
      std::cerr << "error: " << e.what() << "\n";
    } catch (const ValidationError& e) {
      ++validation_errors;
#pragma omp critical(radig_log)
      std::cerr << "error: " << e.what() << "\n";
    }
  }
  if (io_errors > 0) return kExitIo;
  if (validation_errors > 0) return kExitValidation;
  return kExitOk;
}

// --- eval -------------------------------------------------------------------

GroundTruth load_ground_truth(const fs::path& gt_dir, const std::string& stem) {
  GroundTruth gt;
  const fs::path single = gt_dir / (stem + ".png");
  if (fs::exists(single)) gt.annotators.push_back(read_label_png(single));
  for (int k = 1;; ++k) {
    const fs::path multi = gt_dir / (stem + "." + std::to_string(k) + ".png");
    if (!fs::exists(multi)) break;
    gt.annotators.push_back(read_label_png(multi));
  }
  return gt;
}

void write_curves_csv(const fs::path& path, const std::vector<std::string>& stems,
                      const std::vector<std::vector<PRPoint>>& curves) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << "image,threshold,precision,recall,f\n";
  for (std::size_t i = 0; i < stems.size(); ++i) {
    for (const PRPoint& pt : curves[i]) {
      out << stems[i] << "," << pt.threshold << "," << pt.precision << "," << pt.recall << ","
          << pt.f << "\n";
    }
  }
}

int run_eval(const RunConfig& rc) {
  fs::create_directories(rc.out_dir);
  std::vector<std::string> stems;
  for (const auto& entry : fs::directory_iterator(rc.pred_dir)) {
    const std::string name = entry.path().filename().string();
    const std::string suffix = ".hier.json";
    if (name.size() > suffix.size() && name.ends_with(suffix)) {
      stems.push_back(name.substr(0, name.size() - suffix.size()));
    }
  }
  std::sort(stems.begin(), stems.end());
  if (stems.empty()) {
    std::cerr << "error: no *.hier.json predictions in '" << rc.pred_dir << "'\n";
    return kExitIo;
  }

  const std::vector<double> grid = uniform_thresholds(rc.threshold_count);
  FopParams fop_params;
  fop_params.gamma_object = rc.gamma_object;
  fop_params.gamma_part = rc.gamma_part;
  fop_params.thresholds = grid;

  std::vector<std::string> evaluated;
  std::vector<std::vector<PRPoint>> fop_curves;
  std::vector<std::vector<PRPoint>> fb_curves;
  for (const std::string& stem : stems) {
    const GroundTruth gt = load_ground_truth(rc.gt_dir, stem);
    if (gt.annotators.empty()) {
      std::cerr << "warning: no ground truth for '" << stem << "', skipped\n";
      continue;
    }
    std::ifstream json(fs::path(rc.pred_dir) / (stem + ".hier.json"), std::ios::binary);
    std::stringstream buffer;
    buffer << json.rdbuf();
    HierarchyDocument doc = parse_hierarchy(buffer.str());
    doc.hierarchy.atoms = read_label_png(fs::path(rc.pred_dir) / (stem + ".atoms.png"));
    if (doc.hierarchy.atoms.region_count != doc.hierarchy.graph.atom_count) {
      throw ValidationError("atoms PNG does not match hierarchy for '" + stem + "'");
    }
    fop_curves.push_back(fop_curve(doc.hierarchy, doc.levels, gt, fop_params));
    fb_curves.push_back(fb_curve(ucm(doc.hierarchy, doc.levels), gt, rc.fb_tol, grid));
    evaluated.push_back(stem);
  }
  if (evaluated.empty()) {
    std::cerr << "error: every prediction was skipped for missing ground truth\n";
    return kExitIo;
  }

  const OdsOis fop_summary = ods_ois(fop_curves);
  const OdsOis fb_summary = ods_ois(fb_curves);

  write_curves_csv(fs::path(rc.out_dir) / "fop_curves.csv", evaluated, fop_curves);
  write_curves_csv(fs::path(rc.out_dir) / "fb_curves.csv", evaluated, fb_curves);

  std::ofstream summary_csv(fs::path(rc.out_dir) / "summary.csv");
  summary_csv << "measure,ods_threshold,ods_precision,ods_recall,ods_f,ois\n";
  summary_csv << "fop," << fop_summary.ods.threshold << "," << fop_summary.ods.precision << ","
              << fop_summary.ods.recall << "," << fop_summary.ods.f << "," << fop_summary.ois
              << "\n";
  summary_csv << "fb," << fb_summary.ods.threshold << "," << fb_summary.ods.precision << ","
              << fb_summary.ods.recall << "," << fb_summary.ods.f << "," << fb_summary.ois << "\n";

  std::ostringstream text;
  text << "images evaluated: " << evaluated.size() << "\n"
       << "F_op  ODS F=" << fop_summary.ods.f << " (t=" << fop_summary.ods.threshold
       << ", P=" << fop_summary.ods.precision << ", R=" << fop_summary.ods.recall << ")"
       << "  OIS F=" << fop_summary.ois << "\n"
       << "F_b   ODS F=" << fb_summary.ods.f << " (t=" << fb_summary.ods.threshold
       << ", P=" << fb_summary.ods.precision << ", R=" << fb_summary.ods.recall << ")"
       << "  OIS F=" << fb_summary.ois << "\n";
  std::ofstream summary_txt(fs::path(rc.out_dir) / "summary.txt");
  summary_txt << text.str();
  std::cout << text.str();
  return kExitOk;
}

// --- bench ------------------------------------------------------------------

struct BenchRow {
  std::string input;
  int width = 0;
  int height = 0;
  double colorspace_ms = 0.0;
  double watershed_ms = 0.0;
  double founding_ms = 0.0;
  double clustering_ms = 0.0;

  double total() const { return colorspace_ms + watershed_ms + founding_ms + clustering_ms; }
  double pipeline_bound() const {
    return std::max({colorspace_ms, watershed_ms, founding_ms, clustering_ms});
  }
};

BenchRow bench_image(const std::string& name, const RgbImage& img, const DistanceConfig& cfg,
                     int reps) {
  std::vector<double> color_ms, shed_ms, found_ms, cluster_ms;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    const LabImage lab = srgb_to_lab(img);
    color_ms.push_back(elapsed_ms(t0));

    t0 = std::chrono::steady_clock::now();
    const PlaneF grad = gradient_magnitude(lab);
    const LabelMap atoms = watershed(grad);
    shed_ms.push_back(elapsed_ms(t0));

    t0 = std::chrono::steady_clock::now();
    RegionGraph graph = found_graph(atoms, lab, cfg, &grad);
    found_ms.push_back(elapsed_ms(t0));

    t0 = std::chrono::steady_clock::now();
    const Hierarchy h = agglomerate(std::move(graph), cfg);
    cluster_ms.push_back(elapsed_ms(t0));
    if (h.events.size() + 1 != static_cast<std::size_t>(atoms.region_count)) {
      throw ValidationError("bench: unexpected event count");
    }
  }
  BenchRow row;
  row.input = name;
  row.width = img.width;
  row.height = img.height;
  row.colorspace_ms = median(color_ms);
  row.watershed_ms = median(shed_ms);
  row.founding_ms = median(found_ms);
  row.clustering_ms = median(cluster_ms);
  return row;
}

int run_bench(const RunConfig& rc) {
  const DistanceConfig cfg = make_distance_config(rc);
  std::vector<BenchRow> rows;
  for (const std::string& input : rc.inputs) {
    rows.push_back(bench_image(input, read_rgb(input), cfg, rc.reps));
  }

  std::cout << "component timings (median of " << rc.reps << " reps, ms)\n";
  for (const BenchRow& row : rows) {
    std::cout << row.input << " (" << row.width << "x" << row.height << ", "
              << static_cast<std::int64_t>(row.width) * row.height << " px)\n"
              << "  colorspace      " << row.colorspace_ms << "\n"
              << "  watershed       " << row.watershed_ms << "\n"
              << "  founding tree   " << row.founding_ms << "\n"
              << "  agg. clustering " << row.clustering_ms << "\n"
              << "  serial total    " << row.total() << "\n"
              << "  pipeline bound  " << row.pipeline_bound() << "\n";
  }
  if (!rc.csv_path.empty()) {
    std::ofstream csv(rc.csv_path);
    if (!csv) throw IoError("cannot write '" + rc.csv_path + "'");
    csv << "input,width,height,pixels,colorspace_ms,watershed_ms,founding_ms,clustering_ms,"
           "total_ms,pipeline_bound_ms\n";
    for (const BenchRow& row : rows) {
      csv << row.input << "," << row.width << "," << row.height << ","
          << static_cast<std::int64_t>(row.width) * row.height << "," << row.colorspace_ms << ","
          << row.watershed_ms << "," << row.founding_ms << "," << row.clustering_ms << ","
          << row.total() << "," << row.pipeline_bound() << "\n";
    }
  }
  return kExitOk;
}

// --- convert-gt --------------------------------------------------------------

int run_convert_gt(const RunConfig& rc) {
  fs::create_directories(rc.out_dir);
  for (const std::string& input : rc.inputs) {
    const fs::path in_path(input);
    const LabelMap categories = read_label_png(in_path);
    const LabelMap instances = labels_to_instances(categories);
    write_label_png(fs::path(rc.out_dir) / in_path.filename(), instances);
    std::cout << input << ": " << categories.region_count << " categories -> "
              << instances.region_count << " instances\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_env();
  CLI::App app{"radig: realtime hierarchical image segmentation"};
  app.require_subcommand(1);
  RunConfig rc;

  std::string thresholds_text;
  CLI::App* segment = app.add_subcommand("segment", "segment images into hierarchies");
  segment->add_option("inputs", rc.inputs, "input images (PNG or PPM)")->required();
  segment->add_option("-o,--out", rc.out_dir, "output directory");
  segment->add_option("--thresholds", thresholds_text, "comma-separated cut thresholds in [0,1]");
  segment->add_option("--ablate", rc.ablations,
                      "gm-boundary|l1-boundary|wo-wasserstein|drop-surface|drop-boundary|drop-linkage");
  segment->add_flag("--debug-dumps", rc.debug_dumps, "also dump gradient and watershed");
  segment->add_flag("--ucm16", rc.ucm16, "write 16-bit contour maps");
  segment->add_option("--epsilon", rc.epsilon, "distance log floor");
  segment->add_option("--config", rc.config_file, "key=value config file (flags win)");

  CLI::App* ucm_cmd = app.add_subcommand("ucm", "write ultrametric contour maps only");
  ucm_cmd->add_option("inputs", rc.inputs, "input images (PNG or PPM)")->required();
  ucm_cmd->add_option("-o,--out", rc.out_dir, "output directory");
  ucm_cmd->add_flag("--ucm16", rc.ucm16, "write 16-bit contour maps");
  ucm_cmd->add_option("--config", rc.config_file, "key=value config file (flags win)");

  CLI::App* eval_cmd = app.add_subcommand("eval", "score predictions against ground truth");
  eval_cmd->add_option("--pred", rc.pred_dir, "directory with *.hier.json and *.atoms.png")
      ->required();
  eval_cmd->add_option("--gt", rc.gt_dir, "directory with instance label PNGs")->required();
  eval_cmd->add_option("-o,--out", rc.out_dir, "output directory");
  eval_cmd->add_option("--gamma-object", rc.gamma_object, "mutual overlap for object matches");
  eval_cmd->add_option("--gamma-part", rc.gamma_part, "overlap fraction for part matches");
  eval_cmd->add_option("--fb-tol", rc.fb_tol, "boundary match tolerance, fraction of diagonal");
  eval_cmd->add_option("--thresholds-count", rc.threshold_count, "points on the [0,1] grid");
  eval_cmd->add_option("--config", rc.config_file, "key=value config file (flags win)");

  CLI::App* bench = app.add_subcommand("bench", "component timing benchmark");
  bench->add_option("inputs", rc.inputs, "input images")->required();
  bench->add_option("--reps", rc.reps, "repetitions per image")->check(CLI::PositiveNumber);
  bench->add_option("--csv", rc.csv_path, "also write CSV");
  bench->add_option("--config", rc.config_file, "key=value config file (flags win)");

  CLI::App* convert = app.add_subcommand("convert-gt", "category label maps -> instance labels");
  convert->add_option("inputs", rc.inputs, "category label PNGs")->required();
  convert->add_option("-o,--out", rc.out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* active = app.get_subcommands().front();
    apply_config_file(rc, *active);
    if (!thresholds_text.empty()) rc.thresholds = parse_threshold_list(thresholds_text);

    if (active == segment) return run_segment(rc, false);
    if (active == ucm_cmd) return run_segment(rc, true);
    if (active == eval_cmd) return run_eval(rc);
    if (active == bench) return run_bench(rc);
    if (active == convert) return run_convert_gt(rc);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
