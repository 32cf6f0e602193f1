#include "qportrait_cli/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "qportrait/composite.hpp"
#include "qportrait/errors.hpp"
#include "qportrait/measurement.hpp"
#include "qportrait/multiqubit.hpp"
#include "qportrait/text_format.hpp"
#include "qportrait_cli/state_file.hpp"

namespace qp::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string state;
  std::string out;
  std::string layout;
  std::string axes;
  std::string roi;
  std::string roi_a;
  std::string roi_b;
  std::string records;
  std::string write_records;
  std::string unitary;
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  unsigned workers = 1;
  int sweep = 0;
  bool psd_repair = false;
  bool exact = false;
};

std::string bits_label(std::uint64_t k, int p) {
  std::string s(static_cast<std::size_t>(p), '0');
  for (int q = 0; q < p; ++q)
    if ((k >> q) & 1u) s[static_cast<std::size_t>(q)] = '1';
  return s;
}

struct Resolved {
  ResolutionOfIdentity roi;
  std::string id;
  int qubits = 0;  // > 0 when outcomes carry bit labels
};

Resolved resolve_roi(const std::string& spec, const DensityMatrix& rho) {
  if (spec.empty() || spec == "computational") {
    return {ResolutionOfIdentity::computational(rho.dim()), "computational", 0};
  }
  if (spec == "state") return {resolution_of_identity(rho), "state", 0};
  const std::string axes = spec.rfind("axes:", 0) == 0 ? spec.substr(5) : spec;
  if (axes.empty() || axes.find_first_not_of("xyz") != std::string::npos) {
    raise(Errc::ParseError, "resolution '" + spec + "' is not computational, state or axes:<xyz>");
  }
  const auto counters = CounterConfiguration::from_axes(axes);
  if ((1 << counters.qubits()) != rho.dim()) {
    raise(Errc::DimensionMismatch, "axes '" + axes + "' need dimension " +
                                       std::to_string(1 << counters.qubits()) + ", state has " +
                                       std::to_string(rho.dim()));
  }
  return {counter_roi(counters), axes, counters.qubits()};
}

std::string outcome_prefix(const Resolved& r, std::size_t k) {
  std::string s = "k=" + std::to_string(k);
  if (r.qubits > 0) s += " bits=" + bits_label(k, r.qubits);
  return s;
}

void emit(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) raise(Errc::ParseError, opt.out + ": cannot open for writing");
  file << text;
}

std::string vec3_text(const Vec3& v) {
  return format_real(v(0)) + " " + format_real(v(1)) + " " + format_real(v(2));
}

DensityMatrix require_state(const Options& opt, std::optional<LayoutSpec>* layout = nullptr) {
  if (opt.state.empty()) raise(Errc::InvalidArgument, "--state is required");
  const StateFile file = read_state_file(opt.state);
  if (layout) *layout = file.layout;
  return load_density(file);
}

// ---------------------------------------------------------------------------

int cmd_portrait(const Options& opt, std::ostream& out) {
  const DensityMatrix rho = require_state(opt);
  std::ostringstream text;
  if (opt.sweep > 0) {
    if (rho.dim() != 2) raise(Errc::DimensionMismatch, "--sweep needs a qubit state");
    const Vec3 d = qubit_director(rho.matrix());
    // Sweep in a plane containing the state director.
    const Vec3 axis = d.norm() > 0.0 ? Vec3(d.normalized()) : Vec3::UnitZ();
    Vec3 normal = axis.cross(Vec3::UnitX());
    if (normal.norm() < 0.5) normal = axis.cross(Vec3::UnitY());
    const Vec3 perp = normal.cross(axis).normalized();
    text << "# sweep theta p\n";
    for (int i = 0; i <= opt.sweep; ++i) {
      const double theta = std::numbers::pi * i / opt.sweep;
      const Vec3 m = std::cos(theta) * axis + std::sin(theta) * perp;
      text << format_real(theta) << ' ' << format_real(qubit_portrait(rho, m.normalized())) << '\n';
    }
    emit(opt, out, text.str());
    return kExitOk;
  }
  const Resolved r = resolve_roi(opt.axes.empty() ? opt.roi : opt.axes, rho);
  const std::vector<double> probs = portrait_distribution(rho, r.roi);
  text << "# portrait roi=" << r.id << '\n';
  for (std::size_t k = 0; k < probs.size(); ++k)
    text << outcome_prefix(r, k) << " p=" << format_real(probs[k]) << '\n';
  emit(opt, out, text.str());
  return kExitOk;
}

int cmd_measure(const Options& opt, std::ostream& out) {
  const DensityMatrix rho = require_state(opt);
  const Resolved r = resolve_roi(opt.axes.empty() ? opt.roi : opt.axes, rho);
  SeriesResult series = [&] {
    if (opt.workers > 1) return measure_series_parallel(rho, r.roi, opt.shots, opt.seed, opt.workers, r.id);
    RandomStream rng(opt.seed);
    return measure_series(rho, r.roi, opt.shots, rng, r.id);
  }();
  if (!opt.out.empty()) {
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) raise(Errc::ParseError, opt.out + ": cannot open for writing");
    write_record(file, series.record);
  }
  out << "# measure roi=" << r.id << " shots=" << opt.shots << " seed=" << opt.seed << '\n';
  for (std::size_t k = 0; k < series.table.size(); ++k) {
    out << outcome_prefix(r, k) << " count=" << series.table.count(k)
        << " nu=" << format_real(series.table.frequency(k)) << '\n';
  }
  return kExitOk;
}

std::map<std::string, FrequencyTable> load_record_dir(const std::string& dir, int p) {
  std::map<std::string, FrequencyTable> tables;
  for (const auto& axes : axis_settings(p)) {
    const fs::path path = fs::path(dir) / (axes + ".rec");
    std::ifstream in(path);
    if (!in) raise(Errc::MissingSetting, "no record file " + path.string());
    const MeasurementRecord record = read_record(in, path.string());
    try {
      tables.emplace(axes, FrequencyTable::from_record(record, std::size_t{1} << p));
    } catch (const Error& e) {
      raise(Errc::ParseError, path.string() + ": " + e.what());
    }
  }
  return tables;
}

int infer_record_qubits(const std::string& dir) {
  if (!fs::is_directory(dir)) raise(Errc::ParseError, dir + ": not a directory");
  int p = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".rec") continue;
    const int len = static_cast<int>(entry.path().stem().string().size());
    if (p != 0 && len != p) raise(Errc::ParseError, dir + ": record files disagree on qubit count");
    p = len;
  }
  if (p == 0) raise(Errc::MissingSetting, dir + ": no record files");
  return p;
}

void save_records(const std::string& dir, const std::vector<SettingLine>& settings,
                  const std::map<std::string, SeriesResult>& series) {
  fs::create_directories(dir);
  std::ofstream list(fs::path(dir) / "settings.txt", std::ios::binary);
  write_settings(list, settings);
  for (const auto& [axes, s] : series) {
    std::ofstream file(fs::path(dir) / (axes + ".rec"), std::ios::binary);
    if (!file) raise(Errc::ParseError, dir + ": cannot write record files");
    write_record(file, s.record);
  }
}

int cmd_reconstruct(const Options& opt, std::ostream& out) {
  std::optional<DensityMatrix> truth;
  if (!opt.state.empty()) truth = require_state(opt);

  int p = 0;
  if (!opt.layout.empty()) {
    const LayoutSpec spec = parse_layout(opt.layout);
    if (!spec.qubits) raise(Errc::InvalidArgument, "reconstruct needs a qubit layout p=K");
    p = spec.p;
  } else if (truth) {
    p = qubit_count(truth->dim());
  } else if (!opt.records.empty()) {
    p = infer_record_qubits(opt.records);
  } else {
    raise(Errc::InvalidArgument, "reconstruct needs --state or --records");
  }
  if (truth && truth->dim() != (1 << p)) raise(Errc::DimensionMismatch, "state does not have 2^p rows");

  ReconstructionOptions ro;
  ro.psd_repair = opt.psd_repair;
  ReconstructionResult result;
  std::ostringstream report;
  report << "# reconstruct p=" << p;
  if (!opt.records.empty()) {
    report << " source=records\n";
    result = reconstruct_state(p, load_record_dir(opt.records, p), ro);
  } else if (opt.exact) {
    report << " source=exact\n";
    std::map<std::string, std::vector<double>> dists;
    for (const auto& axes : axis_settings(p))
      dists.emplace(axes, counter_distribution(*truth, CounterConfiguration::from_axes(axes)));
    result = reconstruct_state_exact(p, dists, ro);
  } else {
    if (opt.shots == 0) raise(Errc::ShotCountZero, "--shots is required for a simulated campaign");
    report << " source=simulated shots=" << opt.shots << " seed=" << opt.seed << '\n';
    const auto settings = campaign_settings(p, opt.shots, opt.seed);
    const auto series = run_campaign(*truth, settings);
    if (!opt.write_records.empty()) save_records(opt.write_records, settings, series);
    std::map<std::string, FrequencyTable> tables;
    for (const auto& [axes, s] : series) tables.emplace(axes, s.table);
    result = reconstruct_state(p, tables, ro);
  }

  std::ostringstream coeffs;
  write_coefficient_report(coeffs, result.coefficients);
  report << coeffs.str();
  report << "min_eigenvalue=" << format_real(result.min_eigenvalue) << '\n';
  report << "psd_repaired=" << (result.psd_repaired ? "yes" : "no") << '\n';
  if (truth) {
    const PauliCoefficients exact = pauli_coefficients(*truth);
    double worst = 0.0;
    for (PauliCode code = 1; code < exact.size(); ++code)
      worst = std::max(worst, std::abs(exact[code] - result.coefficients[code]));
    report << "max_coefficient_error=" << format_real(worst) << '\n';
    report << "max_entry_deviation=" << format_real(max_abs(result.estimate - truth->matrix())) << '\n';
  }
  out << report.str();

  if (!opt.out.empty()) {
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) raise(Errc::ParseError, opt.out + ": cannot open for writing");
    LayoutSpec spec;
    spec.qubits = true;
    spec.p = p;
    file << write_state_file(result.estimate, spec);
  }
  return kExitOk;
}

int cmd_classify(const Options& opt, std::ostream& out) {
  std::ostringstream text;
  if (!opt.unitary.empty()) {
    const StateFile file = read_state_file(opt.unitary);
    std::optional<LayoutSpec> layout = file.layout;
    if (!opt.layout.empty()) layout = parse_layout(opt.layout);
    if (!layout) raise(Errc::InvalidArgument, "classify --unitary needs --layout");
    if (layout->dim() != file.matrix.rows()) raise(Errc::DimensionMismatch, "layout does not match the unitary");
    const TransformReport r = layout->qubits ? classify_multiqubit_transform(file.matrix)
                                             : classify_transform(file.matrix, layout->bipartite);
    text << "transform=" << transform_class_name(r.cls) << '\n';
    text << "schmidt_ratio=" << format_real(r.schmidt_ratio) << '\n';
    text << "cross_weight=" << format_real(r.cross_weight) << '\n';
    emit(opt, out, text.str());
    return kExitOk;
  }
  std::optional<LayoutSpec> layout;
  const DensityMatrix rho = require_state(opt, &layout);
  if (!opt.layout.empty()) layout = parse_layout(opt.layout);
  if (layout && layout->dim() != rho.dim()) raise(Errc::DimensionMismatch, "layout does not match the state");
  const bool pair = rho.dim() == 4 && (!layout || layout->qubits || layout->bipartite.n_l == 2);
  if (!pair) raise(Errc::DimensionMismatch, "the covariance verdict needs a qubit pair (layout 2x2)");
  const EntanglementVerdict v = classify_entanglement(rho);
  text << "class=" << entanglement_class_name(v.cls) << '\n';
  text << "covariance_rank=" << v.covariance_rank << '\n';
  text << "singular_values=" << vec3_text(v.singular_values) << '\n';
  text << "d0=" << vec3_text(v.d0) << '\n';
  text << "d1=" << vec3_text(v.d1) << '\n';
  emit(opt, out, text.str());
  return kExitOk;
}

int cmd_reduction(const Options& opt, std::ostream& out) {
  const DensityMatrix rho = require_state(opt);
  const Resolved a = resolve_roi(opt.roi_a, rho);
  const Resolved b = resolve_roi(opt.roi_b, rho);
  const ReductionMeasure m = reduction_measure(a.roi, b.roi);
  std::ostringstream text;
  text << "# reduction from=" << a.id << " to=" << b.id << '\n';
  text << "measure=" << format_real(m.value) << '\n';
  text << "nonzero_phases=" << m.nonzero_phases << '\n';
  text << "entropy=" << format_real(measurement_entropy(portrait_distribution(rho, b.roi))) << '\n';
  emit(opt, out, text.str());
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase portraits, measurement series and reconstruction of qudit states", "qportrait"};
  app.require_subcommand(1);
  Options opt;

  auto state = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--state", opt.state, "State file (JSON)");
    if (required) o->required();
  };
  auto out_opt = [&](CLI::App* sub, const char* what) { sub->add_option("--out", opt.out, what); };

  auto* portrait = app.add_subcommand("portrait", "Outcome probabilities or a qubit theta sweep");
  state(portrait, true);
  portrait->add_option("--axes", opt.axes, "Counter axis per qubit, qubit 0 first");
  portrait->add_option("--roi", opt.roi, "computational | state | axes:<xyz>");
  portrait->add_option("--sweep", opt.sweep, "Number of theta steps over [0, pi]")->check(CLI::PositiveNumber);
  portrait->add_option("--layout", opt.layout, "NLxNS or p=K");
  out_opt(portrait, "Write the table here instead of stdout");

  auto* measure = app.add_subcommand("measure", "Simulate a measurement series");
  state(measure, true);
  measure->add_option("--axes", opt.axes, "Counter axis per qubit, qubit 0 first");
  measure->add_option("--roi", opt.roi, "computational | state | axes:<xyz>");
  measure->add_option("--shots", opt.shots, "Number of acts")->required();
  measure->add_option("--seed", opt.seed, "RNG seed")->required();
  measure->add_option("--workers", opt.workers, "Worker threads");
  measure->add_option("--layout", opt.layout, "NLxNS or p=K");
  out_opt(measure, "Record file");

  auto* reconstruct = app.add_subcommand("reconstruct", "Linear-inversion state reconstruction");
  state(reconstruct, false);
  reconstruct->add_option("--records", opt.records, "Directory of <axes>.rec files");
  reconstruct->add_option("--write-records", opt.write_records, "Save simulated records here");
  reconstruct->add_option("--shots", opt.shots, "Shots per setting");
  reconstruct->add_option("--seed", opt.seed, "Campaign seed");
  reconstruct->add_option("--layout", opt.layout, "p=K");
  reconstruct->add_flag("--exact", opt.exact, "Use analytic distributions");
  reconstruct->add_flag("--psd-repair", opt.psd_repair, "Clip negative eigenvalues and renormalise");
  out_opt(reconstruct, "Estimated state file");

  auto* classify = app.add_subcommand("classify", "Entanglement or transformation class");
  state(classify, false);
  classify->add_option("--unitary", opt.unitary, "Unitary matrix file (same JSON shape)");
  classify->add_option("--layout", opt.layout, "NLxNS or p=K");
  out_opt(classify, "Write the report here instead of stdout");

  auto* reduction = app.add_subcommand("reduction", "Reduction measure between two resolutions");
  state(reduction, true);
  reduction->add_option("--roi-a", opt.roi_a, "Source resolution")->required();
  reduction->add_option("--roi-b", opt.roi_b, "Target resolution")->required();
  out_opt(reduction, "Write the report here instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*portrait) return cmd_portrait(opt, out);
    if (*measure) return cmd_measure(opt, out);
    if (*reconstruct) return cmd_reconstruct(opt, out);
    if (*classify) return cmd_classify(opt, out);
    return cmd_reduction(opt, out);
  } catch (const Error& e) {
    err << "qportrait: " << e.what() << '\n';
    return is_validation_error(e.code()) ? kExitInvalid : kExitNumerical;
  } catch (const std::exception& e) {
    err << "qportrait: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace qp::cli
