#include "qportrait/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "qportrait/errors.hpp"
#include "qportrait/tolerance.hpp"

namespace qp {

// ---------------------------------------------------------------------------
// FrequencyTable

FrequencyTable FrequencyTable::from_record(const MeasurementRecord& record, std::size_t outcomes) {
  FrequencyTable table(outcomes);
  for (const auto& outcome : record.outcomes) {
    if (!outcome) continue;
    if (*outcome < 0 || static_cast<std::size_t>(*outcome) >= outcomes) {
      raise(Errc::IndexOutOfRange, "outcome " + std::to_string(*outcome) + " outside [0, " +
                                       std::to_string(outcomes) + ")");
    }
    table.add(static_cast<std::size_t>(*outcome));
  }
  return table;
}

void FrequencyTable::add(std::size_t index, std::uint64_t n) { counts_.at(index) += n; }

void FrequencyTable::merge(const FrequencyTable& other) {
  if (other.size() != size()) raise(Errc::LengthMismatch, "frequency tables differ in length");
  for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += other.counts_[k];
}

std::uint64_t FrequencyTable::total() const {
  std::uint64_t sum = 0;
  for (auto c : counts_) sum += c;
  return sum;
}

double FrequencyTable::frequency(std::size_t k) const {
  const std::uint64_t t = total();
  if (t == 0) raise(Errc::ShotCountZero, "frequency of an empty table");
  return static_cast<double>(count(k)) / static_cast<double>(t);
}

std::vector<double> FrequencyTable::frequencies() const {
  std::vector<double> out(counts_.size());
  for (std::size_t k = 0; k < counts_.size(); ++k) out[k] = frequency(k);
  return out;
}

// ---------------------------------------------------------------------------
// Sampling

int sample_index(const std::vector<double>& probabilities, RandomStream& rng) {
  if (probabilities.empty()) raise(Errc::InvalidArgument, "empty probability vector");
  const double u = rng.uniform();
  double cumulative = 0.0;
  int last_positive = -1;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    if (probabilities[k] <= 0.0) continue;
    last_positive = static_cast<int>(k);
    cumulative += probabilities[k];
    if (u < cumulative) return static_cast<int>(k);
  }
  // u beyond a total slightly below 1 after rounding.
  if (last_positive < 0) raise(Errc::ZeroProbabilityOutcome, "all outcome probabilities vanish");
  return last_positive;
}

ActResult measure_act(const DensityMatrix& rho, const ResolutionOfIdentity& roi, RandomStream& rng) {
  const std::vector<double> probs = portrait_distribution(rho, roi);
  const int k = sample_index(probs, rng);
  const double pk = probs[static_cast<std::size_t>(k)];
  if (pk < tol::zero_outcome()) {
    raise(Errc::ZeroProbabilityOutcome, "sampled outcome " + std::to_string(k) +
                                            " has probability " + std::to_string(pk));
  }
  const ComplexMatrix& pi = roi[static_cast<std::size_t>(k)];
  return {k, DensityMatrix(pi * rho.matrix() * pi / pk)};
}

namespace {

DensityMatrix average_from_table(const ResolutionOfIdentity& roi, const FrequencyTable& table) {
  ComplexMatrix avg = ComplexMatrix::Zero(roi.dim(), roi.dim());
  const std::uint64_t total = table.total();
  for (std::size_t k = 0; k < roi.size(); ++k) {
    avg += roi[k] * (static_cast<double>(table.count(k)) /
                     (static_cast<double>(total) * static_cast<double>(roi.rank(k))));
  }
  return DensityMatrix(avg);
}

void require_shots(std::uint64_t shots) {
  if (shots == 0) raise(Errc::ShotCountZero, "a series needs at least one shot");
}

}  // namespace

SeriesResult measure_series(const DensityMatrix& rho, const ResolutionOfIdentity& roi,
                            std::uint64_t shots, RandomStream& rng, const std::string& settings_id) {
  require_shots(shots);
  const std::vector<double> probs = portrait_distribution(rho, roi);
  MeasurementRecord record{settings_id, rng.seed(), {}};
  record.outcomes.reserve(shots);
  FrequencyTable table(roi.size());
  for (std::uint64_t s = 0; s < shots; ++s) {
    const int k = sample_index(probs, rng);
    if (probs[static_cast<std::size_t>(k)] < tol::zero_outcome()) {
      raise(Errc::ZeroProbabilityOutcome, "sampled outcome with vanishing probability");
    }
    record.outcomes.emplace_back(k);
    table.add(static_cast<std::size_t>(k));
  }
  DensityMatrix averaged = average_from_table(roi, table);
  return {std::move(record), std::move(table), std::move(averaged)};
}

SeriesResult measure_series_parallel(const DensityMatrix& rho, const ResolutionOfIdentity& roi,
                                     std::uint64_t shots, std::uint64_t seed, unsigned workers,
                                     const std::string& settings_id) {
  require_shots(shots);
  workers = std::max(1u, workers);
  const RandomStream root(seed);
  std::vector<std::optional<SeriesResult>> parts(workers);
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> failures(workers);
  const std::uint64_t base = shots / workers;
  const std::uint64_t extra = shots % workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t n = base + (w < extra ? 1 : 0);
    if (n == 0) continue;
    threads.emplace_back([&, w, n] {
      try {
        RandomStream stream = root.substream(w);
        parts[w] = measure_series(rho, roi, n, stream, settings_id);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  MeasurementRecord record{settings_id, seed, {}};
  record.outcomes.reserve(shots);
  FrequencyTable table(roi.size());
  for (const auto& part : parts) {
    if (!part) continue;
    record.outcomes.insert(record.outcomes.end(), part->record.outcomes.begin(),
                           part->record.outcomes.end());
    table.merge(part->table);
  }
  DensityMatrix averaged = average_from_table(roi, table);
  return {std::move(record), std::move(table), std::move(averaged)};
}

// ---------------------------------------------------------------------------
// Reduced matrices and measures

DensityMatrix reduced_density(const DensityMatrix& rho, const ResolutionOfIdentity& roi) {
  const std::vector<double> probs = portrait_distribution(rho, roi);
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (std::size_t k = 0; k < roi.size(); ++k) out += probs[k] / static_cast<double>(roi.rank(k)) * roi[k];
  return DensityMatrix(out);
}

DensityMatrix reduced_density(const DensityMatrix& rho, const Observable& a) {
  if (a.dim() != rho.dim()) raise(Errc::DimensionMismatch, "reduced_density: dimensions differ");
  return reduced_density(rho, resolution_of_identity(a));
}

ReductionMeasure reduction_measure(const ResolutionOfIdentity& from, const ResolutionOfIdentity& to) {
  const ComplexMatrix u = transform_matrix(from, to);
  ReductionMeasure out;
  out.phases = centered_eigenphases(u);
  out.value = out.phases.norm();
  for (Eigen::Index n = 0; n < out.phases.size(); ++n)
    if (std::abs(out.phases(n)) > tol::phase()) ++out.nonzero_phases;
  return out;
}

double measurement_entropy(const std::vector<double>& p) {
  double sum = 0.0;
  for (double v : p) {
    if (v < 0.0) raise(Errc::NotNormalized, "negative probability " + std::to_string(v));
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol::normalization()) {
    raise(Errc::NotNormalized, "probabilities sum to " + std::to_string(sum));
  }
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

double binary_entropy(double p) { return measurement_entropy({p, 1.0 - p}); }

// ---------------------------------------------------------------------------
// Record text format

void write_record(std::ostream& out, const MeasurementRecord& record) {
  out << "# roi=" << record.settings_id << " shots=" << record.shots() << " seed=" << record.seed
      << '\n';
  for (const auto& outcome : record.outcomes) {
    if (outcome)
      out << *outcome << '\n';
    else
      out << "-\n";
  }
}

namespace {

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, const std::string& msg) {
  raise(Errc::ParseError, source + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

MeasurementRecord read_record(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) parse_fail(source, 1, "missing header");
  ++line_no;

  MeasurementRecord record;
  std::optional<std::uint64_t> shots;
  bool have_seed = false;
  {
    std::istringstream header(line);
    std::string token;
    header >> token;
    if (token != "#") parse_fail(source, line_no, "header must start with '#'");
    while (header >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) parse_fail(source, line_no, "malformed header field '" + token + "'");
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      try {
        std::size_t used = 0;
        if (key == "roi") {
          record.settings_id = value;
        } else if (key == "shots") {
          shots = std::stoull(value, &used);
          if (used != value.size()) throw std::invalid_argument(value);
        } else if (key == "seed") {
          record.seed = std::stoull(value, &used);
          if (used != value.size()) throw std::invalid_argument(value);
          have_seed = true;
        } else {
          parse_fail(source, line_no, "unknown header field '" + key + "'");
        }
      } catch (const std::logic_error&) {
        parse_fail(source, line_no, "bad value for '" + key + "'");
      }
    }
  }
  if (record.settings_id.empty() || !shots || !have_seed) {
    parse_fail(source, line_no, "header needs roi=, shots= and seed=");
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line == "-") {
      record.outcomes.emplace_back(std::nullopt);
      continue;
    }
    int value = 0;
    std::size_t used = 0;
    try {
      value = std::stoi(line, &used);
    } catch (const std::logic_error&) {
      parse_fail(source, line_no, "expected an outcome index, got '" + line + "'");
    }
    if (used != line.size() || value < 0) {
      parse_fail(source, line_no, "expected an outcome index, got '" + line + "'");
    }
    record.outcomes.emplace_back(value);
  }
  if (record.outcomes.size() != *shots) {
    parse_fail(source, line_no, "header announces " + std::to_string(*shots) + " shots, found " +
                                    std::to_string(record.outcomes.size()));
  }
  return record;
}

}  // namespace qp
