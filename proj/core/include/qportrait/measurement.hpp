#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qportrait/qudit.hpp"
#include "qportrait/rng.hpp"

namespace qp {

/// Outcome indices of a series of acts. A missing value marks a missed
/// shot (no counter fired); misses are excluded from frequencies.
struct MeasurementRecord {
  std::string settings_id;
  std::uint64_t seed = 0;
  std::vector<std::optional<int>> outcomes;

  std::size_t shots() const { return outcomes.size(); }
};

/// Integer counts per outcome; frequencies are counts over the total.
class FrequencyTable {
 public:
  explicit FrequencyTable(std::size_t outcomes) : counts_(outcomes, 0) {}
  FrequencyTable(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {}

  static FrequencyTable from_record(const MeasurementRecord& record, std::size_t outcomes);

  void add(std::size_t index, std::uint64_t n = 1);
  void merge(const FrequencyTable& other);

  std::size_t size() const { return counts_.size(); }
  std::uint64_t count(std::size_t k) const { return counts_.at(k); }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t total() const;
  double frequency(std::size_t k) const;
  std::vector<double> frequencies() const;

 private:
  std::vector<std::uint64_t> counts_;
};

struct ActResult {
  int index;
  DensityMatrix post_state;
};

struct SeriesResult {
  MeasurementRecord record;
  FrequencyTable table;
  DensityMatrix averaged;
};

/// Inverse-CDF draw over a probability vector.
int sample_index(const std::vector<double>& probabilities, RandomStream& rng);

/// Born-rule draw followed by the Lueders update Pi rho Pi / tr(Pi rho).
ActResult measure_act(const DensityMatrix& rho, const ResolutionOfIdentity& roi, RandomStream& rng);

/// K independent acts on fresh copies of rho; averaged = sum nu_k Pi_k.
SeriesResult measure_series(const DensityMatrix& rho, const ResolutionOfIdentity& roi,
                            std::uint64_t shots, RandomStream& rng,
                            const std::string& settings_id = "roi");

/// Same series split over `workers` threads. Worker w draws
/// ceil/floor(shots / workers) acts from rng.substream(w); records are
/// concatenated in worker order and counts are merged by addition.
SeriesResult measure_series_parallel(const DensityMatrix& rho, const ResolutionOfIdentity& roi,
                                     std::uint64_t shots, std::uint64_t seed, unsigned workers,
                                     const std::string& settings_id = "roi");

/// sum_k p_k Pi_k[A], p_k = tr(rho Pi_k[A]).
DensityMatrix reduced_density(const DensityMatrix& rho, const Observable& a);
DensityMatrix reduced_density(const DensityMatrix& rho, const ResolutionOfIdentity& roi);

struct ReductionMeasure {
  double value = 0.0;            ///< sqrt(sum phi_n^2)
  int nonzero_phases = 0;        ///< count of |phi_n| > phase tolerance
  RealVector phases;             ///< centered principal eigenphases
};

/// Generator norm of the transformation between two rank-1 resolutions.
ReductionMeasure reduction_measure(const ResolutionOfIdentity& from, const ResolutionOfIdentity& to);

/// -sum p log2 p with 0 log 0 = 0.
double measurement_entropy(const std::vector<double>& p);
double binary_entropy(double p);

// Line-oriented record format:
//   # roi=<id> shots=<K> seed=<s>
//   <index>        one per shot, or '-' for a miss
void write_record(std::ostream& out, const MeasurementRecord& record);
/// `source` names the input in ParseError messages.
MeasurementRecord read_record(std::istream& in, const std::string& source);

}  // namespace qp
