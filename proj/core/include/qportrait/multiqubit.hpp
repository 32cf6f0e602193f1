#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qportrait/composite.hpp"
#include "qportrait/measurement.hpp"
#include "qportrait/qudit.hpp"

namespace qp {

// Qubit q is bit q of the index: k = b0 + 2 b1 + ... (bit 0 fastest).

inline constexpr int kMaxQubits = 10;

/// Number of qubits p with 2^p == dim; throws DimensionMismatch otherwise.
int qubit_count(int dim);

int bit_of(std::uint64_t k, int q, int p);
/// Indices with bit q zero (k_q), and the complement.
std::vector<std::uint64_t> index_set(int q, int p);
std::vector<std::uint64_t> index_complement(int q, int p);

/// Per-qubit copy of the Pauli algebra inside the 2^p space.
struct QubitSubalgebra {
  int q = 0;
  int p = 0;
  std::array<ComplexMatrix, 3> sigma;  // x, y, z; sigma_z = +1 on bit 0
  ComplexMatrix pi;                    // projector on bit q = 0
  ComplexMatrix a;                     // sum |k><k + 2^q| over k in k_q

  ComplexMatrix a_dag() const { return a.adjoint(); }
};

QubitSubalgebra qubit_subalgebra(int q, int p);

/// Computational projector |k><k| built as the product of per-bit factors.
ComplexMatrix projector_from_bits(std::uint64_t k, int p);

// Pauli strings are base-4 codes: digit q in {0: I, 1: x, 2: y, 3: z}.
using PauliCode = std::uint32_t;

int pauli_digit(PauliCode code, int q);
PauliCode pauli_code(const std::vector<int>& digits);
int pauli_weight(PauliCode code, int p);
ComplexMatrix pauli_string_matrix(PauliCode code, int p);
/// tr(rho P) for the string `code`.
double pauli_expectation(const ComplexMatrix& rho, PauliCode code, int p);

/// Unit counter directors, one per qubit.
class CounterConfiguration {
 public:
  /// Throws BadDirector if any director is not a unit vector.
  explicit CounterConfiguration(std::vector<Vec3> directors);
  /// One of 'x', 'y', 'z' per qubit, qubit 0 first.
  static CounterConfiguration from_axes(const std::string& axes);

  int qubits() const { return static_cast<int>(directors_.size()); }
  const std::vector<Vec3>& directors() const { return directors_; }
  const Vec3& operator[](int q) const { return directors_[static_cast<std::size_t>(q)]; }

 private:
  std::vector<Vec3> directors_;
};

/// prod_q (I + m_q.Sigma^(q)) / 2.
ComplexMatrix product_counter(const CounterConfiguration& m);
/// Projector k flips the director of every qubit whose bit is 1.
ResolutionOfIdentity counter_roi(const CounterConfiguration& m);

/// Pauli expansion rho = (1/2^p) sum_code d_code P_code with d_0 = 1.
class PauliCoefficients {
 public:
  explicit PauliCoefficients(int p);
  PauliCoefficients(int p, std::vector<double> values);

  int qubits() const { return p_; }
  std::size_t size() const { return values_.size(); }
  double operator[](PauliCode code) const { return values_.at(code); }
  double& operator[](PauliCode code) { return values_.at(code); }
  const std::vector<double>& values() const { return values_; }

  /// Coefficient of the string with `axes` (1..3) on `qubits`, identity elsewhere.
  double at(const std::vector<std::pair<int, int>>& qubit_axes) const;

 private:
  int p_;
  std::vector<double> values_;
};

/// Non-identity codes ordered by subset size, then lexicographically on the
/// (qubit, axis) pairs.
std::vector<PauliCode> canonical_codes(int p);

PauliCoefficients pauli_coefficients(const DensityMatrix& rho);
PauliCoefficients pauli_coefficients(const ComplexMatrix& rho);
/// Hermitian unit-trace matrix of the expansion; may be indefinite.
ComplexMatrix matrix_from_coefficients(const PauliCoefficients& c);
DensityMatrix density_from_coefficients(const PauliCoefficients& c);

/// Reduced state of the listed qubits, renumbered in ascending order.
DensityMatrix partial_density(const DensityMatrix& rho, std::vector<int> subset);
/// Same state from an explicit partial trace over the complement.
DensityMatrix partial_density_by_trace(const DensityMatrix& rho, std::vector<int> subset);

double multiqubit_portrait(const DensityMatrix& rho, const CounterConfiguration& m);
/// Portrait from the coefficient expansion.
double multiqubit_portrait(const PauliCoefficients& c, const CounterConfiguration& m);
std::vector<double> counter_distribution(const DensityMatrix& rho, const CounterConfiguration& m);

/// Effective director of qubit q given counters for every other qubit.
/// `others` lists directors for qubits 0..p-1 skipping q.
Vec3 effective_director(const DensityMatrix& rho, int q, const std::vector<Vec3>& others);
Vec3 effective_director(const PauliCoefficients& c, int q, const std::vector<Vec3>& others);

// Reconstruction from product-axis settings.

/// All 3^p axis strings, lexicographic with x < y < z.
std::vector<std::string> axis_settings(int p);

struct ReconstructionOptions {
  bool psd_repair = false;
};

struct ReconstructionResult {
  PauliCoefficients coefficients{1};
  ComplexMatrix estimate;           // Hermitian, unit trace
  double min_eigenvalue = 0.0;      // before any repair
  bool psd_repaired = false;
};

/// Linear inversion from one frequency table per axis string.
ReconstructionResult reconstruct_state(int p, const std::map<std::string, FrequencyTable>& tables,
                                       const ReconstructionOptions& options = {});
/// Same inversion from exact outcome distributions.
ReconstructionResult reconstruct_state_exact(
    int p, const std::map<std::string, std::vector<double>>& distributions,
    const ReconstructionOptions& options = {});

/// Clip negative eigenvalues and renormalise.
ComplexMatrix psd_repair(const ComplexMatrix& estimate);

/// Settings file line: axes=<xyz...> shots=<K> seed=<s>.
struct SettingLine {
  std::string axes;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

/// One line per axis string; seeds derived from `seed` per setting index.
std::vector<SettingLine> campaign_settings(int p, std::uint64_t shots, std::uint64_t seed);
void write_settings(std::ostream& out, const std::vector<SettingLine>& settings);
std::vector<SettingLine> read_settings(std::istream& in, const std::string& source);

/// Simulated series for each setting, using the setting's own seed.
std::map<std::string, SeriesResult> run_campaign(const DensityMatrix& rho,
                                                 const std::vector<SettingLine>& settings);

/// S=<qubit:axis,...> d=<value> lines in canonical order.
void write_coefficient_report(std::ostream& out, const PauliCoefficients& c);
std::string subset_label(PauliCode code, int p);

/// exp(iJ) with J|k> = j_k e^{i phi_k}|2^p-1-k> for k < 2^(p-1).
ComplexMatrix max_entangling_unitary(const std::vector<double>& j, const std::vector<double>& phi);

/// Stabilizer if diagonal; Local if U factorises over every qubit;
/// Entangling otherwise. cross_weight is the multi-qubit weight of the
/// principal generator.
TransformReport classify_multiqubit_transform(const ComplexMatrix& u);

}  // namespace qp
