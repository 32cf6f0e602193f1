#include "qportrait/multiqubit.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "qportrait/errors.hpp"
#include "qportrait/text_format.hpp"
#include "qportrait/tolerance.hpp"

namespace qp {

namespace {

constexpr Complex kI(0.0, 1.0);

void require_qubits(int p) {
  if (p < 1 || p > kMaxQubits) {
    raise(Errc::InvalidArgument, "qubit count " + std::to_string(p) + " outside [1, " +
                                     std::to_string(kMaxQubits) + "]");
  }
}

std::uint64_t dim_of(int p) { return std::uint64_t{1} << p; }

std::uint32_t pow4(int p) { return std::uint32_t{1} << (2 * p); }

/// P|k> = phase(k) |k ^ flip>.
struct StringAction {
  std::uint64_t flip = 0;
  std::uint64_t y_mask = 0;
  std::uint64_t z_mask = 0;
  int y_count = 0;

  explicit StringAction(PauliCode code, int p) {
    for (int q = 0; q < p; ++q) {
      const int d = pauli_digit(code, q);
      const std::uint64_t bit = std::uint64_t{1} << q;
      if (d == 1 || d == 2) flip |= bit;
      if (d == 2) {
        y_mask |= bit;
        ++y_count;
      }
      if (d == 3) z_mask |= bit;
    }
  }

  Complex phase(std::uint64_t k) const {
    // sigma_y: +i from bit 0, -i from bit 1; sigma_z: (-1)^b.
    const int ones_y = __builtin_popcountll(k & y_mask);
    const int ones_z = __builtin_popcountll(k & z_mask);
    // i^(y_count - 2 ones_y) * (-1)^ones_z
    int quarter = (y_count - 2 * ones_y + 2 * ones_z) % 4;
    if (quarter < 0) quarter += 4;
    static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[quarter];
  }
};

ComplexMatrix qubit_factor_product(const std::vector<ComplexMatrix>& factors) {
  // Qubit 0 is the fast index, so it is the last kron argument.
  ComplexMatrix out = factors.back();
  for (int q = static_cast<int>(factors.size()) - 2; q >= 0; --q) out = kron(out, factors[q]);
  return out;
}

ComplexMatrix qubit_projector(const Vec3& m, int sign) {
  return (identity(2) + static_cast<double>(sign) * director_dot_sigma(m)) / 2.0;
}

Vec3 axis_director(char c) {
  switch (c) {
    case 'x': return Vec3::UnitX();
    case 'y': return Vec3::UnitY();
    case 'z': return Vec3::UnitZ();
    default: raise(Errc::InvalidArgument, std::string("axis must be x, y or z, got '") + c + "'");
  }
}

int axis_digit(char c) { return c == 'x' ? 1 : c == 'y' ? 2 : 3; }
char digit_axis(int d) { return "?xyz"[d]; }

std::vector<int> normalized_subset(std::vector<int> subset, int p) {
  if (subset.empty()) raise(Errc::EmptySubset, "qubit subset is empty");
  std::sort(subset.begin(), subset.end());
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end()) {
    raise(Errc::InvalidArgument, "qubit subset has repeated entries");
  }
  if (subset.front() < 0 || subset.back() >= p) {
    raise(Errc::IndexOutOfRange, "qubit subset outside [0, " + std::to_string(p) + ")");
  }
  return subset;
}

}  // namespace

int qubit_count(int dim) {
  for (int p = 1; p <= kMaxQubits; ++p)
    if (dim_of(p) == static_cast<std::uint64_t>(dim)) return p;
  raise(Errc::DimensionMismatch, "dimension " + std::to_string(dim) + " is not 2^p");
}

int bit_of(std::uint64_t k, int q, int p) {
  if (q < 0 || q >= p || k >= dim_of(p)) {
    raise(Errc::IndexOutOfRange, "bit " + std::to_string(q) + " of index " + std::to_string(k) +
                                     " with " + std::to_string(p) + " qubits");
  }
  return static_cast<int>((k >> q) & 1u);
}

std::vector<std::uint64_t> index_set(int q, int p) {
  if (q < 0 || q >= p) raise(Errc::IndexOutOfRange, "qubit index out of range");
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 0; k < dim_of(p); ++k)
    if (((k >> q) & 1u) == 0) out.push_back(k);
  return out;
}

std::vector<std::uint64_t> index_complement(int q, int p) {
  std::vector<std::uint64_t> out = index_set(q, p);
  for (auto& k : out) k += std::uint64_t{1} << q;
  return out;
}

QubitSubalgebra qubit_subalgebra(int q, int p) {
  require_qubits(p);
  if (q < 0 || q >= p) raise(Errc::IndexOutOfRange, "qubit index out of range");
  const auto n = static_cast<Eigen::Index>(dim_of(p));
  QubitSubalgebra s;
  s.q = q;
  s.p = p;
  s.pi = ComplexMatrix::Zero(n, n);
  s.a = ComplexMatrix::Zero(n, n);
  const auto step = static_cast<Eigen::Index>(std::uint64_t{1} << q);
  for (std::uint64_t k : index_set(q, p)) {
    const auto i = static_cast<Eigen::Index>(k);
    s.pi(i, i) = 1.0;
    s.a(i, i + step) = 1.0;
  }
  const ComplexMatrix id = identity(static_cast<int>(n));
  s.sigma[0] = s.a + s.a.adjoint();
  s.sigma[1] = -kI * s.a + kI * s.a.adjoint();
  s.sigma[2] = 2.0 * s.pi - id;
  return s;
}

ComplexMatrix projector_from_bits(std::uint64_t k, int p) {
  require_qubits(p);
  if (k >= dim_of(p)) raise(Errc::IndexOutOfRange, "index " + std::to_string(k) + " >= 2^p");
  const int n = static_cast<int>(dim_of(p));
  ComplexMatrix out = identity(n);
  for (int q = 0; q < p; ++q) {
    const ComplexMatrix sz = qubit_subalgebra(q, p).sigma[2];
    const double sign = ((k >> q) & 1u) ? -1.0 : 1.0;
    out = out * ((identity(n) + sign * sz) / 2.0);
  }
  return out;
}

int pauli_digit(PauliCode code, int q) { return static_cast<int>((code >> (2 * q)) & 3u); }

PauliCode pauli_code(const std::vector<int>& digits) {
  PauliCode code = 0;
  for (std::size_t q = 0; q < digits.size(); ++q) {
    if (digits[q] < 0 || digits[q] > 3) raise(Errc::InvalidArgument, "Pauli digit outside 0..3");
    code |= static_cast<PauliCode>(digits[q]) << (2 * q);
  }
  return code;
}

int pauli_weight(PauliCode code, int p) {
  int w = 0;
  for (int q = 0; q < p; ++q) w += pauli_digit(code, q) != 0;
  return w;
}

ComplexMatrix pauli_string_matrix(PauliCode code, int p) {
  require_qubits(p);
  const StringAction act(code, p);
  const auto n = static_cast<Eigen::Index>(dim_of(p));
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (std::uint64_t k = 0; k < dim_of(p); ++k)
    m(static_cast<Eigen::Index>(k ^ act.flip), static_cast<Eigen::Index>(k)) = act.phase(k);
  return m;
}

double pauli_expectation(const ComplexMatrix& rho, PauliCode code, int p) {
  const StringAction act(code, p);
  Complex sum = 0.0;
  for (std::uint64_t k = 0; k < dim_of(p); ++k)
    sum += act.phase(k) * rho(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k ^ act.flip));
  return sum.real();
}

CounterConfiguration::CounterConfiguration(std::vector<Vec3> directors)
    : directors_(std::move(directors)) {
  require_qubits(static_cast<int>(directors_.size()));
  for (const auto& m : directors_) require_unit_director(m, "counter configuration");
}

CounterConfiguration CounterConfiguration::from_axes(const std::string& axes) {
  std::vector<Vec3> dirs;
  for (char c : axes) dirs.push_back(axis_director(c));
  return CounterConfiguration(std::move(dirs));
}

ComplexMatrix product_counter(const CounterConfiguration& m) {
  std::vector<ComplexMatrix> factors;
  for (const auto& d : m.directors()) factors.push_back(qubit_projector(d, 1));
  return qubit_factor_product(factors);
}

ResolutionOfIdentity counter_roi(const CounterConfiguration& m) {
  const int p = m.qubits();
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(dim_of(p));
  for (std::uint64_t k = 0; k < dim_of(p); ++k) {
    std::vector<ComplexMatrix> factors;
    for (int q = 0; q < p; ++q) factors.push_back(qubit_projector(m[q], ((k >> q) & 1u) ? -1 : 1));
    projectors.push_back(qubit_factor_product(factors));
  }
  return ResolutionOfIdentity(std::move(projectors));
}

PauliCoefficients::PauliCoefficients(int p) : p_(p), values_(pow4(p), 0.0) { values_[0] = 1.0; }

PauliCoefficients::PauliCoefficients(int p, std::vector<double> values)
    : p_(p), values_(std::move(values)) {
  if (values_.size() != pow4(p)) raise(Errc::LengthMismatch, "expected 4^p coefficients");
}

double PauliCoefficients::at(const std::vector<std::pair<int, int>>& qubit_axes) const {
  std::vector<int> digits(static_cast<std::size_t>(p_), 0);
  for (const auto& [q, a] : qubit_axes) {
    if (q < 0 || q >= p_) raise(Errc::IndexOutOfRange, "qubit index out of range");
    digits[static_cast<std::size_t>(q)] = a;
  }
  return values_.at(pauli_code(digits));
}

std::vector<PauliCode> canonical_codes(int p) {
  std::vector<std::pair<std::vector<std::pair<int, int>>, PauliCode>> keyed;
  for (PauliCode code = 1; code < pow4(p); ++code) {
    std::vector<std::pair<int, int>> key;
    for (int q = 0; q < p; ++q)
      if (const int d = pauli_digit(code, q)) key.emplace_back(q, d);
    keyed.emplace_back(std::move(key), code);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  std::vector<PauliCode> out;
  out.reserve(keyed.size());
  for (const auto& k : keyed) out.push_back(k.second);
  return out;
}

PauliCoefficients pauli_coefficients(const ComplexMatrix& rho) {
  const int p = qubit_count(static_cast<int>(rho.rows()));
  PauliCoefficients c(p);
  for (PauliCode code = 1; code < pow4(p); ++code) c[code] = pauli_expectation(rho, code, p);
  return c;
}

PauliCoefficients pauli_coefficients(const DensityMatrix& rho) { return pauli_coefficients(rho.matrix()); }

ComplexMatrix matrix_from_coefficients(const PauliCoefficients& c) {
  const int p = c.qubits();
  const auto n = static_cast<Eigen::Index>(dim_of(p));
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (PauliCode code = 0; code < pow4(p); ++code) {
    const double d = c[code];
    if (d == 0.0) continue;
    const StringAction act(code, p);
    for (std::uint64_t k = 0; k < dim_of(p); ++k)
      rho(static_cast<Eigen::Index>(k ^ act.flip), static_cast<Eigen::Index>(k)) += d * inv_n * act.phase(k);
  }
  return rho;
}

DensityMatrix density_from_coefficients(const PauliCoefficients& c) {
  return DensityMatrix(matrix_from_coefficients(c));
}

DensityMatrix partial_density(const DensityMatrix& rho, std::vector<int> subset) {
  const int p = qubit_count(rho.dim());
  subset = normalized_subset(std::move(subset), p);
  const int s = static_cast<int>(subset.size());
  PauliCoefficients reduced(s);
  for (PauliCode r = 1; r < pow4(s); ++r) {
    PauliCode full = 0;
    for (int i = 0; i < s; ++i) full |= static_cast<PauliCode>(pauli_digit(r, i)) << (2 * subset[i]);
    reduced[r] = pauli_expectation(rho.matrix(), full, p);
  }
  return density_from_coefficients(reduced);
}

DensityMatrix partial_density_by_trace(const DensityMatrix& rho, std::vector<int> subset) {
  const int p = qubit_count(rho.dim());
  subset = normalized_subset(std::move(subset), p);
  const int s = static_cast<int>(subset.size());
  std::uint64_t kept_mask = 0;
  for (int q : subset) kept_mask |= std::uint64_t{1} << q;
  auto sub_index = [&](std::uint64_t k) {
    std::uint64_t r = 0;
    for (int i = 0; i < s; ++i) r |= ((k >> subset[i]) & 1u) << i;
    return r;
  };
  auto with_sub = [&](std::uint64_t k, std::uint64_t r) {
    std::uint64_t out = k & ~kept_mask;
    for (int i = 0; i < s; ++i) out |= ((r >> i) & 1u) << subset[i];
    return out;
  };
  const auto ns = static_cast<Eigen::Index>(dim_of(s));
  ComplexMatrix out = ComplexMatrix::Zero(ns, ns);
  for (std::uint64_t k = 0; k < dim_of(p); ++k) {
    const std::uint64_t i = sub_index(k);
    for (std::uint64_t j = 0; j < dim_of(s); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
          rho.matrix()(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(with_sub(k, j)));
    }
  }
  return DensityMatrix(out);
}

double multiqubit_portrait(const DensityMatrix& rho, const CounterConfiguration& m) {
  if (rho.dim() != static_cast<int>(dim_of(m.qubits()))) {
    raise(Errc::DimensionMismatch, "counter configuration does not match the state");
  }
  return (rho.matrix() * product_counter(m)).trace().real();
}

namespace {

double director_product(PauliCode code, const std::vector<Vec3>& dirs, int skip) {
  double w = 1.0;
  for (int q = 0; q < static_cast<int>(dirs.size()); ++q) {
    if (q == skip) continue;
    if (const int d = pauli_digit(code, q)) w *= dirs[static_cast<std::size_t>(q)](d - 1);
  }
  return w;
}

}  // namespace

double multiqubit_portrait(const PauliCoefficients& c, const CounterConfiguration& m) {
  if (c.qubits() != m.qubits()) raise(Errc::DimensionMismatch, "counter configuration does not match");
  double sum = 0.0;
  for (PauliCode code = 0; code < c.size(); ++code) sum += c[code] * director_product(code, m.directors(), -1);
  return sum / static_cast<double>(dim_of(c.qubits()));
}

std::vector<double> counter_distribution(const DensityMatrix& rho, const CounterConfiguration& m) {
  if (rho.dim() != static_cast<int>(dim_of(m.qubits()))) {
    raise(Errc::DimensionMismatch, "counter configuration does not match the state");
  }
  return portrait_distribution(rho, counter_roi(m));
}

Vec3 effective_director(const PauliCoefficients& c, int q, const std::vector<Vec3>& others) {
  const int p = c.qubits();
  if (q < 0 || q >= p) raise(Errc::IndexOutOfRange, "target qubit out of range");
  if (static_cast<int>(others.size()) != p - 1) {
    raise(Errc::LengthMismatch, "need one director for each of the other " + std::to_string(p - 1) + " qubits");
  }
  std::vector<Vec3> dirs;
  for (int t = 0, i = 0; t < p; ++t) {
    if (t == q) {
      dirs.push_back(Vec3::Zero());
    } else {
      require_unit_director(others[static_cast<std::size_t>(i)], "effective_director");
      dirs.push_back(others[static_cast<std::size_t>(i++)]);
    }
  }
  Vec3 num = Vec3::Zero();
  double den = 0.0;
  for (PauliCode code = 0; code < c.size(); ++code) {
    const double w = c[code] * director_product(code, dirs, q);
    const int d = pauli_digit(code, q);
    if (d == 0)
      den += w;
    else
      num(d - 1) += w;
  }
  if (den <= tol::zero_condition()) {
    raise(Errc::ZeroProbabilityCondition, "conditioning counters have vanishing probability");
  }
  return num / den;
}

Vec3 effective_director(const DensityMatrix& rho, int q, const std::vector<Vec3>& others) {
  return effective_director(pauli_coefficients(rho), q, others);
}

std::vector<std::string> axis_settings(int p) {
  require_qubits(p);
  std::vector<std::string> out;
  std::string s(static_cast<std::size_t>(p), 'x');
  const std::size_t total = static_cast<std::size_t>(std::pow(3, p));
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t v = i;
    // Most significant ternary digit first so the strings sort lexicographically.
    for (int pos = p - 1; pos >= 0; --pos) {
      s[static_cast<std::size_t>(pos)] = "xyz"[v % 3];
      v /= 3;
    }
    out.push_back(s);
  }
  return out;
}

namespace {

struct SettingData {
  std::vector<double> weights;  // per outcome
  double total = 0.0;
};

ReconstructionResult invert(int p, const std::map<std::string, SettingData>& data,
                            const ReconstructionOptions& options) {
  const std::vector<std::string> all = axis_settings(p);
  for (const auto& axes : all)
    if (!data.count(axes)) raise(Errc::MissingSetting, "no data for setting axes=" + axes);

  ReconstructionResult result;
  result.coefficients = PauliCoefficients(p);
  for (PauliCode code = 1; code < pow4(p); ++code) {
    std::uint64_t sign_mask = 0;
    for (int q = 0; q < p; ++q)
      if (pauli_digit(code, q)) sign_mask |= std::uint64_t{1} << q;
    double num = 0.0, den = 0.0;
    for (const auto& [axes, d] : data) {
      bool match = true;
      for (int q = 0; q < p && match; ++q) {
        const int digit = pauli_digit(code, q);
        match = digit == 0 || axis_digit(axes[static_cast<std::size_t>(q)]) == digit;
      }
      if (!match) continue;
      for (std::uint64_t k = 0; k < d.weights.size(); ++k) {
        const double sign = (__builtin_popcountll(k & sign_mask) & 1) ? -1.0 : 1.0;
        num += sign * d.weights[k];
      }
      den += d.total;
    }
    result.coefficients[code] = num / den;
  }
  result.estimate = matrix_from_coefficients(result.coefficients);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(result.estimate, Eigen::EigenvaluesOnly);
  result.min_eigenvalue = eig.eigenvalues().minCoeff();
  if (options.psd_repair && result.min_eigenvalue < 0.0) {
    result.estimate = psd_repair(result.estimate);
    result.psd_repaired = true;
  }
  return result;
}

void check_axes_key(const std::string& axes, int p) {
  if (static_cast<int>(axes.size()) != p) {
    raise(Errc::LengthMismatch, "setting axes=" + axes + " does not have " + std::to_string(p) + " characters");
  }
  for (char c : axes) axis_director(c);
}

}  // namespace

ReconstructionResult reconstruct_state(int p, const std::map<std::string, FrequencyTable>& tables,
                                       const ReconstructionOptions& options) {
  require_qubits(p);
  std::map<std::string, SettingData> data;
  for (const auto& [axes, table] : tables) {
    check_axes_key(axes, p);
    if (table.size() != dim_of(p)) raise(Errc::LengthMismatch, "table for axes=" + axes + " has wrong length");
    if (table.total() == 0) raise(Errc::ShotCountZero, "table for axes=" + axes + " has no shots");
    SettingData d;
    for (auto n : table.counts()) d.weights.push_back(static_cast<double>(n));
    d.total = static_cast<double>(table.total());
    data.emplace(axes, std::move(d));
  }
  return invert(p, data, options);
}

ReconstructionResult reconstruct_state_exact(int p, const std::map<std::string, std::vector<double>>& distributions,
                                             const ReconstructionOptions& options) {
  require_qubits(p);
  std::map<std::string, SettingData> data;
  for (const auto& [axes, probs] : distributions) {
    check_axes_key(axes, p);
    if (probs.size() != dim_of(p)) raise(Errc::LengthMismatch, "distribution for axes=" + axes + " has wrong length");
    data.emplace(axes, SettingData{probs, 1.0});
  }
  return invert(p, data, options);
}

ComplexMatrix psd_repair(const ComplexMatrix& estimate) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(estimate);
  RealVector lambda = eig.eigenvalues().cwiseMax(0.0);
  const double sum = lambda.sum();
  if (sum <= 0.0) raise(Errc::InvalidDensity, "estimate has no positive spectrum to keep");
  lambda /= sum;
  const ComplexMatrix& v = eig.eigenvectors();
  ComplexMatrix out = v * lambda.cast<Complex>().asDiagonal() * v.adjoint();
  return (out + out.adjoint()) / 2.0;
}

std::vector<SettingLine> campaign_settings(int p, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) raise(Errc::ShotCountZero, "a campaign needs at least one shot per setting");
  const RandomStream root(seed);
  std::vector<SettingLine> out;
  const auto axes = axis_settings(p);
  for (std::size_t i = 0; i < axes.size(); ++i) out.push_back({axes[i], shots, root.substream(i).seed()});
  return out;
}

void write_settings(std::ostream& out, const std::vector<SettingLine>& settings) {
  for (const auto& s : settings) out << "axes=" << s.axes << " shots=" << s.shots << " seed=" << s.seed << '\n';
}

std::vector<SettingLine> read_settings(std::istream& in, const std::string& source) {
  std::vector<SettingLine> out;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) {
    raise(Errc::ParseError, source + ":" + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::istringstream fields{std::string(body)};
    std::string token;
    SettingLine s;
    bool have_axes = false, have_shots = false, have_seed = false;
    while (fields >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) fail("malformed field '" + token + "'");
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      if (key == "axes") {
        if (value.empty() || value.find_first_not_of("xyz") != std::string::npos) fail("axes must use x, y, z");
        s.axes = value;
        have_axes = true;
      } else if (key == "shots") {
        if (!parse_u64(value, s.shots)) fail("bad shots value '" + value + "'");
        have_shots = true;
      } else if (key == "seed") {
        if (!parse_u64(value, s.seed)) fail("bad seed value '" + value + "'");
        have_seed = true;
      } else {
        fail("unknown field '" + key + "'");
      }
    }
    if (!have_axes || !have_shots || !have_seed) fail("line needs axes=, shots= and seed=");
    out.push_back(std::move(s));
  }
  return out;
}

std::map<std::string, SeriesResult> run_campaign(const DensityMatrix& rho, const std::vector<SettingLine>& settings) {
  std::map<std::string, SeriesResult> out;
  for (const auto& s : settings) {
    const auto counters = CounterConfiguration::from_axes(s.axes);
    if (rho.dim() != static_cast<int>(dim_of(counters.qubits()))) {
      raise(Errc::DimensionMismatch, "setting axes=" + s.axes + " does not match the state");
    }
    RandomStream rng(s.seed);
    out.emplace(s.axes, measure_series(rho, counter_roi(counters), s.shots, rng, s.axes));
  }
  return out;
}

std::string subset_label(PauliCode code, int p) {
  std::string out;
  for (int q = 0; q < p; ++q) {
    if (const int d = pauli_digit(code, q)) {
      if (!out.empty()) out += ',';
      out += std::to_string(q) + ':' + digit_axis(d);
    }
  }
  return out;
}

void write_coefficient_report(std::ostream& out, const PauliCoefficients& c) {
  for (PauliCode code : canonical_codes(c.qubits()))
    out << "S=" << subset_label(code, c.qubits()) << " d=" << format_real(c[code]) << '\n';
}

ComplexMatrix max_entangling_unitary(const std::vector<double>& j, const std::vector<double>& phi) {
  if (j.size() != phi.size()) raise(Errc::LengthMismatch, "j and phi lists differ in length");
  const std::size_t half = j.size();
  if (half == 0 || (half & (half - 1)) != 0 || half > (std::size_t{1} << (kMaxQubits - 1))) {
    raise(Errc::LengthMismatch, "list length must be 2^(p-1)");
  }
  const auto n = static_cast<Eigen::Index>(2 * half);
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < half; ++k) {
    const auto a = static_cast<Eigen::Index>(k);
    const Eigen::Index b = n - 1 - a;
    const double c = std::cos(j[k]);
    const double s = std::sin(j[k]);
    u(a, a) = c;
    u(b, b) = c;
    u(b, a) = kI * s * std::polar(1.0, phi[k]);
    u(a, b) = kI * s * std::polar(1.0, -phi[k]);
  }
  return u;
}

TransformReport classify_multiqubit_transform(const ComplexMatrix& u) {
  const int p = qubit_count(static_cast<int>(u.rows()));
  if (!is_unitary(u, tol::unitary())) raise(Errc::NotUnitary, "classify_multiqubit_transform: matrix is not unitary");
  TransformReport report;

  const std::uint64_t n = dim_of(p);
  for (int q = 0; q < p; ++q) {
    // Realign across the cut {q} | rest.
    const std::uint64_t low = (std::uint64_t{1} << q) - 1;
    auto join = [&](int b, std::uint64_t r) { return (r & low) | (std::uint64_t(b) << q) | ((r & ~low) << 1); };
    const auto rest = static_cast<Eigen::Index>(n / 2);
    ComplexMatrix realigned(4, rest * rest);
    for (int b = 0; b < 2; ++b)
      for (int b2 = 0; b2 < 2; ++b2)
        for (Eigen::Index r = 0; r < rest; ++r)
          for (Eigen::Index r2 = 0; r2 < rest; ++r2)
            realigned(b + 2 * b2, r + r2 * rest) =
                u(static_cast<Eigen::Index>(join(b, static_cast<std::uint64_t>(r))),
                  static_cast<Eigen::Index>(join(b2, static_cast<std::uint64_t>(r2))));
    Eigen::JacobiSVD<ComplexMatrix> svd(realigned);
    const RealVector sv = svd.singularValues();
    if (sv.size() > 1 && sv(0) > 0.0) report.schmidt_ratio = std::max(report.schmidt_ratio, sv(1) / sv(0));
  }

  const ComplexMatrix j = generator_from_unitary(u);
  double weight = 0.0;
  for (PauliCode code = 1; code < pow4(p); ++code) {
    if (pauli_weight(code, p) < 2) continue;
    const double coeff = pauli_expectation(j, code, p) / static_cast<double>(n);
    weight += coeff * coeff;
  }
  report.cross_weight = std::sqrt(weight);

  double off = 0.0;
  for (Eigen::Index r = 0; r < u.rows(); ++r)
    for (Eigen::Index c = 0; c < u.cols(); ++c)
      if (r != c) off = std::max(off, std::abs(u(r, c)));
  if (off <= tol::commute())
    report.cls = TransformClass::Stabilizer;
  else if (report.schmidt_ratio <= tol::rank_relative())
    report.cls = TransformClass::Local;
  else
    report.cls = TransformClass::Entangling;
  return report;
}

}  // namespace qp
