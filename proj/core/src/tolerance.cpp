#include "qportrait/tolerance.hpp"

#include <cstdlib>
#include <string>

namespace qp::tol {

namespace {

double read_scale() noexcept {
  const char* raw = std::getenv("QP_TOLERANCE_SCALE");
  if (raw == nullptr || *raw == '\0') return 1.0;
  char* end = nullptr;
  const double value = std::strtod(raw, &end);
  if (end == raw || !(value > 0.0)) return 1.0;
  return value;
}

}  // namespace

double scale() noexcept {
  static const double value = read_scale();
  return value;
}

}  // namespace qp::tol
