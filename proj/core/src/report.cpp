#include "aniso/report.hpp"

#include <sstream>

#include "aniso/mesh_io.hpp"

namespace aniso {

namespace {

template <class T, class... Rest>
void row(std::ostringstream& os, const T& first, const Rest&... rest) {
  if constexpr (std::is_floating_point_v<T>) {
    os << format_double(first);
  } else {
    os << first;
  }
  if constexpr (sizeof...(rest) > 0) {
    os << ',';
    row(os, rest...);
  } else {
    os << '\n';
  }
}

}  // namespace

std::string trace_csv(const std::vector<TraceRecord>& trace) {
  std::ostringstream os;
  os << kTraceCsvHeader << '\n';
  for (const auto& r : trace) {
    row(os, r.n, r.global_error, r.max_leaf_error, r.max_diameter, r.sigma_mean, r.sigma_max,
        r.sigma_fraction_above);
  }
  return os.str();
}

std::string convergence_csv(const std::vector<ConvergencePoint>& points) {
  std::ostringstream os;
  os << kConvergenceCsvHeader << '\n';
  for (const auto& p : points) row(os, p.n, p.error, p.product, p.target, p.ratio, p.max_diameter);
  return os.str();
}

std::string sigma_csv(const std::vector<SigmaStats>& stats) {
  std::ostringstream os;
  os << kSigmaCsvHeader << '\n';
  for (const auto& s : stats) {
    row(os, s.level, s.count, s.mean, s.max, s.fraction_above, s.mean_pow_r0, s.bound);
  }
  return os.str();
}

}  // namespace aniso
