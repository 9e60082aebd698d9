#pragma once

// CSV writers. Comma separated, '.' decimal point, LF line endings, one
// header line; doubles carry 17 significant digits.

#include <string>
#include <vector>

#include "aniso/analysis.hpp"
#include "aniso/greedy.hpp"

namespace aniso {

inline constexpr const char* kTraceCsvHeader =
    "n,global_error,max_leaf_error,max_diameter,sigma_mean,sigma_max,sigma_fraction_above";
inline constexpr const char* kConvergenceCsvHeader =
    "n,error,product,target,ratio,max_diameter";
inline constexpr const char* kSigmaCsvHeader =
    "level,triangles,sigma_mean,sigma_max,fraction_above,mean_sigma_r0,bound";

std::string trace_csv(const std::vector<TraceRecord>& trace);
std::string convergence_csv(const std::vector<ConvergencePoint>& points);
std::string sigma_csv(const std::vector<SigmaStats>& stats);

}  // namespace aniso
