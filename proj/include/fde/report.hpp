#ifndef FDE_REPORT_HPP
#define FDE_REPORT_HPP

#include <string>
#include <vector>

#include "fde/analysis.hpp"
#include "fde/hypothesis.hpp"
#include "fde/scenario.hpp"
#include "fde/solver.hpp"

namespace fde {

// stable 17-significant-digit rendering, locale independent
std::string fmt17(double v);

// write-then-rename so concurrent sweep rows never expose partial files
void write_text_atomic(const std::string& path, const std::string& content);

std::string render_verdict(const TheoremVerdict& v);
std::string render_solve(const SolveResult& res, bool extended, double reach,
                         bool extension_complete);
std::string render_properties(const PropertyReport& rep);

// delimited text, header "t,u,du"; thinned to max_rows knots by uniform
// subsampling unless full density is requested
void write_trajectory(const std::string& path, const Trajectory& traj, std::size_t max_rows,
                      bool full_density);
Trajectory read_trajectory(const std::string& path);

}  // namespace fde

#endif
