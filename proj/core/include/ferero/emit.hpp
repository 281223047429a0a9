#ifndef FERERO_EMIT_HPP_
#define FERERO_EMIT_HPP_

#include <filesystem>
#include <vector>

#include "ferero/bench.hpp"
#include "ferero/config.hpp"
#include "ferero/solvers.hpp"

namespace ferero {

struct EmitOptions {
  std::filesystem::path out_dir;
  bool plot = false;
};

/// Thrown on filesystem failures; carries the offending path in the message.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

/// Writes <prefix>.csv (trajectory), <prefix>_summary.json, and optionally
/// <prefix>_scatter.svg. Returns the created paths.
std::vector<std::filesystem::path> emit_run(const RunReport& report,
                                            const ExperimentSpec& spec,
                                            const EmitOptions& opts);

/// Writes one <prefix>_NN.csv per run plus <prefix>_summary.json and the
/// optional scatter. Failed runs get no trajectory file; their error string
/// appears in the summary.
std::vector<std::filesystem::path> emit_suite(const SuiteReport& suite,
                                              const ExperimentSpec& spec,
                                              const EmitOptions& opts);

/// Trajectory table "t,f_1..f_M,norm_d,g_plus_l1,h_l1,kkt" with one row per
/// recorded iterate, full double precision.
std::string trajectory_csv(const RunReport& report);

}  // namespace ferero

#endif  // FERERO_EMIT_HPP_
