#include "ferero/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ferero/metrics.hpp"

namespace ferero {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << body;
  if (!out) throw IoError("write failed: " + path.string());
}

Json final_block(const RunReport& r) {
  Json f = Json::array();
  for (Index i = 0; i < r.f_final.size(); ++i) f.push_back(r.f_final(i));
  return Json{{"f", std::move(f)},
              {"kkt", r.final_kkt},
              {"eq_violation_l1", r.final_eq_violation_l1},
              {"ineq_violation_l1", r.final_ineq_violation_l1},
              {"iterations", r.iterations_used},
              {"wall_seconds", r.wall_seconds}};
}

// Minimal self-contained SVG scatter of final objective points, with the
// preference rays dashed and the analytic front overlaid for the synthetic
// benchmark.
std::string scatter_svg(const std::vector<Vector>& finals,
                        const std::vector<Vector>& rays, bool front_overlay) {
  constexpr double kSize = 480.0;
  constexpr double kMargin = 48.0;
  double hi = 1.0;
  for (const auto& p : finals) hi = std::max({hi, p(0), p(1)});
  hi *= 1.05;

  const auto sx = [&](double x) { return kMargin + (x / hi) * kSize; };
  const auto sy = [&](double y) { return kMargin + kSize - (y / hi) * kSize; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << kSize + 2 * kMargin << "\" height=\"" << kSize + 2 * kMargin
      << "\" viewBox=\"0 0 " << kSize + 2 * kMargin << " "
      << kSize + 2 * kMargin << "\">\n";
  svg << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
      << kSize << "\" height=\"" << kSize
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  svg << "<text x=\"" << kMargin + kSize / 2 << "\" y=\""
      << kSize + 2 * kMargin - 10
      << "\" text-anchor=\"middle\" font-size=\"14\">f1</text>\n";
  svg << "<text x=\"14\" y=\"" << kMargin + kSize / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 14 "
      << kMargin + kSize / 2 << ")\">f2</text>\n";

  if (front_overlay) {
    svg << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" "
           "points=\"";
    for (int k = 0; k <= 400; ++k) {
      const double s = -1.0 + 2.0 * k / 400.0;
      const double f1 = 1.0 - std::exp(-(s - 1.0) * (s - 1.0));
      const double f2 = 1.0 - std::exp(-(s + 1.0) * (s + 1.0));
      svg << sx(f1) << "," << sy(f2) << " ";
    }
    svg << "\"/>\n";
  }
  for (const auto& r : rays) {
    const double scale = hi / std::max(std::abs(r(0)), std::abs(r(1)));
    svg << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\""
        << sx(r(0) * scale) << "\" y2=\"" << sy(r(1) * scale)
        << "\" stroke=\"#888\" stroke-dasharray=\"6,4\"/>\n";
  }
  for (const auto& p : finals) {
    svg << "<circle cx=\"" << sx(p(0)) << "\" cy=\"" << sy(p(1))
        << "\" r=\"4.5\" fill=\"#2980b9\" stroke=\"#1a5276\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<Vector> preference_rays_of(const ExperimentSpec& spec) {
  std::vector<Vector> rays;
  const auto add = [&](const PreferenceSpec& p) {
    if (p.constraint_kind == PreferenceSpec::ConstraintKind::ray)
      rays.push_back(p.ray);
  };
  if (spec.preference) add(*spec.preference);
  if (spec.suite)
    for (const auto& p : spec.suite->expand()) add(p);
  return rays;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory: " + dir.string());
}

}  // namespace

std::string trajectory_csv(const RunReport& report) {
  std::ostringstream out;
  const Index m = report.f_final.size();
  out << "t";
  for (Index i = 1; i <= m; ++i) out << ",f_" << i;
  out << ",norm_d,g_plus_l1,h_l1,kkt\n";
  for (const auto& rec : report.trajectory) {
    out << rec.t;
    for (Index i = 0; i < m; ++i) out << "," << fmt(rec.f(i));
    out << "," << fmt(rec.norm_d) << "," << fmt(rec.ineq_violation_l1) << ","
        << fmt(rec.eq_violation_l1) << "," << fmt(rec.kkt) << "\n";
  }
  return out.str();
}

std::vector<std::filesystem::path> emit_run(const RunReport& report,
                                            const ExperimentSpec& spec,
                                            const EmitOptions& opts) {
  ensure_dir(opts.out_dir);
  std::vector<std::filesystem::path> files;
  const auto& prefix = spec.output.prefix;

  const auto csv_path = opts.out_dir / (prefix + ".csv");
  write_file(csv_path, trajectory_csv(report));
  files.push_back(csv_path);

  Json summary;
  summary["config"] = Json::parse(serialize_config(spec));
  summary["final"] = final_block(report);
  summary["hypervolume"] = hypervolume({report.f_final}, spec.hv_ref);
  const auto summary_path = opts.out_dir / (prefix + "_summary.json");
  write_file(summary_path, summary.dump(2) + "\n");
  files.push_back(summary_path);

  if (opts.plot && report.f_final.size() == 2) {
    const auto svg_path = opts.out_dir / (prefix + "_scatter.svg");
    write_file(svg_path,
               scatter_svg({report.f_final}, preference_rays_of(spec),
                           spec.problem.kind == "synthetic_concave"));
    files.push_back(svg_path);
  }
  return files;
}

std::vector<std::filesystem::path> emit_suite(const SuiteReport& suite,
                                              const ExperimentSpec& spec,
                                              const EmitOptions& opts) {
  ensure_dir(opts.out_dir);
  std::vector<std::filesystem::path> files;
  const auto& prefix = spec.output.prefix;

  for (std::size_t i = 0; i < suite.runs.size(); ++i) {
    if (!suite.runs[i].ok()) continue;
    char idx[16];
    std::snprintf(idx, sizeof(idx), "%02zu", i);
    const auto csv_path = opts.out_dir / (prefix + "_" + idx + ".csv");
    write_file(csv_path, trajectory_csv(*suite.runs[i].report));
    files.push_back(csv_path);
  }

  Json runs = Json::array();
  std::vector<Vector> finals;
  for (const auto& outcome : suite.runs) {
    if (outcome.ok()) {
      runs.push_back(final_block(*outcome.report));
      finals.push_back(outcome.report->f_final);
    } else {
      runs.push_back(Json{{"error", outcome.error}});
    }
  }
  Json alignments = Json::array();
  for (double a : suite.alignments)
    alignments.push_back(std::isfinite(a) ? Json(a) : Json(nullptr));

  Json summary;
  summary["config"] = Json::parse(serialize_config(spec));
  summary["runs"] = std::move(runs);
  summary["aggregate"] = Json{{"hypervolume", suite.hypervolume},
                              {"mean_kkt", suite.mean_kkt},
                              {"alignments", std::move(alignments)}};
  const auto summary_path = opts.out_dir / (prefix + "_summary.json");
  write_file(summary_path, summary.dump(2) + "\n");
  files.push_back(summary_path);

  if (opts.plot && spec.hv_ref.size() == 2) {
    const auto svg_path = opts.out_dir / (prefix + "_scatter.svg");
    write_file(svg_path,
               scatter_svg(finals, preference_rays_of(spec),
                           spec.problem.kind == "synthetic_concave"));
    files.push_back(svg_path);
  }
  return files;
}

}  // namespace ferero
