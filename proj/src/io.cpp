#include "lk/io.hpp"

#include <cstdio>
#include <fstream>
#include <functional>

namespace lk {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string csv_rows(size_t n, size_t n_psibar, const std::vector<double>& times,
                     const std::function<const cxd*(size_t)>& c_row,
                     const std::function<const cxd*(size_t)>& p_row) {
  std::string out = "t";
  for (size_t k = 1; k <= n; ++k)
    out += ",re_c" + std::to_string(k) + ",im_c" + std::to_string(k);
  for (size_t k = 1; k <= n_psibar; ++k)
    out += ",re_psibar" + std::to_string(k) + ",im_psibar" + std::to_string(k);
  out += "\n";
  for (size_t i = 0; i < times.size(); ++i) {
    out += fmt17(times[i]);
    const cxd* c = c_row(i);
    for (size_t k = 0; k < n; ++k)
      out += "," + fmt17(c[k].real()) + "," + fmt17(c[k].imag());
    if (n_psibar) {
      const cxd* p = p_row(i);
      for (size_t k = 0; k < n_psibar; ++k)
        out += "," + fmt17(p[k].real()) + "," + fmt17(p[k].imag());
    }
    out += "\n";
  }
  return out;
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj) {
  const size_t n = traj.samples.empty() ? 0 : traj.samples.front().c.size();
  const size_t np = traj.has_momenta() ? n : 0;
  std::vector<double> times;
  times.reserve(traj.samples.size());
  for (const auto& s : traj.samples) times.push_back(s.t);
  return csv_rows(
      n, np, times, [&](size_t i) { return traj.samples[i].c.data(); },
      [&](size_t i) { return traj.samples[i].psibar.data(); });
}

std::string geodesic_csv(const GeodesicTrajectory& traj) {
  const size_t n = traj.samples.empty() ? 0 : traj.samples.front().state.c.size();
  std::vector<double> times;
  times.reserve(traj.samples.size());
  for (const auto& s : traj.samples) times.push_back(s.t);
  return csv_rows(
      n, n, times, [&](size_t i) { return traj.samples[i].state.c.data(); },
      [&](size_t i) { return traj.samples[i].state.psibar.data(); });
}

nlohmann::json conserved_report_json(const ConservedReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : report.entries) {
    nlohmann::json series = nlohmann::json::array();
    for (const cxd& v : e.series) series.push_back({v.real(), v.imag()});
    entries.push_back({{"k", e.k},
                       {"series", std::move(series)},
                       {"max_abs_drift", e.max_abs_drift},
                       {"max_rel_drift", e.max_rel_drift}});
  }
  return {{"driving", report.driving},
          {"dt", report.dt},
          {"times", report.times},
          {"conserved", std::move(entries)}};
}

nlohmann::json ensemble_report_json(const MartingaleReport& report) {
  nlohmann::json cps = nlohmann::json::array();
  for (const auto& cp : report.checkpoints)
    cps.push_back({{"t", cp.t},
                   {"mean_re", cp.mean.real()},
                   {"mean_im", cp.mean.imag()},
                   {"stderr", cp.stderr_},
                   {"n_alive", cp.n_alive}});
  return {{"kappa", report.kappa},
          {"c", report.cw.c},
          {"h", report.cw.h},
          {"checkpoints", std::move(cps)},
          {"swallowed_fraction", report.swallowed_fraction}};
}

uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("cannot open for writing: " + path);
  os.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!os) throw std::ios_base::failure("write failed: " + path);
}

}  // namespace lk
