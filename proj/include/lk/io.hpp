#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "lk/evolution.hpp"
#include "lk/geodesic.hpp"
#include "lk/sle.hpp"

namespace lk {

/// Doubles with 17 significant digits: lossless round trips in text form.
std::string fmt17(double v);

/// CSV with header "t,re_c1,im_c1,...[,re_psibar1,im_psibar1,...]"; one row
/// per sample, comma separator, LF line endings.
std::string trajectory_csv(const Trajectory& traj);
std::string geodesic_csv(const GeodesicTrajectory& traj);

/// One object per conserved quantity: {"k", "series", "max_abs_drift",
/// "max_rel_drift"}, gathered under "conserved" with run metadata.
nlohmann::json conserved_report_json(const ConservedReport& report);

/// {"kappa","c","h","checkpoints":[{"t","mean_re","mean_im","stderr",
///  "n_alive"}],"swallowed_fraction"}.
nlohmann::json ensemble_report_json(const MartingaleReport& report);

uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(uint64_t h);

/// Throws std::ios_base::failure on failure to create or write.
void write_text_file(const std::string& path, std::string_view content);

}  // namespace lk
