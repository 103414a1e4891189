#include "lk/driving.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lk {

namespace {

cxd parse_complex(const nlohmann::json& v, const char* what) {
  if (v.is_number()) return cxd(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return cxd(v[0].get<double>(), v[1].get<double>());
  throw std::invalid_argument(std::string(what) + ": expected number or [re, im] pair");
}

std::vector<cxd> parse_coeff_vector(const nlohmann::json& v, const char* what) {
  if (!v.is_array() || v.empty())
    throw std::invalid_argument(std::string(what) + ": expected non-empty coefficient array");
  std::vector<cxd> out;
  out.reserve(v.size());
  for (const auto& item : v) out.push_back(parse_complex(item, what));
  return out;
}

void require_keys(const nlohmann::json& spec, std::initializer_list<const char*> allowed) {
  for (auto it = spec.begin(); it != spec.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) throw std::invalid_argument("driving: unknown key \"" + it.key() + "\"");
  }
}

void check_normalization(const std::vector<std::vector<cxd>>& table, bool alternate) {
  if (alternate) return;
  for (const auto& p : table)
    if (p.at(0) != cxd(1.0, 0.0))
      throw std::invalid_argument("driving: normalized driver requires constant term 1");
}

void check_times(const std::vector<double>& times, size_t rows) {
  if (times.size() != rows)
    throw std::invalid_argument("driving: times and payload length mismatch");
  if (times.empty()) throw std::invalid_argument("driving: empty time table");
  for (size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("driving: times must be strictly increasing");
}

void check_uniform_order(const std::vector<std::vector<cxd>>& table) {
  for (const auto& row : table)
    if (row.size() != table.front().size())
      throw std::invalid_argument("driving: coefficient rows must share one order");
}

}  // namespace

TruncatedTaylor<cxd> kernel_series(double u, int order) {
  TruncatedTaylor<cxd> p(order);
  p.set(0, 1.0);
  for (int k = 1; k <= order; ++k) p.set(k, 2.0 * std::exp(cxd(0.0, -k * u)));
  return p;
}

DrivingFunction DrivingFunction::constant(std::vector<cxd> p, bool alternate) {
  if (p.empty()) throw std::invalid_argument("driving: empty coefficient list");
  DrivingFunction d;
  d.kind_ = DrivingKind::constant;
  d.alternate_ = alternate;
  d.order_ = static_cast<int>(p.size()) - 1;
  d.table_.push_back(std::move(p));
  check_normalization(d.table_, alternate);
  return d;
}

DrivingFunction DrivingFunction::piecewise(std::vector<double> times,
                                           std::vector<std::vector<cxd>> p, bool alternate) {
  check_times(times, p.size());
  if (p.empty()) throw std::invalid_argument("driving: empty payload");
  check_uniform_order(p);
  check_normalization(p, alternate);
  DrivingFunction d;
  d.kind_ = DrivingKind::piecewise;
  d.alternate_ = alternate;
  d.order_ = static_cast<int>(p.front().size()) - 1;
  d.times_ = std::move(times);
  d.table_ = std::move(p);
  return d;
}

DrivingFunction DrivingFunction::kernel(double u, int order) {
  if (order < 1) throw std::invalid_argument("driving: kernel order must be >= 1");
  DrivingFunction d;
  d.kind_ = DrivingKind::kernel;
  d.order_ = order;
  d.angles_ = {u};
  return d;
}

DrivingFunction DrivingFunction::kernel_table(std::vector<double> times, std::vector<double> u,
                                              int order) {
  if (order < 1) throw std::invalid_argument("driving: kernel order must be >= 1");
  check_times(times, u.size());
  DrivingFunction d;
  d.kind_ = DrivingKind::kernel;
  d.order_ = order;
  d.times_ = std::move(times);
  d.angles_ = std::move(u);
  return d;
}

DrivingFunction DrivingFunction::samples(std::vector<double> times,
                                         std::vector<std::vector<cxd>> p, bool alternate) {
  check_times(times, p.size());
  check_uniform_order(p);
  check_normalization(p, alternate);
  DrivingFunction d;
  d.kind_ = DrivingKind::samples;
  d.alternate_ = alternate;
  d.order_ = static_cast<int>(p.front().size()) - 1;
  d.times_ = std::move(times);
  d.table_ = std::move(p);
  return d;
}

DrivingFunction DrivingFunction::from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) throw std::invalid_argument("driving: expected a JSON object");
  if (!spec.contains("kind")) throw std::invalid_argument("driving: missing \"kind\"");
  const std::string kind = spec.at("kind").get<std::string>();
  const bool alternate = spec.value("alternate", false);

  if (kind == "constant") {
    require_keys(spec, {"kind", "p", "alternate"});
    if (!spec.contains("p")) throw std::invalid_argument("driving: constant kind needs \"p\"");
    return constant(parse_coeff_vector(spec.at("p"), "driving.p"), alternate);
  }
  if (kind == "piecewise" || kind == "samples") {
    require_keys(spec, {"kind", "times", "p", "alternate"});
    if (!spec.contains("times") || !spec.contains("p"))
      throw std::invalid_argument("driving: " + kind + " kind needs \"times\" and \"p\"");
    std::vector<double> times = spec.at("times").get<std::vector<double>>();
    std::vector<std::vector<cxd>> table;
    for (const auto& row : spec.at("p")) table.push_back(parse_coeff_vector(row, "driving.p"));
    return kind == "piecewise" ? piecewise(std::move(times), std::move(table), alternate)
                               : samples(std::move(times), std::move(table), alternate);
  }
  if (kind == "kernel") {
    require_keys(spec, {"kind", "order", "u"});
    if (!spec.contains("order") || !spec.contains("u"))
      throw std::invalid_argument("driving: kernel kind needs \"order\" and \"u\"");
    const int order = spec.at("order").get<int>();
    const auto& u = spec.at("u");
    if (u.is_number()) return kernel(u.get<double>(), order);
    if (u.is_object()) {
      require_keys(u, {"times", "values"});
      return kernel_table(u.at("times").get<std::vector<double>>(),
                          u.at("values").get<std::vector<double>>(), order);
    }
    throw std::invalid_argument("driving: kernel \"u\" must be a number or a table");
  }
  throw std::invalid_argument("driving: unknown kind \"" + kind + "\"");
}

double DrivingFunction::kernel_angle(double t) const {
  if (times_.empty()) return angles_.front();
  if (t <= times_.front()) return angles_.front();
  if (t >= times_.back()) return angles_.back();
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const size_t hi = static_cast<size_t>(it - times_.begin());
  const double t0 = times_[hi - 1], t1 = times_[hi];
  const double w = (t - t0) / (t1 - t0);
  return angles_[hi - 1] * (1.0 - w) + angles_[hi] * w;
}

std::vector<cxd> DrivingFunction::coefficients(double t) const {
  switch (kind_) {
    case DrivingKind::constant:
      return table_.front();
    case DrivingKind::piecewise: {
      if (t <= times_.front()) return table_.front();
      auto it = std::upper_bound(times_.begin(), times_.end(), t);
      return table_[static_cast<size_t>(it - times_.begin()) - 1];
    }
    case DrivingKind::samples: {
      if (t <= times_.front()) return table_.front();
      if (t >= times_.back()) return table_.back();
      auto it = std::upper_bound(times_.begin(), times_.end(), t);
      const size_t hi = static_cast<size_t>(it - times_.begin());
      const double w = (t - times_[hi - 1]) / (times_[hi] - times_[hi - 1]);
      std::vector<cxd> out(table_.front().size());
      for (size_t k = 0; k < out.size(); ++k)
        out[k] = table_[hi - 1][k] * (1.0 - w) + table_[hi][k] * w;
      return out;
    }
    case DrivingKind::kernel: {
      const auto s = kernel_series(kernel_angle(t), order_);
      return s.coeffs();
    }
  }
  throw std::logic_error("driving: unreachable kind");
}

TruncatedTaylor<cxd> DrivingFunction::series(double t, int min_order) const {
  std::vector<cxd> c = coefficients(t);
  const int target = std::max(order_, min_order);
  c.resize(static_cast<size_t>(target) + 1, cxd(0.0, 0.0));
  return TruncatedTaylor<cxd>(std::move(c));
}

cxd DrivingFunction::eval(cxd z, double t) const {
  if (kind_ == DrivingKind::kernel) {
    const cxd e = std::exp(cxd(0.0, kernel_angle(t)));
    return (e + z) / (e - z);
  }
  return eval_at(series(t), z);
}

std::vector<double> DrivingFunction::breakpoints() const {
  if (kind_ == DrivingKind::constant) return {};
  return times_;
}

std::string DrivingFunction::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case DrivingKind::constant: {
      os << "constant[";
      const auto& p = table_.front();
      for (size_t k = 0; k < p.size(); ++k) {
        if (k) os << ",";
        if (p[k].imag() == 0.0)
          os << p[k].real();
        else
          os << p[k].real() << (p[k].imag() < 0 ? "" : "+") << p[k].imag() << "i";
      }
      os << "]";
      break;
    }
    case DrivingKind::piecewise:
      os << "piecewise(" << table_.size() << " segments, order " << order_ << ")";
      break;
    case DrivingKind::samples:
      os << "samples(" << table_.size() << " knots, order " << order_ << ")";
      break;
    case DrivingKind::kernel:
      if (times_.empty())
        os << "kernel(u=" << angles_.front() << ", order " << order_ << ")";
      else
        os << "kernel(" << angles_.size() << " knots, order " << order_ << ")";
      break;
  }
  if (alternate_) os << " alternate";
  return os.str();
}

CaratheodoryResult caratheodory_check(const DrivingFunction& p, double t, int grid, double eps) {
  if (grid < 2) throw std::invalid_argument("caratheodory_check: grid must be >= 2");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("caratheodory_check: eps must lie in (0,1)");
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= grid; ++i) {
    const double r = (1.0 - eps) * static_cast<double>(i) / grid;
    for (int j = 0; j < grid; ++j) {
      const double th = 2.0 * std::numbers::pi * j / grid;
      const cxd z = std::polar(r, th);
      margin = std::min(margin, p.eval(z, t).real());
    }
  }
  return {margin > 0.0, margin};
}

}  // namespace lk
