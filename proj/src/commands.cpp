#include "sosc/commands.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "sosc/darboux.hpp"
#include "sosc/measures.hpp"

namespace sosc {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return f;
}

void close_out(std::ofstream& f, const std::filesystem::path& path) {
  f.close();
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

void write_metadata(std::ostream& os, const RunConfig& c) {
  const PhysParams p = c.params();
  os << "# g=" << g17(p.g) << "\n# k=" << g17(p.k) << "\n# m=" << c.m << "\n# convention=" << to_string(c.convention)
     << "\n# profile=" << c.profile << "\n# darboux=virtual-upper alpha=2k-1 (m is a configuration choice)\n";
}

// |psi|^2 of a family member, original or Darboux-transformed.
GridWave state(const std::string& family, bool transformed, cplx label, const RunConfig& c, const Envelope& env,
               std::shared_ptr<const RadialGrid> grid) {
  const PhysParams p = c.params();
  const bool bg = family == "bg";
  if (transformed) {
    const auto lab = bg ? TransformedLabel::bg(label) : TransformedLabel::perelomov(label);
    return transformed_state(lab, DarbouxConfig{c.m}, p, env, std::move(grid)).base;
  }
  return bg ? bg_state_closed(label, p, env, std::move(grid)) : perelomov_state(label, p, env, std::move(grid));
}

struct Job {
  std::string family;
  int index;
  cplx label;
};

std::vector<Job> jobs(const RunConfig& c) {
  std::vector<Job> j;
  for (std::size_t i = 0; i < c.lambdas.size(); ++i) j.push_back({"bg", static_cast<int>(i), c.lambdas[i]});
  const auto zs = c.perelomov_labels();
  for (std::size_t i = 0; i < zs.size(); ++i) j.push_back({"perelomov", static_cast<int>(i), zs[i]});
  return j;
}

// L2 distance between a(x) and b(x - s) on a uniform grid, b = 0 for x - s < x0.
struct ShiftMetric {
  RealArray a, b;
  double x0, h;

  double operator()(double s) const {
    const boost::math::interpolators::cardinal_cubic_b_spline<double> spline(b.data(), b.size(), x0, h);
    const double hi = x0 + h * (b.size() - 1);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const double y = x0 + h * i - s;
      const double bv = (y < x0 || y > hi) ? 0.0 : spline(y);
      const double d = a[i] - bv;
      sum += (i == 0 || i == a.size() - 1 ? 0.5 : 1.0) * d * d;
    }
    return std::sqrt(sum * h);
  }
};

}  // namespace

std::vector<DensityCurve> density_curves(const RunConfig& c) {
  c.validate();
  const auto grid = RadialGrid::make(c.grid);
  const FrequencyProfile prof = c.frequency_profile();
  std::vector<DensityCurve> out;
  for (const Job& j : jobs(c)) {
    for (bool tr : {false, true}) {
      for (double t : c.times) {
        const Envelope env = envelope_at(prof, t, c.convention);
        const GridWave w = state(j.family, tr, j.label, c, env, grid);
        out.push_back({j.family, tr, j.label, t, grid->points(), w.values.abs2()});
      }
    }
  }
  return out;
}

std::string density_file_name(const DensityCurve& d, int label_index) {
  return "density_" + d.family + (d.transformed ? "_darboux" : "_original") + "_l" + std::to_string(label_index) +
         "_t" + g17(d.t) + ".csv";
}

std::vector<std::filesystem::path> cmd_density(const RunConfig& c) {
  const auto curves = density_curves(c);
  const auto js = jobs(c);
  std::vector<std::filesystem::path> paths;
  // density_curves emits (job, transformed, t) in order.
  std::size_t idx = 0;
  for (const Job& j : js) {
    for (int tr = 0; tr < 2; ++tr) {
      for (std::size_t it = 0; it < c.times.size(); ++it, ++idx) {
        const DensityCurve& d = curves[idx];
        const auto path = c.output_dir / density_file_name(d, j.index);
        std::ofstream f = open_out(path);
        f << "# family=" << d.family << "\n# transformed=" << (d.transformed ? 1 : 0) << "\n# label="
          << format_complex(d.label) << "\n# t=" << g17(d.t) << "\n";
        write_metadata(f, c);
        f << "x,density\n";
        for (Eigen::Index i = 0; i < d.x.size(); ++i) f << g17(d.x[i]) << ',' << g17(d.density[i]) << '\n';
        close_out(f, path);
        paths.push_back(path);
      }
    }
  }
  return paths;
}

double LocalizationReport::sigma(const std::string& family, bool transformed, double t) const {
  for (const auto& r : rows) {
    if (r.family == family && r.transformed == transformed && r.t == t) return r.moments.sigma_x;
  }
  throw std::out_of_range("LocalizationReport: no row for " + family + " at t = " + g17(t));
}

LocalizationReport localization_report(const RunConfig& c) {
  c.validate();
  const auto grid = RadialGrid::make(c.grid);
  GridSpec us;
  us.spacing = GridSpec::Spacing::uniform;
  us.x_min = c.grid.x_min;
  us.x_max = std::min(c.grid.x_max, 30.0);
  us.n = 4096;
  const auto uniform = RadialGrid::make(us);
  const FrequencyProfile prof = c.frequency_profile();
  LocalizationReport rep;
  for (const Job& j : jobs(c)) {
    for (double t : c.times) {
      const Envelope env = envelope_at(prof, t, c.convention);
      for (bool tr : {false, true}) {
        rep.rows.push_back({j.family, tr, j.label, t, density_moments(state(j.family, tr, j.label, c, env, grid))});
      }
      ShiftMetric metric{state(j.family, true, j.label, c, env, uniform).values.abs2(),
                         state(j.family, false, j.label, c, env, uniform).values.abs2(), us.x_min,
                         uniform->points()[1] - uniform->points()[0]};
      // Coarse scan, then Brent around the best sample.
      double best = 0.0, best_v = metric(0.0);
      for (double s = -5.0; s <= 5.0; s += 0.05) {
        const double v = metric(s);
        if (v < best_v) best_v = v, best = s;
      }
      const auto r = boost::math::tools::brent_find_minima(metric, best - 0.05, best + 0.05, 40);
      rep.shifts.push_back({j.family, j.label, t, r.first, metric(0.0), r.second});
    }
  }
  return rep;
}

LocalizationReport cmd_localization(const RunConfig& c) {
  const LocalizationReport rep = localization_report(c);
  const auto p1 = c.output_dir / "localization.csv";
  std::ofstream f = open_out(p1);
  write_metadata(f, c);
  f << "family,transformed,label,t,norm,mean_x,sigma_x\n";
  for (const auto& r : rep.rows) {
    f << r.family << ',' << (r.transformed ? 1 : 0) << ',' << format_complex(r.label) << ',' << g17(r.t) << ','
      << g17(r.moments.norm) << ',' << g17(r.moments.mean_x) << ',' << g17(r.moments.sigma_x) << '\n';
  }
  close_out(f, p1);
  const auto p2 = c.output_dir / "shift.csv";
  std::ofstream g = open_out(p2);
  write_metadata(g, c);
  g << "family,label,t,best_shift,pre_shift_l2,post_shift_l2,ratio\n";
  for (const auto& s : rep.shifts) {
    g << s.family << ',' << format_complex(s.label) << ',' << g17(s.t) << ',' << g17(s.shift) << ',' << g17(s.pre)
      << ',' << g17(s.post) << ',' << g17(s.ratio()) << '\n';
  }
  close_out(g, p2);
  return rep;
}

CheckList cmd_moments(const RunConfig& c) {
  c.validate();
  const PhysParams p = c.params();
  const DarbouxConfig cfg{c.m};
  CheckList out;
  const auto path = c.output_dir / "moments.csv";
  std::ofstream f = open_out(path);
  write_metadata(f, c);
  f << "quantity,n,value,exact,rel_error\n";
  const auto emit = [&](const std::string& q, const MomentCheck& mc) {
    f << q << ',' << mc.n << ',' << g17(mc.value) << ',' << g17(mc.exact) << ',' << g17(mc.rel_error) << '\n';
    out.push_back({q + ".n=" + std::to_string(mc.n), mc.rel_error, 1e-5, CheckResult::Compare::at_most});
  };
  for (int n = 0; n <= 6; ++n) emit("f_moment", f_moment(n, p.k));
  for (int n = 0; n <= 6; ++n) emit("phi_moment", phi_moment(n, p.k, c.m));
  for (auto fam : {MeasureFamily::original_bg, MeasureFamily::transformed_bg, MeasureFamily::perelomov}) {
    for (int n = 0; n <= 6; ++n) {
      MomentCheck mc;
      mc.n = n;
      mc.value = identity_resolution_check(fam, n, n, p, cfg).real();
      mc.exact = 1.0;
      mc.rel_error = std::abs(mc.value - 1.0);
      emit("resolution_" + to_string(fam), mc);
    }
  }
  close_out(f, path);
  return out;
}

int cmd_verify(Suite s, const RunConfig& c, std::ostream& os, std::optional<double> tolerance) {
  const CheckList checks = run_suite(s, c, tolerance);
  int failed = 0;
  for (const auto& r : checks) {
    os << r.line() << '\n';
    if (!r.pass()) ++failed;
  }
  os.flush();
  return failed == 0 ? 0 : 1;
}

}  // namespace sosc
