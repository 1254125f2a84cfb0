#include "sosc/run_config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sosc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& s) {
  const std::string t = trim(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (used != t.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  const double v = parse_real(s);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw std::invalid_argument("not an integer: '" + s + "'");
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!trim(item).empty()) out.push_back(trim(item));
  }
  return out;
}

}  // namespace

cplx parse_complex(const std::string& s) {
  std::string t = trim(s);
  if (t.empty()) throw std::invalid_argument("empty complex number");
  if (t.back() != 'i') return parse_real(t);
  t.pop_back();
  // Split at the last sign that is not an exponent sign or the leading sign.
  for (std::size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      const std::string im = t.substr(i);
      return {parse_real(t.substr(0, i)), im == "+" || im == "-" ? (im == "+" ? 1.0 : -1.0) : parse_real(im)};
    }
  }
  if (t.empty() || t == "+" || t == "-") return {0.0, t == "-" ? -1.0 : 1.0};
  return {0.0, parse_real(t)};
}

std::vector<double> parse_real_list(const std::string& s) {
  std::vector<double> v;
  for (const auto& item : split(s, ',')) v.push_back(parse_real(item));
  return v;
}

std::vector<cplx> parse_complex_list(const std::string& s) {
  std::vector<cplx> v;
  for (const auto& item : split(s, ',')) v.push_back(parse_complex(item));
  return v;
}

std::string format_complex(cplx z) {
  char buf[80];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  }
  return buf;
}

FrequencyProfile RunConfig::frequency_profile() const {
  if (profile == "zero") return FrequencyProfile::zero();
  if (profile.rfind("constant:", 0) == 0) return FrequencyProfile::constant(parse_real(profile.substr(9)));
  if (profile.rfind("csv:", 0) == 0) return FrequencyProfile::load_csv(profile.substr(4));
  throw std::invalid_argument("profile: expected zero, constant:<omega> or csv:<path>, got '" + profile + "'");
}

std::vector<cplx> RunConfig::perelomov_labels() const {
  if (!zs.empty()) return zs;
  return {1.0 / std::sqrt(2.0 * params().k + 1.0)};
}

void RunConfig::validate() const {
  if (!(g > -0.25) || !std::isfinite(g)) throw std::invalid_argument("g: need g > -1/4");
  if (m < 0) throw std::invalid_argument("m: need m >= 0");
  if (times.empty()) throw std::invalid_argument("times: need at least one time");
  for (double t : times) {
    if (!std::isfinite(t)) throw std::invalid_argument("times: non-finite entry");
  }
  for (cplx l : lambdas) {
    if (!std::isfinite(l.real()) || !std::isfinite(l.imag())) throw std::invalid_argument("lambda: non-finite");
  }
  for (cplx z : zs) {
    if (!(std::abs(z) < 1.0)) throw std::invalid_argument("z: need |z| < 1");
  }
  try {
    grid.validate();
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("grid: ") + e.what());
  }
  if (!(2.0 * params().k - 1.0 > 0.0)) throw std::invalid_argument("g: Darboux branch needs k > 1/2");
  frequency_profile();
}

RunConfig load_run_config(const std::filesystem::path& file, RunConfig base) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(file.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::runtime_error("config " + file.string() + ": " + e.what());
  }
  RunConfig c = std::move(base);
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw std::invalid_argument("config " + file.string() + ": key '" + section + "' outside a section");
    for (const auto& [key, node] : body) {
      const std::string v = node.get_value<std::string>();
      const std::string where = "config " + file.string() + ": [" + section + "] " + key;
      try {
        if (section == "physics" && key == "g") c.g = parse_real(v);
        else if (section == "physics" && key == "m") c.m = parse_int(v);
        else if (section == "physics" && key == "convention") c.convention = parse_convention(trim(v));
        else if (section == "physics" && key == "profile") c.profile = trim(v);
        else if (section == "grid" && key == "max") c.grid.x_max = parse_real(v);
        else if (section == "grid" && key == "n") c.grid.n = parse_int(v);
        else if (section == "grid" && key == "x_min") c.grid.x_min = parse_real(v);
        else if (section == "grid" && key == "knee") c.grid.knee = parse_real(v);
        else if (section == "grid" && key == "spacing") {
          const std::string s = trim(v);
          if (s == "log") c.grid.spacing = GridSpec::Spacing::log_near_zero;
          else if (s == "uniform") c.grid.spacing = GridSpec::Spacing::uniform;
          else throw std::invalid_argument("expected log or uniform");
        } else if (section == "labels" && key == "lambda") c.lambdas = parse_complex_list(v);
        else if (section == "labels" && key == "z") c.zs = parse_complex_list(v);
        else if (section == "output" && key == "dir") c.output_dir = trim(v);
        else if (section == "run" && key == "times") c.times = parse_real_list(v);
        else throw std::invalid_argument("unknown key");
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(where + ": " + e.what());
      }
    }
  }
  return c;
}

}  // namespace sosc
