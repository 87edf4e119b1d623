#include "suction/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "suction/image_io.hpp"

namespace suction {

PipelineConfig default_config() { return PipelineConfig{}; }

namespace {

bool in_unit_interval(double p) { return p >= 0.0 && p <= 1.0; }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::optional<std::string> validate_config(const PipelineConfig& cfg) {
  if (!in_unit_interval(cfg.p_det_tp)) return "p_det_tp out of [0,1]";
  if (!in_unit_interval(cfg.p_det_fp)) return "p_det_fp out of [0,1]";
  if (!in_unit_interval(cfg.p_prior)) return "p_prior out of [0,1]";
  if (!in_unit_interval(cfg.p_bb)) return "p_bb out of [0,1]";
  if (!in_unit_interval(cfg.p_nb_k)) return "p_nb_k out of [0,1]";
  if (!in_unit_interval(cfg.p_nb_nk)) return "p_nb_nk out of [0,1]";
  if (!(cfg.p_det_tp > cfg.p_det_fp)) return "detector not informative";
  if (!(cfg.p_bb >= cfg.p_nb_k && cfg.p_nb_k >= cfg.p_nb_nk)) return "transition ordering violated";
  if (cfg.gamma_o < 0.0) return "gamma_o negative";
  if (cfg.gamma_B < 0) return "gamma_B negative";
  if (cfg.gamma_r < 0) return "gamma_r negative";
  if (cfg.gamma_T < 0) return "gamma_T negative";
  if (cfg.r < 0.0) return "r negative";
  if (!(cfg.r * cfg.gamma_r < 1.0)) return "reward exceeds unit edge cost";
  if (cfg.connectivity != 4 && cfg.connectivity != 8) return "connectivity must be 4 or 8";
  if (cfg.flow_downscale < 1) return "flow_downscale not positive";
  return std::nullopt;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file: " + path.string());

  PipelineConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw io_error(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    std::istringstream vs(value);

    auto parse = [&](auto& slot) {
      vs >> slot;
      if (vs.fail()) {
        throw io_error(path.string() + ":" + std::to_string(lineno) + ": bad value for " + key);
      }
    };

    if (key == "gamma_o") parse(cfg.gamma_o);
    else if (key == "gamma_B") parse(cfg.gamma_B);
    else if (key == "gamma_r") parse(cfg.gamma_r);
    else if (key == "gamma_T") parse(cfg.gamma_T);
    else if (key == "r") parse(cfg.r);
    else if (key == "p_det_tp") parse(cfg.p_det_tp);
    else if (key == "p_det_fp") parse(cfg.p_det_fp);
    else if (key == "p_prior") parse(cfg.p_prior);
    else if (key == "p_bb") parse(cfg.p_bb);
    else if (key == "p_nb_k") parse(cfg.p_nb_k);
    else if (key == "p_nb_nk") parse(cfg.p_nb_nk);
    else if (key == "connectivity") parse(cfg.connectivity);
    else if (key == "flow_downscale") parse(cfg.flow_downscale);
    else {
      throw io_error(path.string() + ":" + std::to_string(lineno) + ": unknown key " + key);
    }
  }
  return cfg;
}

void save_config(const std::filesystem::path& path, const PipelineConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write config file: " + path.string());
  out << "gamma_o=" << format_double(cfg.gamma_o) << '\n'
      << "gamma_B=" << cfg.gamma_B << '\n'
      << "gamma_r=" << cfg.gamma_r << '\n'
      << "gamma_T=" << cfg.gamma_T << '\n'
      << "r=" << format_double(cfg.r) << '\n'
      << "p_det_tp=" << format_double(cfg.p_det_tp) << '\n'
      << "p_det_fp=" << format_double(cfg.p_det_fp) << '\n'
      << "p_prior=" << format_double(cfg.p_prior) << '\n'
      << "p_bb=" << format_double(cfg.p_bb) << '\n'
      << "p_nb_k=" << format_double(cfg.p_nb_k) << '\n'
      << "p_nb_nk=" << format_double(cfg.p_nb_nk) << '\n'
      << "connectivity=" << cfg.connectivity << '\n'
      << "flow_downscale=" << cfg.flow_downscale << '\n';
}

}  // namespace suction
