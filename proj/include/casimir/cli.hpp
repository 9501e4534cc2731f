#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "casimir/boxes.hpp"
#include "casimir/errors.hpp"
#include "casimir/io.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/materials.hpp"
#include "casimir/pfa.hpp"
#include "casimir/stats.hpp"
#include "casimir/version.hpp"

// Command-line front end.  The CLI holds no physics: every emitted number is
// produced by one library operation.  Exit codes: 0 success, 2 configuration
// error, 3 ingestion error, 4 numerical non-convergence, 5 internal
// invariant breach.

namespace casimir::cli {

// ---- unit-suffixed scalars -------------------------------------------------
// File and flag values carry explicit unit suffixes; bare numbers are
// rejected for lengths, temperatures and energies.

inline double parse_length_nm(const std::string& text, const std::string& field) {
  const auto parse_with = [&](const std::string& suffix,
                              double factor) -> std::optional<double> {
    if (text.size() <= suffix.size() ||
        text.compare(text.size() - suffix.size(), suffix.size(), suffix) != 0) {
      return std::nullopt;
    }
    const std::string num = text.substr(0, text.size() - suffix.size());
    try {
      std::size_t pos = 0;
      const double v = std::stod(num, &pos);
      if (pos != num.size()) return std::nullopt;
      return v * factor;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };
  // Longest suffixes first so "nm" does not shadow "mm" etc.
  for (const auto& [suffix, factor] :
       std::vector<std::pair<std::string, double>>{
           {"nm", 1.0}, {"um", 1e3}, {"mm", 1e6}, {"m", 1e9}}) {
    if (auto v = parse_with(suffix, factor)) {
      if (!(*v > 0.0)) {
        throw config_error(field + ": length must be positive, got '" + text + "'");
      }
      return *v;
    }
  }
  throw config_error(field + ": expected a length with unit suffix (nm, um, mm, m), got '" +
                     text + "'");
}

inline double parse_temperature_k(const std::string& text, const std::string& field) {
  if (text.size() > 1 && text.back() == 'K') {
    const std::string num = text.substr(0, text.size() - 1);
    try {
      std::size_t pos = 0;
      const double v = std::stod(num, &pos);
      if (pos == num.size()) {
        if (v < 0.0) throw config_error(field + ": temperature must be >= 0");
        return v;
      }
    } catch (const config_error&) {
      throw;
    } catch (const std::exception&) {
    }
  }
  throw config_error(field + ": expected a temperature with K suffix, got '" + text + "'");
}

inline double parse_energy_ev(const std::string& text, const std::string& field) {
  const auto with_suffix = [&](const std::string& suffix,
                               double factor) -> std::optional<double> {
    if (text.size() <= suffix.size() ||
        text.compare(text.size() - suffix.size(), suffix.size(), suffix) != 0) {
      return std::nullopt;
    }
    const std::string num = text.substr(0, text.size() - suffix.size());
    try {
      std::size_t pos = 0;
      const double v = std::stod(num, &pos);
      if (pos != num.size()) return std::nullopt;
      return v * factor;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };
  if (auto v = with_suffix("meV", 1e-3)) return *v;
  if (auto v = with_suffix("eV", 1.0)) return *v;
  throw config_error(field + ": expected an energy with eV/meV suffix, got '" + text + "'");
}

// ---- model specifications --------------------------------------------------

// Model config file: `key = value` lines with # comments.
//   model = gp | drude
//   omega_p = 9eV
//   gamma = 0.035eV            (drude only)
//   oscillator = f_eV2, omega_eV, gamma_eV   (repeatable)
inline materials::PermittivityModel load_model_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ingest_error("cannot open model config " + path);
  std::string kind;
  std::optional<double> omega_p, gamma;
  std::vector<materials::Oscillator> oscillators;
  std::string line;
  while (std::getline(in, line)) {
    if (io::detail::is_comment_or_blank(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ingest_error(path + ": expected key = value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "model") {
      kind = value;
    } else if (key == "omega_p") {
      omega_p = parse_energy_ev(value, path + ": omega_p");
    } else if (key == "gamma") {
      gamma = parse_energy_ev(value, path + ": gamma");
    } else if (key == "oscillator") {
      auto fields = io::detail::split_csv_row(value);
      if (fields.size() != 3) {
        throw ingest_error(path + ": oscillator needs f, omega, gamma");
      }
      materials::Oscillator osc;
      osc.strength = io::detail::parse_field(fields[0], path + ": oscillator strength");
      osc.resonance = parse_energy_ev(fields[1], path + ": oscillator omega");
      osc.relaxation = parse_energy_ev(fields[2], path + ": oscillator gamma");
      osc.validate();
      oscillators.push_back(osc);
    } else {
      throw ingest_error(path + ": unknown key '" + key + "'");
    }
  }
  if (!omega_p) throw ingest_error(path + ": omega_p is required");
  if (kind == "gp") {
    materials::GeneralizedPlasmaModel m{*omega_p, oscillators};
    m.validate();
    return m;
  }
  if (kind == "drude") {
    if (!gamma) throw ingest_error(path + ": drude model needs gamma");
    materials::DrudeModel m{*omega_p, *gamma, oscillators};
    m.validate();
    return m;
  }
  throw ingest_error(path + ": model must be 'gp' or 'drude'");
}

struct ModelSpec {
  std::string label;
  materials::PermittivityModel model;
};

// `--model` values: gp:au, drude:au, gp:<config>, drude:<config>, table:<csv>.
inline ModelSpec resolve_model(const std::string& text, double tail_omega_p_ev,
                               double tail_gamma_ev) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw config_error("--model: expected kind:source, got '" + text + "'");
  }
  const std::string kind = text.substr(0, colon);
  const std::string source = text.substr(colon + 1);
  if (kind == "gp" || kind == "drude") {
    if (source == "au") {
      if (kind == "gp") return {text, materials::presets::gold_generalized_plasma()};
      return {text, materials::presets::gold_drude()};
    }
    if (!std::filesystem::exists(source)) {
      throw config_error("--model: config file does not exist: " + source);
    }
    auto model = load_model_config(source);
    const bool is_gp = std::holds_alternative<materials::GeneralizedPlasmaModel>(model);
    if ((kind == "gp") != is_gp) {
      throw config_error("--model: " + source + " does not define a '" + kind + "' model");
    }
    return {text, model};
  }
  if (kind == "table") {
    if (!std::filesystem::exists(source)) {
      throw config_error("--model: optical table does not exist: " + source);
    }
    materials::OpticalDataTable table;
    table.samples = io::load_optical_samples(source);
    table.low_frequency_tail =
        materials::DrudeModel{tail_omega_p_ev, tail_gamma_ev,
                              materials::presets::gold_oscillators()};
    table.validate();
    return {text, table};
  }
  throw config_error("--model: unknown kind '" + kind + "' (use gp, drude or table)");
}

// ---- run configuration -----------------------------------------------------

enum class Command {
  BoxEnergy,
  BoxForce,
  PistonForce,
  PlatesIdeal,
  Lifshitz,
  Pfa,
  Entropy,
  Compare,
};

enum class OutputFormat { Csv, Json };

struct SweepGrid {
  double start_nm = 0.0;
  double stop_nm = 0.0;
  int count = 1;
  bool logarithmic = false;

  std::vector<double> points() const {
    std::vector<double> out;
    if (count == 1) {
      out.push_back(start_nm);
      return out;
    }
    for (int i = 0; i < count; ++i) {
      const double t = static_cast<double>(i) / (count - 1);
      out.push_back(logarithmic
                        ? start_nm * std::pow(stop_nm / start_nm, t)
                        : start_nm + (stop_nm - start_nm) * t);
    }
    return out;
  }
};

struct RunConfig {
  Command command = Command::PlatesIdeal;

  // geometry
  boxes::BoxGeometry box;
  double partition_nm = 0.0;
  boxes::FieldKind field = boxes::FieldKind::ElectromagneticIdealMetal;
  boxes::Axis axis = boxes::Axis::X;
  bool accelerated = false;

  // plates / lifshitz
  double separation_nm = 0.0;
  double temperature_k = 0.0;
  std::vector<ModelSpec> models;
  bool screened = false;
  materials::ScreeningSpec screening;

  // pfa
  bool sphere = true;
  double radius_nm = 0.0;
  std::optional<double> theta;
  std::string plate_kernel = "ideal";

  // compare
  std::string series_path;
  std::string band_path;
  double level = 0.95;
  stats::XiPolicy xi_policy = stats::XiPolicy::Quadrature;

  std::optional<SweepGrid> sweep;
  std::string output_path;  // empty -> stdout
  OutputFormat format = OutputFormat::Csv;
};

struct RunReport {
  RunConfig config;
  std::string csv_header;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> row_labels;  // parallel to rows when non-empty
  nlohmann::json document;              // full JSON payload
  double wall_time_s = 0.0;
};

namespace detail {

inline std::vector<double> sweep_points(const RunConfig& cfg) {
  if (cfg.sweep) return cfg.sweep->points();
  return {cfg.separation_nm};
}

inline std::string scheme_label(const RunConfig& cfg, const ModelSpec& spec) {
  return cfg.screened ? spec.label + "+screened" : spec.label;
}

inline lifshitz::PlatesConfig plates_config(const RunConfig& cfg, const ModelSpec& spec,
                                            double a_nm) {
  lifshitz::PlatesConfig pc;
  pc.separation_nm = a_nm;
  pc.temperature_k = cfg.temperature_k;
  pc.material = spec.model;
  if (cfg.screened) {
    pc.scheme = lifshitz::ScreenedScheme{cfg.screening};
  }
  return pc;
}

}  // namespace detail

// ---- command execution -----------------------------------------------------

inline RunReport run(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report;
  report.config = cfg;
  nlohmann::json rows_json = nlohmann::json::array();

  boxes::ComputeOptions box_opt;
  box_opt.accelerated = cfg.accelerated;

  switch (cfg.command) {
    case Command::BoxEnergy: {
      report.csv_header = "ax_nm,ay_nm,az_nm,T_K,E_ren_J,E_ren_err_J,F_phys_J,F_phys_err_J";
      auto e0 = boxes::renormalized_energy_T0(cfg.box, cfg.field, box_opt);
      auto f = boxes::physical_free_energy(cfg.box, cfg.field, cfg.temperature_k, box_opt);
      report.rows.push_back({cfg.box.ax_nm, cfg.box.ay_nm, cfg.box.az_nm,
                             cfg.temperature_k, e0.value_j, e0.error_j, f.value, f.error});
      break;
    }
    case Command::BoxForce: {
      report.csv_header = "axis,ax_nm,ay_nm,az_nm,T_K,force_N,force_err_N";
      auto force = boxes::face_force(cfg.box, cfg.field, cfg.temperature_k, cfg.axis, box_opt);
      report.row_labels.push_back(cfg.axis == boxes::Axis::X   ? "x"
                                  : cfg.axis == boxes::Axis::Y ? "y"
                                                               : "z");
      report.rows.push_back({cfg.box.ax_nm, cfg.box.ay_nm, cfg.box.az_nm,
                             cfg.temperature_k, force.value, force.error});
      break;
    }
    case Command::PistonForce: {
      report.csv_header = "ax_nm,ay_nm,az_nm,az1_nm,T_K,force_N,force_err_N";
      boxes::PistonedBox piston{cfg.box, cfg.partition_nm};
      auto force = boxes::piston_force(piston, cfg.field, cfg.temperature_k, box_opt);
      report.rows.push_back({cfg.box.ax_nm, cfg.box.ay_nm, cfg.box.az_nm,
                             cfg.partition_nm, cfg.temperature_k, force.value, force.error});
      break;
    }
    case Command::PlatesIdeal: {
      report.csv_header = "a_nm,T_K,F_J_per_m2,P_Pa,P_lowT_Pa,lowT_valid";
      for (double a : detail::sweep_points(cfg)) {
        const double f = boxes::plates_free_energy_ideal(a, cfg.temperature_k);
        const auto p = boxes::plates_pressure_ideal(a, cfg.temperature_k);
        report.rows.push_back({a, cfg.temperature_k, f, p.value_pa, p.low_t_expansion_pa,
                               p.low_t_valid ? 1.0 : 0.0});
      }
      break;
    }
    case Command::Lifshitz: {
      report.csv_header = "scheme,a_nm,T_K,F_J_per_m2,F_err,P_Pa,P_err";
      for (const auto& spec : cfg.models) {
        for (double a : detail::sweep_points(cfg)) {
          auto pc = detail::plates_config(cfg, spec, a);
          auto f = lifshitz::free_energy(pc);
          auto p = lifshitz::pressure(pc);
          report.row_labels.push_back(detail::scheme_label(cfg, spec));
          report.rows.push_back({a, cfg.temperature_k, f.value, f.total_error,
                                 p.value, p.error});
        }
      }
      break;
    }
    case Command::Entropy: {
      report.csv_header = "scheme,a_nm,T_K,S_J_per_K_m2,S_err";
      for (const auto& spec : cfg.models) {
        for (double a : detail::sweep_points(cfg)) {
          auto pc = detail::plates_config(cfg, spec, a);
          auto s = lifshitz::entropy(pc);
          report.row_labels.push_back(detail::scheme_label(cfg, spec));
          report.rows.push_back({a, cfg.temperature_k, s.value, s.error});
        }
      }
      break;
    }
    case Command::Pfa: {
      report.csv_header =
          "geometry_kernel,a_nm,R_nm,U_pfa,F_pfa,F_beyond_pfa,pfa_applicable,theta";
      for (double a : detail::sweep_points(cfg)) {
        pfa::CurvedGeometry geom;
        geom.separation_nm = a;
        if (cfg.sphere) {
          geom.body = pfa::SpherePlate{cfg.radius_nm};
        } else {
          geom.body = pfa::CylinderPlate{cfg.radius_nm};
        }
        pfa::PlateKernel energy_kernel = pfa::ideal_plate_energy;
        pfa::PlateKernel pressure_kernel = pfa::ideal_plate_pressure;
        std::string kernel_label = "ideal";
        if (cfg.plate_kernel == "lifshitz") {
          // Heuristic at T > 0: the plate free energy standing in for E(z).
          const auto spec = cfg.models.front();
          const RunConfig& c = cfg;
          energy_kernel = [&c, spec](double gap_nm) {
            return lifshitz::free_energy(detail::plates_config(c, spec, gap_nm)).value;
          };
          pressure_kernel = [&c, spec](double gap_nm) {
            return lifshitz::pressure(detail::plates_config(c, spec, gap_nm)).value;
          };
          kernel_label = "lifshitz:" + spec.label + " (heuristic at T > 0)";
        }
        const double u = pfa::pfa_energy(geom, energy_kernel);
        const double f_pfa = pfa::pfa_force(geom, pressure_kernel);
        double f_beyond;
        double theta_used = 0.0;
        if (cfg.sphere) {
          theta_used = cfg.theta.value_or(0.0);
          f_beyond = cfg.theta
                         ? pfa::beyond_pfa_sphere_force(a, cfg.radius_nm, *cfg.theta).value
                         : f_pfa;
        } else {
          f_beyond = pfa::beyond_pfa_cylinder_force(a, cfg.radius_nm).value;
        }
        report.row_labels.push_back((cfg.sphere ? std::string("sphere|") : "cylinder|") +
                                    kernel_label);
        report.rows.push_back({a, cfg.radius_nm, u, f_pfa, f_beyond,
                               geom.pfa_applicable() ? 1.0 : 0.0, theta_used});
      }
      break;
    }
    case Command::Compare: {
      auto series = io::load_measurement_series(cfg.series_path);
      auto band = io::load_theory_band(cfg.band_path);
      stats::ErrorCombinationPolicy policy;
      auto band_verdict = stats::band_overlap_method(series, band, policy, cfg.level);

      // Difference method: theory value = band midpoint, theoretical error =
      // band half-width; Xi combines it with the experimental errors.
      std::vector<stats::DifferencePoint> diffs;
      for (const auto& p : series) {
        diffs.push_back({p.separation_nm,
                         0.5 * (band.lo(p.separation_nm) + band.hi(p.separation_nm)) - p.mean});
      }
      auto theor_err = [&band](double a_nm) {
        return 0.5 * (band.hi(a_nm) - band.lo(a_nm));
      };
      auto xi = stats::make_xi(series, theor_err, cfg.xi_policy, cfg.level, policy);
      auto diff_verdict = stats::difference_interval_method(diffs, xi, cfg.level);
      diff_verdict.agreement = stats::agreement_measure(xi, series);

      auto verdict_json = [](const stats::ComparisonVerdict& v) {
        nlohmann::json j;
        j["method"] = v.method == stats::ComparisonMethod::BandOverlap
                          ? "band-overlap"
                          : "difference-interval";
        j["level"] = v.level;
        auto kind_str = [](stats::VerdictKind k, double level) -> std::string {
          switch (k) {
            case stats::VerdictKind::Consistent: return "consistent";
            case stats::VerdictKind::ExcludedAt:
              return "excluded-at-" + io::format_double(level);
            default: return "inconclusive";
          }
        };
        j["range_verdict"] = kind_str(v.range.kind, v.level);
        j["inside_fraction"] = v.range.inside_fraction;
        j["points"] = nlohmann::json::array();
        for (std::size_t i = 0; i < v.separations_nm.size(); ++i) {
          j["points"].push_back({{"a_nm", v.separations_nm[i]},
                                 {"consistent", static_cast<bool>(v.point_consistent[i])}});
        }
        j["windows"] = nlohmann::json::array();
        for (const auto& w : v.windows) {
          j["windows"].push_back({{"from_nm", w.from_nm},
                                  {"to_nm", w.to_nm},
                                  {"verdict", kind_str(w.verdict.kind, w.verdict.level)},
                                  {"inside_fraction", w.verdict.inside_fraction}});
        }
        if (!v.agreement.empty()) {
          j["agreement_measure"] = nlohmann::json::array();
          for (const auto& p : v.agreement) {
            j["agreement_measure"].push_back({{"a_nm", p.separation_nm},
                                              {"xi_over_mean", p.value}});
          }
        }
        return j;
      };
      report.document["band_overlap"] = verdict_json(band_verdict);
      report.document["difference_interval"] = verdict_json(diff_verdict);
      auto profile = stats::relative_error_profile(series);
      report.document["relative_error_profile"] = nlohmann::json::array();
      for (const auto& p : profile) {
        report.document["relative_error_profile"].push_back(
            {{"a_nm", p.separation_nm}, {"delta_tot_over_mean", p.value}});
      }
      report.csv_header = "a_nm,band_overlap_ok,difference_ok";
      for (std::size_t i = 0; i < band_verdict.separations_nm.size(); ++i) {
        report.rows.push_back({band_verdict.separations_nm[i],
                               band_verdict.point_consistent[i] ? 1.0 : 0.0,
                               diff_verdict.point_consistent[i] ? 1.0 : 0.0});
      }
      break;
    }
  }

  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

// ---- emission ----------------------------------------------------------------

inline std::string command_name(Command c) {
  switch (c) {
    case Command::BoxEnergy: return "box-energy";
    case Command::BoxForce: return "box-force";
    case Command::PistonForce: return "piston-force";
    case Command::PlatesIdeal: return "plates-ideal";
    case Command::Lifshitz: return "lifshitz";
    case Command::Pfa: return "pfa";
    case Command::Entropy: return "entropy";
    case Command::Compare: return "compare";
  }
  return "?";
}

// Rows render as an optional leading label column followed by the numeric
// columns, every double in shortest round-trip form.
inline std::string render_csv(const RunReport& report) {
  std::string out;
  out += "# casimir-toolkit " + std::string(kVersion) + "\n";
  out += "# command: " + command_name(report.config.command) + "\n";
  out += "# units: lengths nm, temperatures K, energies J, pressures Pa, forces N\n";
  out += report.csv_header + "\n";
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    std::string line;
    if (r < report.row_labels.size()) line += report.row_labels[r] + ",";
    for (std::size_t i = 0; i < report.rows[r].size(); ++i) {
      if (i) line += ",";
      line += io::format_double(report.rows[r][i]);
    }
    out += line + "\n";
  }
  return out;
}

inline std::string render_json(const RunReport& report) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["command"] = command_name(report.config.command);
  j["units"] = {{"length", "nm"}, {"temperature", "K"}, {"energy", "J"},
                {"pressure", "Pa"}, {"force", "N"}};
  j["wall_time_s"] = report.wall_time_s;
  if (!report.document.is_null()) {
    j["result"] = report.document;
  }
  if (!report.rows.empty()) {
    j["columns"] = report.csv_header;
    j["rows"] = nlohmann::json::array();
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      if (r < report.row_labels.size()) row.push_back(report.row_labels[r]);
      for (double v : report.rows[r]) row.push_back(v);
      j["rows"].push_back(row);
    }
  }
  return j.dump(2) + "\n";
}

inline void emit(const RunReport& report) {
  const std::string text = report.config.format == OutputFormat::Csv
                               ? render_csv(report)
                               : render_json(report);
  if (report.config.output_path.empty()) {
    std::cout << text;
  } else {
    io::atomic_write_file(report.config.output_path, text);
  }
}

// ---- argument parsing --------------------------------------------------------

inline RunConfig parse_and_validate(const std::vector<std::string>& args) {
  CLI::App app{"Casimir free energies, forces and experiment-theory comparison"};
  app.set_config("--config", "", "key=value config file; flags take precedence");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string box_text, a_text = "500nm", t_text = "300K", partition_text;
  std::string axis_text = "x", field_text = "em", sweep_text, format_text = "csv";
  std::string radius_text, geometry_text = "sphere", scheme_text = "standard";
  std::vector<std::string> model_texts;
  std::string tail_wp_text = "9eV", tail_gamma_text = "0.035eV";
  std::string screen_stats_text = "fd", screen_t_text, screen_ef_text;
  double screen_eps0 = 1.0, screen_n = 0.0;
  double theta = 0.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", cfg.output_path, "output file (atomic write); stdout if absent");
    cmd->add_option("--format", format_text, "csv | json");
  };
  auto add_box = [&](CLI::App* cmd) {
    cmd->add_option("--box", box_text, "three sides with units, e.g. 1um,1um,2um")
        ->required();
    cmd->add_option("--field", field_text, "em | scalar");
    cmd->add_option("--T", t_text, "temperature, e.g. 300K");
    cmd->add_flag("--accelerated", cfg.accelerated,
                  "theta-integral fast path for mode sums");
  };

  auto* box_energy = app.add_subcommand("box-energy", "renormalized and physical box energies");
  add_box(box_energy);
  add_common(box_energy);

  auto* box_force = app.add_subcommand("box-force", "force on a pair of box faces");
  add_box(box_force);
  box_force->add_option("--axis", axis_text, "x | y | z");
  add_common(box_force);

  auto* piston = app.add_subcommand("piston-force", "force on a fixed partition");
  add_box(piston);
  piston->add_option("--partition", partition_text, "piston position along z, e.g. 300nm")
      ->required();
  add_common(piston);

  auto* plates = app.add_subcommand("plates-ideal", "ideal-metal parallel plates");
  plates->add_option("--a", a_text, "separation, e.g. 1um");
  plates->add_option("--T", t_text, "temperature");
  plates->add_option("--sweep", sweep_text, "start,stop,count,lin|log over separation");
  add_common(plates);

  auto add_material = [&](CLI::App* cmd) {
    cmd->add_option("--model", model_texts,
                    "gp:au | drude:au | gp:<cfg> | drude:<cfg> | table:<csv> (repeatable)");
    cmd->add_option("--table-tail-wp", tail_wp_text, "Drude tail plasma frequency");
    cmd->add_option("--table-tail-gamma", tail_gamma_text, "Drude tail relaxation");
    cmd->add_option("--scheme", scheme_text, "standard | screened");
    cmd->add_option("--screen-stats", screen_stats_text, "mb | fd");
    cmd->add_option("--screen-eps0", screen_eps0, "static permittivity for screening");
    cmd->add_option("--screen-n", screen_n, "carrier density, cm^-3");
    cmd->add_option("--screen-T", screen_t_text, "temperature for mb statistics");
    cmd->add_option("--screen-EF", screen_ef_text, "Fermi energy for fd statistics");
  };

  auto* lif = app.add_subcommand("lifshitz", "Lifshitz free energy and pressure");
  lif->add_option("--a", a_text, "separation");
  lif->add_option("--T", t_text, "temperature");
  add_material(lif);
  lif->add_option("--sweep", sweep_text, "start,stop,count,lin|log over separation");
  add_common(lif);

  auto* ent = app.add_subcommand("entropy", "Casimir entropy per unit area");
  ent->add_option("--a", a_text, "separation");
  ent->add_option("--T", t_text, "temperature");
  add_material(ent);
  ent->add_option("--sweep", sweep_text, "start,stop,count,lin|log over separation");
  add_common(ent);

  auto* pfa_cmd = app.add_subcommand("pfa", "proximity force approximation");
  pfa_cmd->add_option("--geometry", geometry_text, "sphere | cylinder");
  pfa_cmd->add_option("--a", a_text, "separation");
  pfa_cmd->add_option("--R", radius_text, "radius, e.g. 100um")->required();
  auto* theta_opt = pfa_cmd->add_option("--theta", theta, "sphere beyond-PFA coefficient");
  pfa_cmd->add_option("--plate-energy", cfg.plate_kernel, "ideal | lifshitz");
  pfa_cmd->add_option("--T", t_text, "temperature for the lifshitz kernel");
  add_material(pfa_cmd);
  pfa_cmd->add_option("--sweep", sweep_text, "start,stop,count,lin|log over separation");
  add_common(pfa_cmd);

  auto* compare = app.add_subcommand("compare", "experiment-theory comparison verdicts");
  compare->add_option("--series", cfg.series_path, "measurement CSV")->required();
  compare->add_option("--band", cfg.band_path, "theory band CSV")->required();
  compare->add_option("--level", cfg.level, "confidence level (default 0.95)");
  std::string xi_text = "quadrature";
  compare->add_option("--xi", xi_text, "quadrature | linearq");
  add_common(compare);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help() << std::flush;
    throw;
  } catch (const CLI::ParseError& e) {
    throw config_error(std::string("argument error: ") + e.what());
  }

  if (format_text == "csv") {
    cfg.format = OutputFormat::Csv;
  } else if (format_text == "json") {
    cfg.format = OutputFormat::Json;
  } else {
    throw config_error("--format: expected csv or json, got '" + format_text + "'");
  }

  auto parse_box = [&]() {
    auto fields = io::detail::split_csv_row(box_text);
    if (fields.size() != 3) throw config_error("--box: expected three sides");
    cfg.box = {parse_length_nm(fields[0], "--box"), parse_length_nm(fields[1], "--box"),
               parse_length_nm(fields[2], "--box")};
  };
  auto parse_field_kind = [&]() {
    if (field_text == "em") {
      cfg.field = boxes::FieldKind::ElectromagneticIdealMetal;
    } else if (field_text == "scalar") {
      cfg.field = boxes::FieldKind::DirichletScalar;
    } else {
      throw config_error("--field: expected em or scalar, got '" + field_text + "'");
    }
  };
  auto parse_sweep = [&]() {
    if (sweep_text.empty()) return;
    auto fields = io::detail::split_csv_row(sweep_text);
    if (fields.size() != 4) throw config_error("--sweep: expected start,stop,count,lin|log");
    SweepGrid grid;
    grid.start_nm = parse_length_nm(fields[0], "--sweep start");
    grid.stop_nm = parse_length_nm(fields[1], "--sweep stop");
    try {
      grid.count = std::stoi(fields[2]);
    } catch (const std::exception&) {
      throw config_error("--sweep: bad count '" + fields[2] + "'");
    }
    if (grid.count < 1) throw config_error("--sweep: count must be >= 1");
    if (!(grid.start_nm < grid.stop_nm)) {
      throw config_error("--sweep: start must be < stop");
    }
    if (fields[3] == "lin") {
      grid.logarithmic = false;
    } else if (fields[3] == "log") {
      grid.logarithmic = true;
    } else {
      throw config_error("--sweep: expected lin or log, got '" + fields[3] + "'");
    }
    cfg.sweep = grid;
  };
  auto parse_models = [&]() {
    const double tail_wp = parse_energy_ev(tail_wp_text, "--table-tail-wp");
    const double tail_gamma = parse_energy_ev(tail_gamma_text, "--table-tail-gamma");
    if (model_texts.empty()) model_texts.push_back("gp:au");
    for (const auto& text : model_texts) {
      cfg.models.push_back(resolve_model(text, tail_wp, tail_gamma));
    }
    if (scheme_text == "screened") {
      cfg.screened = true;
      cfg.screening.statistics = screen_stats_text == "mb"
                                     ? materials::CarrierStatistics::MaxwellBoltzmann
                                     : materials::CarrierStatistics::FermiDirac;
      if (screen_stats_text != "mb" && screen_stats_text != "fd") {
        throw config_error("--screen-stats: expected mb or fd");
      }
      cfg.screening.static_permittivity = screen_eps0;
      if (!(screen_n > 0.0)) throw config_error("--screen-n: carrier density required");
      cfg.screening.density_cm3 = screen_n;
      if (!screen_t_text.empty()) {
        cfg.screening.temperature_k = parse_temperature_k(screen_t_text, "--screen-T");
      }
      if (!screen_ef_text.empty()) {
        cfg.screening.fermi_energy_ev = parse_energy_ev(screen_ef_text, "--screen-EF");
      }
      cfg.screening.validate();
    } else if (scheme_text != "standard") {
      throw config_error("--scheme: expected standard or screened");
    }
  };

  if (box_energy->parsed() || box_force->parsed() || piston->parsed()) {
    parse_box();
    parse_field_kind();
    cfg.temperature_k = parse_temperature_k(t_text, "--T");
    if (box_energy->parsed()) cfg.command = Command::BoxEnergy;
    if (box_force->parsed()) {
      cfg.command = Command::BoxForce;
      if (axis_text == "x") cfg.axis = boxes::Axis::X;
      else if (axis_text == "y") cfg.axis = boxes::Axis::Y;
      else if (axis_text == "z") cfg.axis = boxes::Axis::Z;
      else throw config_error("--axis: expected x, y or z");
    }
    if (piston->parsed()) {
      cfg.command = Command::PistonForce;
      cfg.partition_nm = parse_length_nm(partition_text, "--partition");
      if (!(cfg.partition_nm > 0.0 && cfg.partition_nm < cfg.box.az_nm)) {
        throw config_error("--partition: must lie strictly inside the box along z");
      }
    }
  } else if (plates->parsed()) {
    cfg.command = Command::PlatesIdeal;
    cfg.separation_nm = parse_length_nm(a_text, "--a");
    cfg.temperature_k = parse_temperature_k(t_text, "--T");
    parse_sweep();
  } else if (lif->parsed() || ent->parsed()) {
    cfg.command = lif->parsed() ? Command::Lifshitz : Command::Entropy;
    cfg.separation_nm = parse_length_nm(a_text, "--a");
    cfg.temperature_k = parse_temperature_k(t_text, "--T");
    if (!(cfg.temperature_k > 0.0)) throw config_error("--T: must be > 0 here");
    parse_models();
    parse_sweep();
  } else if (pfa_cmd->parsed()) {
    cfg.command = Command::Pfa;
    cfg.separation_nm = parse_length_nm(a_text, "--a");
    cfg.radius_nm = parse_length_nm(radius_text, "--R");
    if (geometry_text == "sphere") cfg.sphere = true;
    else if (geometry_text == "cylinder") cfg.sphere = false;
    else throw config_error("--geometry: expected sphere or cylinder");
    if (theta_opt->count() > 0) cfg.theta = theta;
    if (cfg.plate_kernel == "lifshitz") {
      cfg.temperature_k = parse_temperature_k(t_text, "--T");
      parse_models();
    } else if (cfg.plate_kernel != "ideal") {
      throw config_error("--plate-energy: expected ideal or lifshitz");
    }
    parse_sweep();
  } else if (compare->parsed()) {
    cfg.command = Command::Compare;
    if (!std::filesystem::exists(cfg.series_path)) {
      throw config_error("--series: file does not exist: " + cfg.series_path);
    }
    if (!std::filesystem::exists(cfg.band_path)) {
      throw config_error("--band: file does not exist: " + cfg.band_path);
    }
    if (!(cfg.level > 0.0 && cfg.level < 1.0)) {
      throw config_error("--level: must be in (0, 1)");
    }
    if (xi_text == "quadrature") cfg.xi_policy = stats::XiPolicy::Quadrature;
    else if (xi_text == "linearq") cfg.xi_policy = stats::XiPolicy::LinearQ;
    else throw config_error("--xi: expected quadrature or linearq");
  }
  return cfg;
}

// Entry point shared by the binary and the tests.
inline int main_impl(const std::vector<std::string>& args) {
  try {
    RunConfig cfg = parse_and_validate(args);
    RunReport report = run(cfg);
    emit(report);
    return 0;
  } catch (const CLI::CallForHelp&) {
    return 0;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ingest_error& e) {
    std::cerr << "ingestion error: " << e.what() << "\n";
    return 3;
  } catch (const budget_exceeded_error& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return 4;
  } catch (const convergence_error& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return 4;
  } catch (const domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
}

}  // namespace casimir::cli
