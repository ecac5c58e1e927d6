#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "pixelport/errors.hpp"
#include "pixelport/image_io.hpp"
#include "pixelport/pixel_modes.hpp"

namespace pixelport::cli {

namespace {

using io::format_double;

const std::set<std::string> kSpdcKeys = {"w_p", "w_0", "L", "k_p", "k_d", "theta_d", "f"};
const std::set<std::string> kRingKeys = {"r0", "R"};
const std::set<std::string> kKnownKeys = {
    "mode",    "ideal_r", "w_p",    "w_0",          "L",       "k_p",   "k_d",   "theta_d",
    "f",       "Xi",      "r0",     "R",            "seed",    "shots", "pitch", "origin_x",
    "origin_y", "plane",  "input",  "output",       "fidelity_map", "summary"};

double parse_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("'" + key + "' expects a real number, got '" + text + "'");
  }
  return v;
}

std::uint64_t parse_count(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("'" + key + "' expects a non-negative integer, got '" + text + "'");
  }
  return v;
}

std::vector<std::string> as_comments(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::vector<std::string> out{"pixelport"};
  for (const auto& [k, v] : kv) out.push_back(k + "=" + v);
  return out;
}

std::vector<std::string> ring_comments(const std::string& what, const RingParams& ring, int samples) {
  return {"pixelport " + what, "r0=" + format_double(ring.r0), "R=" + format_double(ring.R),
          "Xi=" + format_double(ring.Xi), "samples=" + std::to_string(samples) + " uniform on [0, r0+4R] plus r0 and sinc zeros"};
}

std::map<std::string, std::string> load_config(const std::string& path, const std::vector<std::string>& sets) {
  std::map<std::string, std::string> kv;
  if (!path.empty()) kv = io::parse_key_values(std::filesystem::path(path));
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + s + "'");
    kv[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return kv;
}

std::filesystem::path numbered(const std::filesystem::path& base, int k) {
  std::filesystem::path p = base;
  const std::string ext = base.has_extension() ? base.extension().string() : ".csv";
  p.replace_filename(base.stem().string() + "_" + std::to_string(k) + ext);
  return p;
}

template <class Writer>
void emit(const std::string& out_path, Writer&& write) {
  if (out_path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot write '" + out_path + "'");
  write(out);
}

// Physical source parameters; every key must be present. DomainError on bad values.
SpdcParams parse_spdc(const std::map<std::string, std::string>& kv, double xi) {
  for (const auto& k : kSpdcKeys) {
    if (!kv.contains(k)) throw ConfigError("SPDC parameters need '" + k + "'");
  }
  SpdcParams p;
  p.w_p = parse_real("w_p", kv.at("w_p"));
  p.w_0 = parse_real("w_0", kv.at("w_0"));
  p.L = parse_real("L", kv.at("L"));
  p.k_p = parse_real("k_p", kv.at("k_p"));
  p.k_d = parse_real("k_d", kv.at("k_d"));
  p.theta_d = parse_real("theta_d", kv.at("theta_d"));
  p.f = parse_real("f", kv.at("f"));
  p.Xi = xi;
  p.validate();
  return p;
}

RingParams ring_from_kv(const std::map<std::string, std::string>& kv, double default_xi) {
  // A teleport config works here too; its run keys are ignored.
  for (const auto& [k, v] : kv) {
    if (!kKnownKeys.contains(k)) throw ConfigError("unknown config key '" + k + "'");
  }
  if (kv.contains("ideal_r")) throw ConfigError("ideal_r has no ring; give r0/R or SPDC parameters");
  const double xi = kv.contains("Xi") ? parse_real("Xi", kv.at("Xi")) : default_xi;
  bool spdc = false, ring_keys = false;
  for (const auto& k : kSpdcKeys) spdc = spdc || kv.contains(k);
  for (const auto& k : kRingKeys) ring_keys = ring_keys || kv.contains(k);
  if (spdc && ring_keys) throw ConfigError("give either SPDC parameters or ring parameters (r0, R), not both");
  if (spdc) return ring_from_spdc(parse_spdc(kv, xi));
  RingParams ring;
  ring.Xi = xi;
  if (auto it = kv.find("r0"); it != kv.end()) ring.r0 = parse_real("r0", it->second);
  if (auto it = kv.find("R"); it != kv.end()) ring.R = parse_real("R", it->second);
  ring.validate();
  return ring;
}

}  // namespace

RunConfig RunConfig::from_key_values(const std::map<std::string, std::string>& kv) {
  for (const auto& [k, v] : kv) {
    if (!kKnownKeys.contains(k)) throw ConfigError("unknown config key '" + k + "'");
  }
  auto get = [&](const std::string& k) -> const std::string* {
    auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };

  RunConfig c;
  const std::string mode = get("mode") ? *get("mode") : "ideal";
  if (mode == "ideal") {
    c.mode = SqueezingMode::Ideal;
  } else if (mode == "spdc") {
    c.mode = SqueezingMode::Spdc;
  } else {
    throw ConfigError("mode must be 'ideal' or 'spdc', got '" + mode + "'");
  }

  bool any_spdc = false, any_ring = false;
  for (const auto& k : kSpdcKeys) any_spdc = any_spdc || get(k);
  for (const auto& k : kRingKeys) any_ring = any_ring || get(k);

  if (c.mode == SqueezingMode::Ideal) {
    if (any_spdc || any_ring || get("Xi")) throw ConfigError("mode=ideal takes ideal_r only, not SPDC or ring parameters");
    if (!get("ideal_r")) throw ConfigError("mode=ideal requires ideal_r");
    c.ideal_r = parse_real("ideal_r", *get("ideal_r"));
    if (*c.ideal_r < 0.0) throw ConfigError("ideal_r must be >= 0");
  } else {
    if (get("ideal_r")) throw ConfigError("mode=spdc does not take ideal_r");
    if (any_spdc && any_ring) throw ConfigError("give either SPDC parameters or ring parameters (r0, R), not both");
    if (!any_spdc && !any_ring) throw ConfigError("mode=spdc requires SPDC parameters or ring parameters (r0, R)");
    const double xi = get("Xi") ? parse_real("Xi", *get("Xi")) : 1.0;
    try {
      if (any_spdc) {
        c.spdc = parse_spdc(kv, xi);
      } else {
        if (!get("r0") || !get("R")) throw ConfigError("ring parameters need both r0 and R");
        RingParams ring{parse_real("r0", *get("r0")), parse_real("R", *get("R")), xi};
        ring.validate();
        c.ring = ring;
      }
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }

  if (get("seed")) c.seed = parse_count("seed", *get("seed"));
  if (get("shots")) c.shots = parse_count("shots", *get("shots"));
  if (get("pitch")) c.pitch = parse_real("pitch", *get("pitch"));
  if (!(c.pitch > 0.0)) throw ConfigError("pitch must be > 0");
  if (get("origin_x") || get("origin_y")) {
    if (!get("origin_x") || !get("origin_y")) throw ConfigError("origin needs both origin_x and origin_y");
    c.origin = Vec2{parse_real("origin_x", *get("origin_x")), parse_real("origin_y", *get("origin_y"))};
  }
  if (get("plane")) {
    const std::string& plane = *get("plane");
    if (plane == "upright") c.plane = OutputPlane::Upright;
    else if (plane == "raw") c.plane = OutputPlane::Raw;
    else throw ConfigError("plane must be 'upright' or 'raw'");
  }
  if (!get("input") || get("input")->empty()) throw ConfigError("config requires 'input'");
  c.input = *get("input");
  if (get("output")) c.output = *get("output");
  if (get("fidelity_map")) c.fidelity_map = *get("fidelity_map");
  if (get("summary")) c.summary = *get("summary");
  return c;
}

RingParams RunConfig::effective_ring() const {
  if (ring) return *ring;
  if (spdc) return ring_from_spdc(*spdc);
  throw ConfigError("no ring or SPDC parameters configured");
}

std::vector<std::pair<std::string, std::string>> RunConfig::describe() const {
  std::vector<std::pair<std::string, std::string>> d;
  d.emplace_back("mode", mode == SqueezingMode::Ideal ? "ideal" : "spdc");
  if (ideal_r) d.emplace_back("ideal_r", format_double(*ideal_r));
  if (spdc) {
    d.emplace_back("w_p", format_double(spdc->w_p));
    d.emplace_back("w_0", format_double(spdc->w_0));
    d.emplace_back("L", format_double(spdc->L));
    d.emplace_back("k_p", format_double(spdc->k_p));
    d.emplace_back("k_d", format_double(spdc->k_d));
    d.emplace_back("theta_d", format_double(spdc->theta_d));
    d.emplace_back("f", format_double(spdc->f));
    d.emplace_back("Xi", format_double(spdc->Xi));
  }
  if (mode == SqueezingMode::Spdc) {
    const RingParams r = effective_ring();
    d.emplace_back("r0", format_double(r.r0));
    d.emplace_back("R", format_double(r.R));
    if (!spdc) d.emplace_back("Xi", format_double(r.Xi));
  }
  d.emplace_back("seed", std::to_string(seed));
  d.emplace_back("shots", std::to_string(shots));
  d.emplace_back("pitch", format_double(pitch));
  if (origin) {
    d.emplace_back("origin_x", format_double(origin->x));
    d.emplace_back("origin_y", format_double(origin->y));
  } else {
    d.emplace_back("origin", "centered");
  }
  d.emplace_back("plane", plane == OutputPlane::Upright ? "upright" : "raw");
  d.emplace_back("input", input.string());
  return d;
}

int run_teleport(const RunConfig& config, std::ostream& err) {
  ComplexGrid samples;
  try {
    samples = io::read_complex_image(config.input);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }

  GridGeometry geometry;
  SqueezingProfile profile;
  try {
    geometry = config.origin ? GridGeometry{samples.width, samples.height, config.pitch, *config.origin}
                             : GridGeometry::centered(samples.width, samples.height, config.pitch);
    geometry.validate();
    if (config.mode == SqueezingMode::Ideal) {
      profile = SqueezingProfile::uniform(geometry, config.ideal_r.value());
    } else {
      if (config.spdc) {
        for (const auto& w : config.spdc->validate()) err << "warning: " << w << '\n';
      }
      profile = profile_for_grid(geometry, config.effective_ring());
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  const ImageField input = decompose(samples, geometry);
  const TeleportedImage result =
      teleport_image(input, profile, TeleportOptions{config.seed, config.shots, config.plane, 0});

  const auto comments = as_comments(config.describe());
  try {
    io::write_complex_image(config.output, synthesize(result.output), io::ImageEncoding::ReIm, comments);
    {
      std::ofstream out(config.fidelity_map);
      if (!out) throw IoError("cannot write '" + config.fidelity_map.string() + "'");
      io::write_fidelity_map(out, result.fidelity, profile, comments);
    }
    nlohmann::ordered_json summary;
    summary["image_fidelity"] = result.fidelity.image_fidelity;
    summary["analytic_image_fidelity"] = analytic_image_fidelity(profile);
    summary["pixels"] = geometry.size();
    summary["width"] = geometry.width;
    summary["height"] = geometry.height;
    summary["seed"] = config.seed;
    summary["shots"] = config.shots;
    nlohmann::ordered_json params;
    for (const auto& [k, v] : config.describe()) params[k] = v;
    summary["parameters"] = params;
    std::ofstream out(config.summary);
    if (!out) throw IoError("cannot write '" + config.summary.string() + "'");
    out << summary.dump(2) << '\n';
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

void write_profile_csv(std::ostream& out, const RingParams& ring, int samples,
                       const std::vector<std::string>& comments) {
  ring.validate();
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "x,eta,eta_sq_normalized\n";
  const double peak = ring.Xi * ring.Xi;
  for (double x : radial_samples(ring, samples)) {
    const double eta = eta_x({x, 0.0}, ring);
    const double norm = peak > 0.0 ? eta * eta / peak : 0.0;
    out << format_double(x) << ',' << format_double(eta) << ',' << format_double(norm) << '\n';
  }
}

void write_fidelity_curve_csv(std::ostream& out, const RingParams& ring, const std::vector<double>& xis,
                              int samples, const std::vector<std::string>& comments) {
  ring.validate();
  if (xis.empty()) throw ConfigError("fidelity curve needs at least one Xi");
  for (double xi : xis) {
    if (!(xi >= 0.0) || !std::isfinite(xi)) throw DomainError("Xi must be >= 0");
  }
  for (const auto& c : comments) out << "# " << c << '\n';
  out << 'x';
  for (double xi : xis) out << ",fidelity_xi=" << format_double(xi);
  out << '\n';
  for (double x : radial_samples(ring, samples)) {
    out << format_double(x);
    for (double xi : xis) {
      const RingParams scaled{ring.r0, ring.R, xi};
      out << ',' << format_double(average_fidelity(std::abs(eta_x({x, 0.0}, scaled))));
    }
    out << '\n';
  }
}

const std::vector<std::pair<double, double>>& preset_rings() {
  static const std::vector<std::pair<double, double>> rings = {{1.0, 0.5}, {1.0, 0.7}, {0.7, 0.5}};
  return rings;
}

int run_oracle_verify(const OracleSuiteOptions& options, bool json, std::ostream& out, std::ostream& err) {
  const auto rows = run_oracle_suite(options);
  if (json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json row;
      row["name"] = r.name;
      if (std::isfinite(r.value)) row["value"] = r.value; else row["value"] = nullptr;
      row["tolerance"] = r.tolerance;
      row["passed"] = r.passed;
      row["detail"] = r.detail;
      j.push_back(row);
    }
    out << j.dump(2) << '\n';
  } else {
    out << std::left << std::setw(24) << "check" << std::setw(14) << "value" << std::setw(12) << "tolerance"
        << std::setw(6) << "result" << "  detail\n";
    for (const auto& r : rows) {
      std::ostringstream v, t;
      v << std::scientific << std::setprecision(3) << r.value;
      t << std::scientific << std::setprecision(1) << r.tolerance;
      out << std::left << std::setw(24) << r.name << std::setw(14) << v.str() << std::setw(12) << t.str()
          << std::setw(6) << (r.passed ? "PASS" : "FAIL") << "  " << r.detail << '\n';
    }
  }
  bool ok = true;
  for (const auto& r : rows) {
    if (!r.passed) {
      err << "oracle check failed: " << r.name << " (value " << r.value << " > tolerance " << r.tolerance << ")\n";
      ok = false;
    }
  }
  return ok ? kExitOk : kExitOracleFailed;
}

int cli_main(int argc, char** argv) {
  CLI::App app{"pixelport: pixel-by-pixel continuous-variable teleportation of optical images"};
  app.require_subcommand(1);

  // teleport
  auto* teleport = app.add_subcommand("teleport", "Teleport a complex image through the pixel channels");
  std::string tp_config;
  std::uint64_t tp_seed = 0, tp_shots = 0;
  bool tp_raw = false;
  std::vector<std::string> tp_sets;
  teleport->add_option("--config", tp_config, "key=value run configuration")->required();
  auto* tp_seed_opt = teleport->add_option("--seed", tp_seed, "RNG seed (overrides config)");
  auto* tp_shots_opt =
      teleport->add_option("--shots", tp_shots, "0 = analytic, 1 = single realization, >1 = Monte Carlo");
  teleport->add_flag("--raw-plane", tp_raw, "write Bob's physical (point-reflected) plane");
  teleport->add_option("--set", tp_sets, "override a config entry, key=value");

  // profile
  auto* profile = app.add_subcommand("profile", "Squeezing-ring cross-section CSV");
  std::string pr_config, pr_preset, pr_out;
  std::vector<std::string> pr_sets;
  int pr_samples = 512;
  profile->add_option("--config", pr_config, "key=value file with r0/R/Xi or SPDC parameters");
  profile->add_option("--set", pr_sets, "parameter override, key=value");
  profile->add_option("--samples", pr_samples, "uniform radial samples")->check(CLI::Range(2, 1 << 24));
  profile->add_option("--preset", pr_preset, "fig3: rings (r0, R) = (1, 0.5), (1, 0.7), (0.7, 0.5)")->check(CLI::IsMember({"fig3"}));
  profile->add_option("--out", pr_out, "output CSV (stdout if omitted; numbered files for presets)");

  // fidelity-curve
  auto* curve = app.add_subcommand("fidelity-curve", "Teleportation fidelity along a radial cut");
  std::string fc_config, fc_preset, fc_out;
  std::vector<std::string> fc_sets;
  std::vector<double> fc_xis;
  int fc_samples = 512;
  curve->add_option("--config", fc_config, "key=value file with r0/R or SPDC parameters");
  curve->add_option("--set", fc_sets, "parameter override, key=value");
  curve->add_option("--xi", fc_xis, "squeezing scales Xi (default 1 10)");
  curve->add_option("--samples", fc_samples, "uniform radial samples")->check(CLI::Range(2, 1 << 24));
  curve->add_option("--preset", fc_preset, "fig4: the fig3 rings at Xi = 1 and 10")->check(CLI::IsMember({"fig4"}));
  curve->add_option("--out", fc_out, "output CSV (stdout if omitted; numbered files for presets)");

  // oracle-verify
  auto* oracle = app.add_subcommand("oracle-verify", "Run the Fock-space oracle checks");
  int ov_dim = 0;
  std::vector<std::string> ov_tols;
  bool ov_json = false;
  std::uint64_t ov_seed = OracleSuiteOptions{}.seed;
  oracle->add_option("--dim", ov_dim, "force one truncation for every check");
  oracle->add_option("--tol", ov_tols, "tolerance override, name=value");
  oracle->add_flag("--json", ov_json, "machine-readable output");
  oracle->add_option("--seed", ov_seed, "seed for the randomized channel cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*teleport) {
      auto kv = load_config(tp_config, tp_sets);
      if (*tp_seed_opt) kv["seed"] = std::to_string(tp_seed);
      if (*tp_shots_opt) kv["shots"] = std::to_string(tp_shots);
      if (tp_raw) kv["plane"] = "raw";
      return run_teleport(RunConfig::from_key_values(kv), std::cerr);
    }
    if (*profile) {
      if (!pr_preset.empty()) {
        const auto& rings = preset_rings();
        for (std::size_t k = 0; k < rings.size(); ++k) {
          const RingParams ring{rings[k].first, rings[k].second, 1.0};
          const std::string path = pr_out.empty() ? "" : numbered(pr_out, static_cast<int>(k) + 1).string();
          emit(path, [&](std::ostream& out) {
            write_profile_csv(out, ring, pr_samples, ring_comments("profile preset=fig3", ring, pr_samples));
          });
        }
        return kExitOk;
      }
      const RingParams ring = ring_from_kv(load_config(pr_config, pr_sets), 1.0);
      emit(pr_out, [&](std::ostream& out) {
        write_profile_csv(out, ring, pr_samples, ring_comments("profile", ring, pr_samples));
      });
      return kExitOk;
    }
    if (*curve) {
      std::vector<double> xis = fc_xis.empty() ? std::vector<double>{1.0, 10.0} : fc_xis;
      if (!fc_preset.empty()) {
        const auto& rings = preset_rings();
        for (std::size_t k = 0; k < rings.size(); ++k) {
          const RingParams ring{rings[k].first, rings[k].second, 1.0};
          const std::string path = fc_out.empty() ? "" : numbered(fc_out, static_cast<int>(k) + 1).string();
          emit(path, [&](std::ostream& out) {
            write_fidelity_curve_csv(out, ring, {1.0, 10.0}, fc_samples,
                                     ring_comments("fidelity-curve preset=fig4", ring, fc_samples));
          });
        }
        return kExitOk;
      }
      const RingParams ring = ring_from_kv(load_config(fc_config, fc_sets), 1.0);
      emit(fc_out, [&](std::ostream& out) {
        write_fidelity_curve_csv(out, ring, xis, fc_samples, ring_comments("fidelity-curve", ring, fc_samples));
      });
      return kExitOk;
    }
    if (*oracle) {
      OracleSuiteOptions options;
      options.dim = ov_dim;
      options.seed = ov_seed;
      for (const auto& t : ov_tols) {
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError("--tol expects name=value, got '" + t + "'");
        options.tolerance_overrides[t.substr(0, eq)] = parse_real(t.substr(0, eq), t.substr(eq + 1));
      }
      return run_oracle_verify(options, ov_json, std::cout, std::cerr);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace pixelport::cli
