#include "tempered/cli.hpp"

#include "tempered/gallery.hpp"
#include "tempered/io.hpp"
#include "tempered/summation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace tempered {

namespace {

using json = nlohmann::ordered_json;

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty())
    out << text;
  else
    write_file(path, text);
}

GalleryParams parse_params(const std::vector<std::string>& items) {
  GalleryParams p;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ContractError("invalid-argument", "parameter '" + item + "' is not key=value");
    try {
      p[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw ContractError("invalid-argument", "parameter '" + item + "' has a non-numeric value");
    }
  }
  return p;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete tempered distributions, crystals and their spectra", "tempered"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  std::string output;
  app.add_option("--seed", seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
  app.add_option("-o,--output", output, "Write the result to this file instead of stdout");

  std::string dist_path, fn_path, points_path, csv_path;
  double radius = 0.0, window = 0.0, step = 0.0, eps = 0.0, diff = 0.0, shift = 0.0;
  std::string format = "json", what = "distribution", gallery_action, gallery_name;
  std::vector<std::string> params;

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Closed-form Fourier transform of a crystal distribution");
  spectrum_cmd->add_option("distribution", dist_path)->required()->check(CLI::ExistingFile);
  spectrum_cmd->add_option("--radius", radius, "Radius of the CSV coefficient table")->default_val(5.0);
  spectrum_cmd->add_option("--out", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  auto* pair_cmd = app.add_subcommand("pair", "Pair a distribution with a test function");
  pair_cmd->add_option("distribution", dist_path)->required()->check(CLI::ExistingFile);
  pair_cmd->add_option("test-function", fn_path)->required()->check(CLI::ExistingFile);
  pair_cmd->add_option("--window", window, "Window radius (automatic when omitted)");

  auto* conv_cmd = app.add_subcommand("convolve", "Sample t -> f(psi(. - t)) on a grid (CSV)");
  conv_cmd->add_option("distribution", dist_path)->required()->check(CLI::ExistingFile);
  conv_cmd->add_option("test-function", fn_path)->required()->check(CLI::ExistingFile);
  conv_cmd->add_option("--window", window, "Grid half-width")->required()->check(CLI::PositiveNumber);
  conv_cmd->add_option("--step", step, "Grid step")->required()->check(CLI::PositiveNumber);

  auto* ap_cmd = app.add_subcommand("almost-periods", "epsilon-almost periods of sampled values");
  ap_cmd->add_option("samples", csv_path)->required()->check(CLI::ExistingFile);
  ap_cmd->add_option("--eps", eps, "Tolerance")->required()->check(CLI::PositiveNumber);
  ap_cmd->add_option("--shift", shift, "Largest candidate |tau| (default: half the grid half-width)");

  auto* geo_cmd = app.add_subcommand("geometry", "Separation, counting, density and finite type of a point set");
  geo_cmd->add_option("points", points_path)->required()->check(CLI::ExistingFile);
  geo_cmd->add_option("--diff", diff, "Difference-set range (default: window / 4)");

  auto* detect_cmd = app.add_subcommand("detect", "Recover a crystal from a point set");
  detect_cmd->add_option("points", points_path)->required()->check(CLI::ExistingFile);

  auto* verify_cmd = app.add_subcommand("verify", "Check the structure-theorem hypotheses on a window");
  verify_cmd->add_option("distribution", dist_path)->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--window", window, "Window radius")->required()->check(CLI::PositiveNumber);

  auto* gallery_cmd = app.add_subcommand("gallery", "List or emit example distributions");
  gallery_cmd->add_option("action", gallery_action)->required()->check(CLI::IsMember({"list", "emit"}));
  gallery_cmd->add_option("name", gallery_name);
  gallery_cmd->add_option("--param", params, "key=value (repeatable)");
  gallery_cmd->add_option("--what", what, "distribution, points or crystal")
      ->check(CLI::IsMember({"distribution", "points", "crystal"}))
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  set_thread_count(threads);
  try {
    if (*spectrum_cmd) {
      const auto F = spectrum(distribution_from_json(read_file(dist_path)));
      if (format == "csv") {
        std::ostringstream s;
        write_spectrum_csv(s, F, radius);
        emit(out, output, s.str());
      } else {
        emit(out, output, to_json(F));
      }
    } else if (*pair_cmd) {
      const auto f = distribution_from_json(read_file(dist_path));
      const auto phi = test_function_from_json(read_file(fn_path));
      const Window w = window > 0.0 ? Window::ball(f.dim(), window) : auto_window(f, phi);
      const Complex v = pair(f, phi, w);
      const auto detail = pair_detailed(f, phi, w);
      emit(out, output,
           json{{"type", "pair"},
                {"value", json::array({v.real(), v.imag()})},
                {"windowRadius", w.radius},
                {"windowTail", detail.window_tail},
                {"seriesTail", detail.series_tail}}
                   .dump(2) +
               "\n");
    } else if (*conv_cmd) {
      const auto f = distribution_from_json(read_file(dist_path));
      const auto psi = test_function_from_json(read_file(fn_path));
      std::ostringstream s;
      write_csv(s, sample_convolution(f, psi, Window::ball(f.dim(), window), step));
      emit(out, output, s.str());
    } else if (*ap_cmd) {
      std::ifstream in(csv_path);
      const auto g = read_csv(in);
      const auto rep = almost_periods(g, eps, shift);
      json j = json::parse(to_json(rep));
      j["maxGap"] = rep.taus.empty() ? json(nullptr)
                                     : json(max_gap(rep.taus, Window::ball(g.dim, rep.shift_radius), g.step));
      emit(out, output, j.dump(2) + "\n");
    } else if (*geo_cmd) {
      const auto a = point_set_from_json(read_file(points_path));
      const double range = diff > 0.0 ? diff : a.window_radius() / 4.0;
      const auto ft = finite_type_certificate(a, range);
      const auto dens = bounded_density(a);
      json j{{"type", "geometry"},
             {"points", a.size()},
             {"windowRadius", a.window_radius()},
             {"separatingConstant", a.size() >= 2 ? finite_or_null(separating_constant(a)) : json(nullptr)},
             {"boundedDensity", json{{"maxCount", dens.max_count}, {"probeRadius", dens.probe_radius}}},
             {"finiteType", json{{"certified", ft.certified},
                                 {"minGap", finite_or_null(ft.min_gap)},
                                 {"clusters", ft.cluster_count},
                                 {"halfWindowClusters", ft.half_window_cluster_count},
                                 {"range", range}}}};
      try {
        const auto cov = covering_radius_estimate(a);
        j["coveringRadius"] = json{{"radius", cov.radius}, {"interiorRadius", cov.interior_radius}};
      } catch (const ContractError& e) {
        j["coveringRadius"] = json{{"error", e.code()}, {"message", e.what()}};
      }
      if (diff > 0.0) {
        json pts = json::array();
        for (const auto& p : difference_set(a, diff).points()) {
          json q = json::array();
          for (int i = 0; i < p.size(); ++i) q.push_back(p[i]);
          pts.push_back(q);
        }
        j["differenceSet"] = pts;
      }
      emit(out, output, j.dump(2) + "\n");
    } else if (*detect_cmd) {
      emit(out, output, to_json(detect_crystal(point_set_from_json(read_file(points_path)))));
    } else if (*verify_cmd) {
      const auto f = distribution_from_json(read_file(dist_path));
      emit(out, output, to_json(verify_hypotheses(f, Window::ball(f.dim(), window))));
    } else if (*gallery_cmd) {
      if (gallery_action == "list") {
        json j = json::array();
        for (const auto& n : gallery_names()) j.push_back(json{{"name", n}, {"defaults", gallery_defaults(n)}});
        emit(out, output, j.dump(2) + "\n");
      } else {
        if (gallery_name.empty()) throw ContractError("invalid-argument", "gallery emit needs an entry name");
        const auto e = gallery(gallery_name, parse_params(params), seed);
        if (what == "points") {
          emit(out, output, to_json(e.points));
        } else if (what == "crystal") {
          if (!e.crystal) throw ContractError("invalid-argument", gallery_name + " has no ground-truth crystal");
          CrystalDetection d;
          d.crystal = e.crystal;
          emit(out, output, to_json(d));
        } else {
          emit(out, output, to_json(*e.distribution));
        }
      }
    }
  } catch (const ContractError& e) {
    err << json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace tempered
