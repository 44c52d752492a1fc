// Command-line front end: constants, regions, verification, scans, slices
// and binning simulations for the cognitive radio channel with common message.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crcc/binning.hpp"
#include "crcc/bounds.hpp"
#include "crcc/errors.hpp"
#include "crcc/io.hpp"
#include "crcc/polytope.hpp"
#include "crcc/regions.hpp"

namespace {

using namespace crcc;

enum Exit : int { kPass = 0, kMismatch = 1, kInput = 2, kGeometry = 3, kResource = 4 };

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

JointPmf load_pmf(const std::string& path) { return build_joint(parse_pmf_json(read_file(path))); }

int cmd_info(const std::string& pmf_path) {
  const auto pmf = load_pmf(pmf_path);
  const auto c = bound_constants(pmf);
  const auto values = c.values();
  std::cout << "bound constants (bits)\n";
  for (std::size_t i = 0; i < 16; ++i) std::cout << "  " << BoundConstants::names()[i] << "  " << fixed6(values[i]) << "\n";
  const auto th = binning_thresholds(pmf);
  std::cout << "binning thresholds (bits)\n"
            << "  U1 bin  I(U1;W1|W0)        " << fixed6(th.u1) << "\n"
            << "  W2 bin  I(W2;W1,U1|W0)     " << fixed6(th.w2) << "\n"
            << "  U2 bin  I(U2;U1,W1,W2|W0)  " << fixed6(th.u2) << "\n";
  std::cout << "correction terms (bits)\n";
  for (const auto& [name, v] : correction_terms(pmf).named()) {
    std::cout << "  " << name << std::string(20 - std::min<std::size_t>(name.size(), 19), ' ') << fixed6(v) << "\n";
  }
  return kPass;
}

int cmd_region(const std::string& pmf_path, const std::string& space, const std::string& out) {
  const auto c = bound_constants(load_pmf(pmf_path));
  const LinearSystem sys = space == "TS" ? theorem1_system(c) : theorem2_region(c);
  const VertexSet vs = enumerate_vertices(sys);
  write_file(out, region_to_json(sys, &vs));
  if (vs.empty()) {
    const auto cert = remove_redundant_detailed(sys);
    std::cerr << "region is empty";
    if (cert.infeasible && !cert.system.rows.empty()) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6g", cert.system.rows.front().rhs);
      std::cerr << ": 0 <= " << buf << " from " << cert.system.rows.front().label;
    }
    std::cerr << "\n";
    return kGeometry;
  }
  return kPass;
}

int cmd_verify(const std::string& pmf_path, const std::string& check) {
  const auto pmf = load_pmf(pmf_path);
  RegionReport rep;
  if (check == "theorem2") {
    rep = verify_theorem2(pmf);
  } else if (check == "appendixA-rx2") {
    rep = verify_appendix_a(pmf, Receiver::rx2);
  } else if (check == "appendixA-rx1") {
    rep = verify_appendix_a(pmf, Receiver::rx1);
  } else if (check.rfind("reduction:", 0) == 0) {
    rep = verify_reduction(pmf, parse_reduction_case(check.substr(10)));
  } else {
    throw InputError("unknown check " + check);
  }
  std::cout << check << ": " << format_report(rep);
  return rep.passed ? kPass : kMismatch;
}

int cmd_scan(const std::string& family_path, const std::string& out_hull, const std::string& out_cloud) {
  const auto family = parse_family_json(read_file(family_path));
  const auto result = scan_union(family);
  for (const auto& note : result.skipped) std::cerr << note << "\n";
  write_file(out_hull, region_to_json(result.hull.system, &result.hull.vertices));
  write_file(out_cloud, points_csv(rate_triple(), result.cloud));
  return kPass;
}

int cmd_slice(const std::string& region_path, const std::string& fix, const std::string& out) {
  const auto eq = fix.find('=');
  if (eq == std::string::npos) throw InputError("--fix expects NAME=VALUE");
  const std::string name = fix.substr(0, eq);
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(fix.substr(eq + 1), &used);
    if (used != fix.size() - eq - 1) throw std::invalid_argument(fix);
  } catch (const std::exception&) {
    throw InputError("--fix value is not a number: " + fix);
  }
  const auto region = parse_region_json(read_file(region_path));
  const auto poly = slice_polygon(region, name, value);
  if (poly.empty()) {
    std::cerr << "slice at " << fix << " is empty\n";
    return kGeometry;
  }
  std::vector<std::string> header;
  for (const auto& v : region.variables) {
    if (v != name) header.push_back(v);
  }
  write_file(out, points_csv(header, poly));
  return kPass;
}

std::vector<double> parse_margins(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidConfig("bad margin \"" + item + "\"");
    }
  }
  if (out.empty()) throw InvalidConfig("no margins given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate regions of the cognitive radio channel with common message"};
  app.require_subcommand(1);

  std::string pmf, out, space, check, family, out_hull, out_cloud, region, fix, which, margins;
  SimConfig sim;
  sim.bin_rate = 0.25;

  auto* info = app.add_subcommand("info", "Print the bound constants, binning thresholds and correction terms");
  info->add_option("--pmf", pmf, "Pmf file (JSON)")->required();

  auto* reg = app.add_subcommand("region", "Write the rate region of a pmf as a region file");
  reg->add_option("--pmf", pmf, "Pmf file (JSON)")->required();
  reg->add_option("--space", space, "TS (five message rates) or R (rate triple)")
      ->required()
      ->check(CLI::IsMember({"TS", "R"}));
  reg->add_option("--out", out, "Output region file")->required();

  auto* ver = app.add_subcommand("verify", "Check a derivation on one pmf");
  ver->add_option("--pmf", pmf, "Pmf file (JSON)")->required();
  ver->add_option("--check", check, "theorem2, appendixA-rx2, appendixA-rx1 or reduction:CASE")->required();

  auto* scan = app.add_subcommand("scan", "Union of regions over a parameter grid");
  scan->add_option("--family", family, "Family file (JSON)")->required();
  scan->add_option("--out-hull", out_hull, "Output hull region file")->required();
  scan->add_option("--out-cloud", out_cloud, "Output vertex cloud (CSV)")->required();

  auto* slice = app.add_subcommand("slice", "Boundary of a region at a fixed coordinate");
  slice->add_option("--region", region, "Region file (JSON)")->required();
  slice->add_option("--fix", fix, "Coordinate to fix, e.g. R0=0.1")->required();
  slice->add_option("--out", out, "Output polygon (CSV)")->required();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo bin-search success against the binning threshold");
  simulate->add_option("--pmf", pmf, "Pmf file (JSON)")->required();
  simulate->add_option("--which", which, "u1_bin, w2_bin or u2_bin")->required();
  simulate->add_option("--n", sim.n, "Block length")->required();
  simulate->add_option("--trials", sim.trials, "Trials per margin")->required();
  simulate->add_option("--eps", sim.eps, "Typicality slack")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Random seed")->required();
  simulate->add_option("--margins", margins, "Comma-separated margins in bits, ascending")->required();
  simulate->add_option("--bin-rate", sim.bin_rate, "Bin rate in bits")->capture_default_str();
  simulate->add_option("--out", out, "Output curve (CSV)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*info) return cmd_info(pmf);
    if (*reg) return cmd_region(pmf, space, out);
    if (*ver) return cmd_verify(pmf, check);
    if (*scan) return cmd_scan(family, out_hull, out_cloud);
    if (*slice) return cmd_slice(region, fix, out);
    if (*simulate) {
      sim.which = parse_bin_target(which);
      const auto curve = threshold_sweep(load_pmf(pmf), sim, parse_margins(margins));
      write_file(out, sweep_csv(curve, sim));
      return kPass;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kGeometry;
  } catch (const CodebookTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const RationalOverflow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kGeometry;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
