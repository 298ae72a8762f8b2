#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "spaceform/mesh_export.hpp"
#include "spaceform/suites.hpp"

// spaceform: samples the surface catalog, runs the verification suites,
// explores the leaf space, generates members of the non-symmetric family,
// and exports meshes/CSV.  Exit codes: 0 all checks pass, 1 check failure,
// 2 usage or domain error.

namespace {

using namespace spaceform;

int write_report(const Report& rep, const std::string& path, bool quiet) {
  if (!quiet) std::cout << rep.to_text();
  if (!path.empty()) {
    std::ofstream f(path);
    if (!f) {
      std::cerr << "cannot write report: " << path << "\n";
      return 2;
    }
    f << rep.to_json();
  }
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification and sampling tool for rank-two constant-scalar-curvature "
               "hypersurface geometry"};
  app.require_subcommand(1);
  app.fallthrough();

  unsigned long long seed = 1;
  std::string report_path;
  bool quiet = false;
  app.add_option("--seed", seed, "random seed for all sampling");
  app.add_option("--report", report_path, "write the JSON report here");
  app.add_flag("--quiet", quiet, "suppress per-check terminal output");

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string surface;
  bool verify_all = false;
  int c = 1;
  double tol_scale = 1.0;
  verify->add_option("--surface", surface, "immersion id (veronese, clifford_polar, rot_polar, "
                     "sphere_chart, rot_hyper, clifford_hyper, cartan, h5_polar, h5_hyper)");
  verify->add_flag("--all", verify_all, "run every suite");
  verify->add_option("--c", c, "space-form curvature sign")->check(CLI::IsMember({1, -1}));
  verify->add_option("--tol-scale", tol_scale, "tighten tolerances by this factor (0 < s <= 1)");

  // leaf
  auto* leaf = app.add_subcommand("leaf", "classify and sample a leaf of the quotient foliation");
  double R = 0.12;
  int leaf_n = 40;
  std::string csv_path;
  leaf->add_option("--c", c, "space-form curvature sign")->check(CLI::IsMember({1, -1}));
  leaf->add_option("--R", R, "leaf level in (0, 4/27)");
  leaf->add_option("--n", leaf_n, "sampling grid resolution");
  leaf->add_option("--csv", csv_path, "write the point cloud (u0,u1,u2,L) here");

  // generate
  auto* gen = app.add_subcommand("generate", "integrate a family surface patch");
  int n1 = 30, n2 = 30;
  double span = 1.0, gen_step = 1e-3;
  std::string gen_format = "obj";
  std::string out_prefix = "surface";
  gen->add_option("--c", c, "space-form curvature sign")->check(CLI::IsMember({1, -1}));
  gen->add_option("--R", R, "leaf level in (0, 4/27)");
  gen->add_option("--n1", n1, "lattice size along E1");
  gen->add_option("--n2", n2, "lattice size along E2");
  gen->add_option("--span", span, "arclength span of the patch");
  gen->add_option("--step", gen_step, "integrator step");
  gen->add_option("--export", gen_format, "mesh format")->check(CLI::IsMember({"obj", "ply", "csv"}));
  gen->add_option("--out", out_prefix, "output file prefix");

  // export
  auto* exp = app.add_subcommand("export", "sample a catalog immersion to disk");
  std::string exp_surface = "rot_polar";
  std::string exp_format = "obj";
  std::string exp_out = "mesh";
  int exp_n = 64;
  exp->add_option("--surface", exp_surface, "immersion id");
  exp->add_option("--c", c, "space-form curvature sign")->check(CLI::IsMember({1, -1}));
  exp->add_option("--format", exp_format, "obj, ply, or csv")
      ->check(CLI::IsMember({"obj", "ply", "csv"}));
  exp->add_option("--n", exp_n, "grid resolution");
  exp->add_option("--out", exp_out, "output path (extension appended)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) {
      if (tol_scale <= 0.0 || tol_scale > 1.0) {
        std::cerr << "tolerances may only be tightened: 0 < --tol-scale <= 1\n";
        return 2;
      }
      Report rep = verify_all ? run_verify_all(seed, tol_scale)
                              : run_verify_surface(surface, c, seed, tol_scale);
      return write_report(rep, report_path, quiet);
    }

    if (leaf->parsed()) {
      const LeafClass cls = leaf_classify(R, c);
      Report rep;
      rep.command = "leaf";
      rep.seed = seed;
      rep.append(make_check("leaf/level", "R inside (0, 4/27)", R, R, 0.0));
      if (c == 1) {
        std::cout << "topology: pair_of_pants_union, waist radius "
                  << format_double(cls.waist_radius) << "\n";
        const double check = std::pow(9 * cls.waist_radius * cls.waist_radius + 2.0, 2) /
                             std::pow(9 * cls.waist_radius * cls.waist_radius + 3.0, 3);
        rep.append(make_check("leaf/waist", "circle law at the waist radius", R, check, 1e-12));
      } else {
        std::cout << "topology: two_cylinders\n";
      }
      if (!csv_path.empty()) write_leaf_csv(csv_path, sample_leaf(c, R, leaf_n));
      return write_report(rep, report_path, quiet);
    }

    if (gen->parsed()) {
      const GeneratedSurface gs = generate_surface(c, R, n1, n2, span, span, gen_step);
      const GridMesh mesh = grid_from_generated(gs);
      if (gen_format == "obj") write_obj(out_prefix + ".obj", mesh);
      else if (gen_format == "ply") write_ply(out_prefix + ".ply", mesh);
      else write_csv(out_prefix + ".csv", mesh);
      write_curvature_csv(out_prefix + "_curvature.csv", gs);
      Report rep;
      rep.command = "generate";
      rep.seed = seed;
      rep.append(verify_generated(gs));
      std::cout << "wrote " << out_prefix << "." << gen_format << " and sidecar curvature CSV\n";
      return write_report(rep, report_path, quiet);
    }

    if (exp->parsed()) {
      if (exp_surface == "beta") {
        write_beta_csv(exp_out + ".csv", exp_n);
        std::cout << "wrote " << exp_out << ".csv\n";
        return 0;
      }
      const Immersion id = immersion_from_name(exp_surface);
      const ChartMap chart = make_chart(id, c);
      if (chart.nparams == 2) {
        const GridSpec g = default_grid(chart, exp_n, exp_n);
        const GridMesh mesh = sample_grid(chart, g);
        if (exp_format == "obj") write_obj(exp_out + ".obj", mesh);
        else if (exp_format == "ply") write_ply(exp_out + ".ply", mesh);
        else write_csv(exp_out + ".csv", mesh);
      } else {
        // point cloud with crease flags for the hypersurface charts
        write_hyper_cloud_csv(exp_out + ".csv", chart, exp_n, 16, 8, 0.05);
      }
      std::cout << "wrote " << exp_out << "." << (chart.nparams == 2 ? exp_format : "csv") << "\n";
      return 0;
    }
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
