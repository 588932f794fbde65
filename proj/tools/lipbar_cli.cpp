// lipbar: barcodes of discretized mapping spaces and an exact DGA calculator.
//
// Verbs: target make, ph map-space, ph loops, ph components, barcode diff,
// barcode smooth, dga verify, dga certify-lower-bound, preset run.
// Exit codes: 0 = all embedded expectations pass, 1 = expectation failure,
// 2 = input error.

#include "lipbar/json_io.hpp"
#include "lipbar/mapspace.hpp"
#include "lipbar/presets.hpp"
#include "lipbar/targets.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

using namespace lipbar;

namespace {

Functional parse_functional(const std::string& s) {
    if (s == "lip") return Functional::Lip;
    if (s == "length") return Functional::Length;
    if (s == "log-lip" || s == "loglip") return Functional::LogPlusLip;
    throw Error(ErrorCode::BadInput, "unknown functional '" + s + "'");
}

// For LogPlusLip the complex is filtered by Lip exactly; log_+ is applied at
// the reporting boundary.
Json barcode_report(const Barcode& bc, Functional f) {
    if (f != Functional::LogPlusLip) return barcode_to_json(bc);
    Json bars = Json::array();
    for (const auto& b : bc.bars) {
        if (b.finite())
            bars.push_back({log_plus(b.birth), log_plus(*b.death)});
        else
            bars.push_back({log_plus(b.birth), nullptr});
    }
    return Json{{"degree", bc.degree}, {"bars", bars}, {"scale", "log+lip"}};
}

void write_barcode_artifacts(const std::string& out, const Barcode& bc, Functional f) {
    save_json_file(out, barcode_report(bc, f));
    std::filesystem::path p(out);
    std::string stem = (p.parent_path() / p.stem()).string();
    std::ofstream csv(stem + ".csv");
    csv << "degree,birth,death\n";
    for (const auto& b : bc.bars) {
        double birth = f == Functional::LogPlusLip ? log_plus(b.birth) : to_double(b.birth);
        csv << bc.degree << "," << birth << ",";
        if (b.finite())
            csv << (f == Functional::LogPlusLip ? log_plus(*b.death) : to_double(*b.death));
        else
            csv << "inf";
        csv << "\n";
    }
    std::string base = p.stem().string();
    std::ofstream plot(stem + "_plot.py");
    plot << "#!/usr/bin/env python3\n"
            "import csv, math, os\n"
            "import matplotlib\n"
            "matplotlib.use('Agg')\n"
            "import matplotlib.pyplot as plt\n"
            "here = os.path.dirname(os.path.abspath(__file__))\n"
            "bs, ds = [], []\n"
            "with open(os.path.join(here, '" << base << ".csv')) as fh:\n"
            "    for row in csv.DictReader(fh):\n"
            "        bs.append(float(row['birth']))\n"
            "        ds.append(math.inf if row['death'] == 'inf' else float(row['death']))\n"
            "top = 1.1 * max([1.0] + bs + [d for d in ds if d != math.inf])\n"
            "ds = [top if d == math.inf else d for d in ds]\n"
            "plt.plot([0, top], [0, top], 'k--', lw=0.5)\n"
            "plt.scatter(bs, ds, s=14)\n"
            "plt.xlabel('birth'); plt.ylabel('death')\n"
            "plt.savefig(os.path.join(here, '" << base << ".png'), dpi=150)\n";
    std::cout << "wrote " << out << ", " << stem << ".csv, " << stem << "_plot.py\n";
}

struct MapSpaceArgs {
    std::string domain_path, target_path, out = "barcode.json";
    std::string functional = "lip";
    std::string cap = "1";
    int degree = 0;
    int steps = 6;
    bool free_loops = false;
    int domain_basepoint = 0, target_basepoint = 0;
    int top_dim = 2;
    int workers = 1;
};

int run_mapspace(const MapSpaceArgs& a, bool loops_mode, bool components_mode,
                 const std::string& at_level) {
    MetricComplex domain, target;
    target = metric_complex_from_json(load_json_file(a.target_path));
    if (loops_mode)
        domain = cycle_graph(a.steps, Rat(a.steps));
    else
        domain = metric_complex_from_json(load_json_file(a.domain_path));
    MapComplexSpec spec;
    spec.domain = &domain;
    spec.target = &target;
    spec.functional = parse_functional(a.functional);
    spec.cap = rat_parse(a.cap);
    spec.based = !a.free_loops;
    spec.domain_basepoint = static_cast<Vertex>(a.domain_basepoint);
    spec.target_basepoint = static_cast<Vertex>(a.target_basepoint);
    spec.top_dim = a.top_dim;
    spec.workers = a.workers;
    spec.explosion_limit = explosion_limit_from_env();
    if (components_mode) {
        int c = count_components(spec, rat_parse(at_level));
        std::cout << "components at " << at_level << ": " << c << "\n";
        return 0;
    }
    auto bc = ph_of_mapspace(spec, a.degree);
    write_barcode_artifacts(a.out, bc, spec.functional);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"barcodes of discretized Lipschitz mapping spaces"};
    app.require_subcommand(1);

    // ---- target make ----------------------------------------------------
    auto* target = app.add_subcommand("target", "target-space generators");
    auto* make = target->add_subcommand("make", "generate a target complex as JSON");
    std::string make_name, make_out = "target.json";
    std::vector<std::string> make_params;
    make->add_option("name", make_name,
                     "flat-torus | figure-eight | octahedron | bubble | cycle")
        ->required();
    make->add_option("params", make_params, "generator parameters");
    make->add_option("--out", make_out, "output path");

    // ---- ph -------------------------------------------------------------
    auto* ph = app.add_subcommand("ph", "persistent homology of mapping spaces");
    MapSpaceArgs ms;
    auto* mapspace_cmd = ph->add_subcommand("map-space", "PH of Lip(X,Y)");
    mapspace_cmd->add_option("--domain", ms.domain_path)->required();
    mapspace_cmd->add_option("--target", ms.target_path)->required();
    mapspace_cmd->add_option("--functional", ms.functional, "lip | length | log-lip");
    mapspace_cmd->add_option("--cap", ms.cap, "filtration cap (rational, lip-scale for log-lip)");
    mapspace_cmd->add_option("--degree", ms.degree);
    mapspace_cmd->add_option("--out", ms.out);
    mapspace_cmd->add_flag("--free", ms.free_loops, "no basepoint pin");
    mapspace_cmd->add_option("--domain-basepoint", ms.domain_basepoint);
    mapspace_cmd->add_option("--target-basepoint", ms.target_basepoint);
    mapspace_cmd->add_option("--top-dim", ms.top_dim);
    mapspace_cmd->add_option("--workers", ms.workers);

    MapSpaceArgs lp;
    lp.functional = "length";
    auto* loops_cmd = ph->add_subcommand("loops", "PH of the discrete loop space");
    loops_cmd->add_option("--target", lp.target_path)->required();
    loops_cmd->add_option("--steps", lp.steps, "loop steps N");
    loops_cmd->add_option("--functional", lp.functional);
    loops_cmd->add_option("--cap", lp.cap);
    loops_cmd->add_option("--degree", lp.degree);
    loops_cmd->add_option("--out", lp.out);
    loops_cmd->add_flag("--free", lp.free_loops);
    loops_cmd->add_option("--target-basepoint", lp.target_basepoint);
    loops_cmd->add_option("--top-dim", lp.top_dim);
    loops_cmd->add_option("--workers", lp.workers);

    MapSpaceArgs cp;
    cp.functional = "length";
    std::string at_level = "1";
    auto* comps_cmd = ph->add_subcommand("components", "sublevel component count");
    comps_cmd->add_option("--target", cp.target_path)->required();
    comps_cmd->add_option("--steps", cp.steps);
    comps_cmd->add_option("--functional", cp.functional);
    comps_cmd->add_option("--at", at_level, "level L")->required();
    comps_cmd->add_flag("--free", cp.free_loops);
    comps_cmd->add_option("--target-basepoint", cp.target_basepoint);
    comps_cmd->add_option("--workers", cp.workers);

    // ---- barcode ----------------------------------------------------------
    auto* barcode = app.add_subcommand("barcode", "diagram metrics");
    std::string diff_a, diff_b;
    bool diff_witness = false;
    auto* diff_cmd = barcode->add_subcommand("diff", "bottleneck distance");
    diff_cmd->add_option("A", diff_a)->required();
    diff_cmd->add_option("B", diff_b)->required();
    diff_cmd->add_flag("--witness", diff_witness, "print the witness matching as JSON");

    std::string smooth_in, smooth_out = "smoothed.json", smooth_eps = "0";
    auto* smooth_cmd = barcode->add_subcommand("smooth", "epsilon-smoothing");
    smooth_cmd->add_option("D", smooth_in)->required();
    smooth_cmd->add_option("--eps", smooth_eps)->required();
    smooth_cmd->add_option("--out", smooth_out);

    // ---- dga --------------------------------------------------------------
    auto* dga = app.add_subcommand("dga", "exact DGA calculator");
    std::string dga_model = "s3vs3", dga_example = "eta_L", dga_L = "2";
    bool dga_symbolic = false;
    auto* verify_cmd = dga->add_subcommand("verify", "check a built-in homotopy");
    verify_cmd->add_option("--model", dga_model, "s3vs3");
    verify_cmd->add_option("--example", dga_example, "eta_L | eta_L2");
    verify_cmd->add_option("--L", dga_L, "scale (rational)");
    verify_cmd->add_flag("--symbolic", dga_symbolic, "check identically in L");

    std::string cert_L = "2", beta_path, beta2_path;
    auto* cert_cmd = dga->add_subcommand("certify-lower-bound", "forced-coefficient bounds");
    cert_cmd->add_option("--L", cert_L);
    cert_cmd->add_option("--beta", beta_path, "piecewise polynomial JSON");
    cert_cmd->add_option("--beta2", beta2_path, "second path (two-variable certificate)");

    // ---- preset -----------------------------------------------------------
    auto* preset = app.add_subcommand("preset", "canned experiments");
    std::string preset_name, preset_out = "out";
    std::string preset_L = "2";
    int preset_workers = 1;
    auto* run_cmd = preset->add_subcommand("run", "run a named preset");
    run_cmd->add_option("name", preset_name)->required();
    run_cmd->add_option("--out", preset_out, "artifact directory");
    run_cmd->add_option("--L", preset_L, "scale parameter for DGA presets");
    run_cmd->add_option("--workers", preset_workers);
    auto* list_cmd = preset->add_subcommand("list", "list preset names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (make->parsed()) {
            MetricComplex mc;
            auto p = [&](size_t i, const char* fallback) {
                return i < make_params.size() ? rat_parse(make_params[i]) : rat_parse(fallback);
            };
            auto pi = [&](size_t i, int fallback) {
                return i < make_params.size() ? std::stoi(make_params[i]) : fallback;
            };
            if (make_name == "flat-torus")
                mc = flat_torus(pi(0, 3), pi(1, 3), p(2, "3"), p(3, "3"));
            else if (make_name == "figure-eight")
                mc = figure_eight(p(0, "1"), p(1, "1"), pi(2, 3));
            else if (make_name == "octahedron")
                mc = octahedron_sphere();
            else if (make_name == "bubble")
                mc = bubble_sphere(p(0, "1/2"));
            else if (make_name == "cycle")
                mc = cycle_graph(pi(0, 6), p(1, "6"));
            else if (make_name == "wedge") {
                if (make_params.size() < 2)
                    throw Error(ErrorCode::BadInput, "wedge needs two target JSON paths");
                auto y1 = metric_complex_from_json(load_json_file(make_params[0]));
                auto y2 = metric_complex_from_json(load_json_file(make_params[1]));
                mc = wedge(y1, y2);
            } else
                throw Error(ErrorCode::BadInput, "unknown target '" + make_name + "'");
            save_json_file(make_out, metric_complex_to_json(mc));
            std::cout << "wrote " << make_out << " (" << mc.vertex_count << " vertices, "
                      << mc.edges.size() << " edges, diameter " << rat_str(mc.diameter) << ")\n";
            return 0;
        }
        if (mapspace_cmd->parsed()) return run_mapspace(ms, false, false, "");
        if (loops_cmd->parsed()) return run_mapspace(lp, true, false, "");
        if (comps_cmd->parsed()) return run_mapspace(cp, true, true, at_level);

        if (diff_cmd->parsed()) {
            auto da = barcode_from_json(load_json_file(diff_a));
            auto db = barcode_from_json(load_json_file(diff_b));
            auto r = bottleneck_distance(da, db);
            if (r.infinite)
                std::cout << "bottleneck distance: inf (different infinite-bar counts)\n";
            else
                std::cout << "bottleneck distance: " << rat_str(r.value) << " ("
                          << r.to_double() << ")\n";
            if (diff_witness && !r.infinite)
                std::cout << matching_to_json(r.matching).dump(2) << "\n";
            return 0;
        }
        if (smooth_cmd->parsed()) {
            auto d = barcode_from_json(load_json_file(smooth_in));
            auto s = smooth(d, rat_parse(smooth_eps));
            save_json_file(smooth_out, barcode_to_json(s));
            std::cout << "wrote " << smooth_out << " (" << s.bars.size() << " bars)\n";
            return 0;
        }

        if (verify_cmd->parsed()) {
            if (dga_model != "s3vs3")
                throw Error(ErrorCode::BadInput, "unknown model '" + dga_model + "'");
            auto M = s3_wedge_s3_model();
            bool ok;
            double dil = 0;
            if (dga_symbolic) {
                if (dga_example == "eta_L") {
                    auto A = cohomology_cp2_s3();
                    auto s = scenario_eta_L<PolyL>(M, A, PolyL::monomial(1));
                    ok = check_homotopy(M, A, s.eta, s.phi, s.psi).ok;
                } else if (dga_example == "eta_L2") {
                    auto B = cohomology_s2s2_s3s3();
                    auto s = scenario_eta_L2<PolyL>(M, B, PolyL::monomial(1));
                    ok = check_homotopy(M, B, s.eta, s.phi, s.psi).ok;
                } else {
                    throw Error(ErrorCode::BadInput, "unknown example '" + dga_example + "'");
                }
                std::cout << "homotopy check (symbolic in L): " << (ok ? "valid" : "INVALID")
                          << "\n";
            } else {
                Rat L = rat_parse(dga_L);
                if (dga_example == "eta_L") {
                    auto A = cohomology_cp2_s3();
                    auto s = scenario_eta_L<Rat>(M, A, L);
                    ok = check_homotopy(M, A, s.eta, s.phi, s.psi).ok;
                    dil = dilatation(s.eta).value();
                } else if (dga_example == "eta_L2") {
                    auto B = cohomology_s2s2_s3s3();
                    auto s = scenario_eta_L2<Rat>(M, B, L);
                    ok = check_homotopy(M, B, s.eta, s.phi, s.psi).ok;
                    dil = dilatation(s.eta).value();
                } else {
                    throw Error(ErrorCode::BadInput, "unknown example '" + dga_example + "'");
                }
                std::cout << "homotopy check at L = " << rat_str(L) << ": "
                          << (ok ? "valid" : "INVALID") << ", Dil ~ " << dil << "\n";
            }
            return ok ? 0 : 1;
        }
        if (cert_cmd->parsed()) {
            Rat L = rat_parse(cert_L);
            if (!beta2_path.empty()) {
                auto b1 = beta_path.empty()
                              ? PiecewisePoly<Rat>{Poly({Rat(0), Rat(1)})}
                              : piecewise_from_json(load_json_file(beta_path));
                auto b2 = piecewise_from_json(load_json_file(beta2_path));
                auto cert = forced_two_variable_certificate(L, b1, b2);
                std::cout << "max_t (|b1(1-b2)| + |b2(1-b1)|) ~ " << cert.sum_max.to_double()
                          << "\ncertified >= 1/6: " << (cert.certified ? "yes" : "NO")
                          << "\ncoefficient bound: L^12/6 = " << rat_str(cert.coefficient_bound)
                          << "\n";
                return cert.certified ? 0 : 1;
            }
            Rat L6 = rat_pow(L, 6);
            auto beta = beta_path.empty()
                            ? PiecewisePoly<Rat>{Poly({-L6, 2 * L6})}
                            : piecewise_from_json(load_json_file(beta_path));
            auto cert = forced_c2_certificate(L, beta);
            std::cout << "sup_t |L^12 - beta^2/2| ~ " << cert.sup.to_double()
                      << "\ncertified >= L^12 = " << rat_str(cert.lower_bound) << ": "
                      << (cert.certified ? "yes" : "NO") << "\nwitness zero of beta in ["
                      << rat_str(cert.root_lo) << ", " << rat_str(cert.root_hi) << "]\n";
            return cert.certified ? 0 : 1;
        }

        if (list_cmd->parsed()) {
            for (const auto& n : preset_names()) std::cout << n << "\n";
            return 0;
        }
        if (run_cmd->parsed()) {
            PresetOptions opt;
            opt.out_dir = preset_out;
            opt.L = rat_parse(preset_L);
            opt.workers = preset_workers;
            auto rep = run_preset(preset_name, opt);
            std::cout << "preset " << rep.name << ":\n";
            for (const auto& l : rep.lines) std::cout << "  " << l << "\n";
            for (const auto& a : rep.artifacts) std::cout << "  wrote " << a << "\n";
            return (!rep.has_expectation || rep.passed) ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
