#include "cli_config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "swg/errors.hpp"
#include "swg/studies.hpp"
#include "swg/version.hpp"

namespace swg::cli {

namespace {

struct AppBundle {
    CLI::App app{"1D shallow water Galerkin/RK4 solver and convergence studies", "swg"};
    RunConfig cfg;

    AppBundle() {
        app.require_subcommand(1);
        app.set_version_flag("--version", std::string("swg ") + kVersion);
        app.set_config("--config", "", "Read options from an INI/TOML file");

        auto add_common = [&](CLI::App* sub) {
            sub->add_option("--r", cfg.r, "Spline order r (degree r-1)")
                ->check(CLI::Range(3, 12))
                ->capture_default_str();
            sub->add_option("--mu", cfg.mu, "Smoothness C^mu (default r-2)")
                ->check(CLI::Range(1, 10));
            sub->add_option("--mesh", cfg.mesh, "Mesh family: uniform | quasi-a | quasi-b")
                ->check(CLI::IsMember({"uniform", "quasi-a", "quasi-b"}))
                ->capture_default_str();
            sub->add_option("--output", cfg.output, "Output CSV path");
            sub->add_option("--quad-points", cfg.quad_points,
                            "Gauss points per element (default r+2)")
                ->check(CLI::Range(0, 32));
            sub->add_option("--linf-samples", cfg.linf_samples,
                            "Linf sampling points per element")
                ->check(CLI::Range(1, 1000))
                ->capture_default_str();
            sub->add_option("--jobs", cfg.jobs, "Worker threads for study rows (0 = auto)")
                ->check(CLI::Range(0, 256));
            sub->configurable();
            sub->fallthrough();  // lets --config appear after the subcommand
        };
        auto add_time = [&](CLI::App* sub) {
            auto* l = sub->add_option("--lambda", cfg.lambda,
                                      "Courant number k/h_max (default 0.05)");
            auto* kk = sub->add_option("--k", cfg.k, "Time step");
            auto* mm = sub->add_option("--M", cfg.steps, "Number of time steps");
            l->excludes(kk)->excludes(mm);
            kk->excludes(l)->excludes(mm);
            mm->excludes(l)->excludes(kk);
            sub->add_option("--T", cfg.T, "Final time")->capture_default_str();
        };

        CLI::App* solve = app.add_subcommand("solve", "Single run, write a solution snapshot");
        add_common(solve);
        add_time(solve);
        solve->add_option("--N", cfg.n_list, "Number of mesh elements")
            ->required()
            ->expected(1);
        solve->add_option("--mms", cfg.mms,
                          "Manufactured solution id (1|2), or 0 for zero data and no forcing")
            ->check(CLI::Range(0, 2))
            ->capture_default_str();

        CLI::App* spatial =
            app.add_subcommand("spatial-study", "Spatial convergence rates against the exact solution");
        add_common(spatial);
        add_time(spatial);
        spatial->add_option("--N", cfg.n_list, "Comma-separated list of mesh sizes")
            ->required()
            ->delimiter(',');
        spatial->add_option("--mms", cfg.mms, "Manufactured solution id (1|2)")
            ->check(CLI::Range(1, 2))
            ->capture_default_str();

        CLI::App* temporal =
            app.add_subcommand("temporal-study", "Temporal rates via a fine reference run");
        add_common(temporal);
        temporal->add_option("--N", cfg.n_list, "Number of mesh elements (fixed spatial grid)")
            ->required()
            ->expected(1);
        temporal->add_option("--M", cfg.m_list, "Comma-separated list of step counts")
            ->required()
            ->delimiter(',');
        temporal->add_option("--M-ref", cfg.m_ref, "Reference step count (must exceed every M)")
            ->required();
        temporal->add_option("--T", cfg.T, "Final time")->capture_default_str();
        temporal->add_option("--mms", cfg.mms, "Manufactured solution id (1|2)")
            ->check(CLI::Range(1, 2))
            ->capture_default_str();

        CLI::App* projection =
            app.add_subcommand("projection-study", "Projection error norms up to H^3");
        add_common(projection);
        projection->add_option("--N", cfg.n_list, "Comma-separated list of mesh sizes")
            ->required()
            ->delimiter(',');
        projection->add_option("--target", cfg.target, "Projection target: smooth | nonsmooth")
            ->check(CLI::IsMember({"smooth", "nonsmooth"}))
            ->capture_default_str();
    }
};

void validate(RunConfig& cfg) {
    if (cfg.mu == 0) cfg.mu = cfg.r - 2;
    if (cfg.mu < 1 || cfg.mu > cfg.r - 2)
        throw UsageError("--mu must satisfy 1 <= mu <= r-2");
    if (!(cfg.T > 0.0)) throw UsageError("--T must be positive");

    const MeshFamily family = parse_family(cfg.mesh);
    for (int n : cfg.n_list) {
        if (n < 1) throw UsageError("--N values must be positive");
        try {
            make_mesh(family, n);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }

    const bool time_stepped = cfg.command == "solve" || cfg.command == "spatial-study";
    if (time_stepped) {
        const int engaged = (cfg.lambda ? 1 : 0) + (cfg.k ? 1 : 0) + (cfg.steps ? 1 : 0);
        if (engaged == 0) cfg.lambda = 0.05;
        if (engaged > 1) throw UsageError("give exactly one of --lambda, --k, --M");
        if (cfg.lambda && !(*cfg.lambda > 0.0)) throw UsageError("--lambda must be positive");
        if (cfg.k && !(*cfg.k > 0.0)) throw UsageError("--k must be positive");
        if (cfg.steps && *cfg.steps < 1) throw UsageError("--M must be positive");
    }
    if (cfg.command == "temporal-study") {
        if (cfg.m_list.empty()) throw UsageError("--M list must not be empty");
        for (int m : cfg.m_list) {
            if (m < 1) throw UsageError("--M values must be positive");
        }
        const int m_max = *std::max_element(cfg.m_list.begin(), cfg.m_list.end());
        if (cfg.m_ref <= m_max)
            throw UsageError("--M-ref must exceed every --M value (got " +
                             std::to_string(cfg.m_ref) + " <= " + std::to_string(m_max) + ")");
    }
    if (cfg.mms == 0 && cfg.command != "solve")
        throw UsageError("--mms 0 (no forcing) is only meaningful for solve");
    if (cfg.command == "projection-study" && cfg.r < 4)
        throw UsageError("projection-study needs r >= 4 for the H^3 norms");
}

std::string join_args(const std::vector<std::string>& args) {
    std::string s;
    for (const auto& a : args) {
        if (!s.empty()) s += ' ';
        s += a;
    }
    return s;
}

std::string join_ints(const std::vector<int>& values) {
    std::string s;
    for (int v : values) {
        if (!s.empty()) s += ',';
        s += std::to_string(v);
    }
    return s;
}

std::string fmt_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);  // shortest round trip
    return std::string(buf, res.ptr);
}

std::filesystem::path default_output(const std::string& command) {
    std::filesystem::path dir;
    if (const char* env = std::getenv("SWG_OUTPUT_DIR"); env && *env) dir = env;
    return dir / (command + ".csv");
}

std::filesystem::path plot_path(const std::filesystem::path& csv) {
    std::filesystem::path p = csv;
    p.replace_extension();
    p += "_plot.csv";
    return p;
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& fn) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    fn(out);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

int run_study(const RunConfig& cfg) {
    const MeshFamily family = parse_family(cfg.mesh);
    const SpaceParams space{cfg.r, cfg.mu};
    const StudyOptions opts{cfg.quad_points, cfg.linf_samples, cfg.jobs};

    RateTable table;
    if (cfg.command == "spatial-study") {
        table = spatial_study(space, family, cfg.n_list, TimeSpec{cfg.lambda, cfg.k, cfg.steps},
                              cfg.T, cfg.mms, opts);
    } else if (cfg.command == "temporal-study") {
        table = temporal_study(space, family, cfg.n_list.at(0), cfg.m_list, cfg.m_ref, cfg.T,
                               cfg.mms, opts);
    } else {
        table = projection_study(space, family, cfg.n_list,
                                 cfg.target == "smooth" ? ProjectionTarget::smooth
                                                        : ProjectionTarget::nonsmooth,
                                 opts);
    }
    table.metadata.insert(table.metadata.begin(), {"invocation", join_args(to_args(cfg))});

    const std::filesystem::path out =
        cfg.output.empty() ? default_output(cfg.command) : std::filesystem::path(cfg.output);
    write_file(out, [&](std::ostream& os) { table.write_csv(os); });
    write_file(plot_path(out), [&](std::ostream& os) { table.write_plot(os); });

    table.print(std::cout);
    for (const auto& [key, value] : table.metadata) {
        if (key.rfind("E_ref", 0) == 0) std::cout << key << " = " << value << "\n";
    }
    std::cout << "wrote " << out.string() << " and " << plot_path(out).string() << "\n";
    return table.any_diverged() ? 3 : 0;
}

int run_solve(const RunConfig& cfg) {
    const MeshFamily family = parse_family(cfg.mesh);
    const Mesh mesh = make_mesh(family, cfg.n_list.at(0));
    const SplineSpace eta_space(mesh, cfg.r, cfg.mu, false);
    const SplineSpace vel_space(mesh, cfg.r, cfg.mu, true);
    const SwSystem sys(eta_space, vel_space, cfg.quad_points);

    const auto [k, m] = TimeSpec{cfg.lambda, cfg.k, cfg.steps}.resolve(mesh.h_max(), cfg.T);

    State s0;
    const Forcing* forcing = nullptr;
    const ManufacturedSolution* mms = nullptr;
    if (cfg.mms != 0) {
        mms = &manufactured_solution(cfg.mms);
        forcing = &mms->forcing;
        s0 = sys.initial_state([&](double x) { return mms->eta(x, 0.0); },
                               [&](double x) { return mms->u(x, 0.0); });
    } else {
        s0 = sys.initial_state([](double) { return 0.0; }, [](double) { return 0.0; });
    }

    std::vector<std::pair<std::string, std::string>> meta = {
        {"invocation", join_args(to_args(cfg))},
        {"k", fmt_double(k)},
        {"M", std::to_string(m)},
        {"t", fmt_double(cfg.T)}};

    const std::filesystem::path out =
        cfg.output.empty() ? default_output(cfg.command) : std::filesystem::path(cfg.output);
    try {
        const State sT = sys.evolve(s0, k, m, forcing);
        write_file(out, [&](std::ostream& os) {
            write_snapshot_csv(os, sT, cfg.linf_samples, meta);
        });
        if (mms) {
            ScalarField eta_exact{[&](double x) { return mms->eta(x, cfg.T); },
                                  [&](double x) { return mms->eta_x(x, cfg.T); },
                                  {}, {}, {}};
            ScalarField u_exact{[&](double x) { return mms->u(x, cfg.T); },
                                [&](double x) { return mms->u_x(x, cfg.T); },
                                {}, {}, {}};
            const ErrorNorms ee =
                error_norms(sT.eta, eta_exact, 1, cfg.linf_samples, cfg.quad_points);
            const ErrorNorms eu =
                error_norms(sT.vel, u_exact, 1, cfg.linf_samples, cfg.quad_points);
            std::printf("L2(eta) = %.10e  Linf(eta) = %.10e  H1(eta) = %.10e\n", ee.l2, ee.linf,
                        ee.h1);
            std::printf("L2(u)   = %.10e  Linf(u)   = %.10e  H1(u)   = %.10e\n", eu.l2, eu.linf,
                        eu.h1);
        }
        std::cout << "wrote " << out.string() << "\n";
        return 0;
    } catch (const BlowUpError& e) {
        std::cerr << "diverged: " << e.what() << " (k = " << k << ", M = " << m << ")\n";
        return 3;
    }
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    AppBundle bundle;
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        bundle.app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::cout << bundle.app.help();
        throw ExitRequest{e.get_exit_code()};
    } catch (const CLI::CallForAllHelp& e) {
        std::cout << bundle.app.help("", CLI::AppFormatMode::All);
        throw ExitRequest{e.get_exit_code()};
    } catch (const CLI::CallForVersion& e) {
        std::cout << bundle.app.version() << "\n";
        throw ExitRequest{e.get_exit_code()};
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(e.get_name()) + ": " + e.what());
    }
    bundle.cfg.command = bundle.app.get_subcommands().at(0)->get_name();
    validate(bundle.cfg);
    return bundle.cfg;
}

std::vector<std::string> to_args(const RunConfig& cfg) {
    std::vector<std::string> args{cfg.command};
    auto push = [&](const std::string& flag, const std::string& value) {
        args.push_back(flag);
        args.push_back(value);
    };
    push("--r", std::to_string(cfg.r));
    push("--mu", std::to_string(cfg.mu));
    push("--mesh", cfg.mesh);
    if (!cfg.n_list.empty()) push("--N", join_ints(cfg.n_list));
    if (cfg.command == "temporal-study") {
        push("--M", join_ints(cfg.m_list));
        push("--M-ref", std::to_string(cfg.m_ref));
    } else if (cfg.command != "projection-study") {
        if (cfg.lambda) push("--lambda", fmt_double(*cfg.lambda));
        if (cfg.k) push("--k", fmt_double(*cfg.k));
        if (cfg.steps) push("--M", std::to_string(*cfg.steps));
    }
    if (cfg.command == "projection-study") {
        push("--target", cfg.target);
    } else {
        push("--T", fmt_double(cfg.T));
        push("--mms", std::to_string(cfg.mms));
    }
    if (!cfg.output.empty()) push("--output", cfg.output);
    if (cfg.quad_points != 0) push("--quad-points", std::to_string(cfg.quad_points));
    push("--linf-samples", std::to_string(cfg.linf_samples));
    if (cfg.jobs != 0) push("--jobs", std::to_string(cfg.jobs));
    return args;
}

int run(const RunConfig& cfg) {
    try {
        if (cfg.command == "solve") return run_solve(cfg);
        return run_study(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace swg::cli
