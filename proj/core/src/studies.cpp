#include "swg/studies.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "swg/errors.hpp"
#include "swg/nonsmooth.hpp"
#include "swg/version.hpp"

namespace swg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

// Run body(0..n_rows-1), each row exactly once, on up to `threads` workers.
// Rows write only their own slots, so results do not depend on scheduling.
void parallel_rows(int n_rows, int threads, const std::function<void(int)>& body) {
    int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::clamp(n_threads, 1, n_rows);
    if (n_threads == 1) {
        for (int i = 0; i < n_rows; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n_rows) return;
            try {
                body(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed) std::rethrow_exception(error);
}

ScalarField exact_component_at(const std::function<double(double, double)>& f,
                               const std::function<double(double, double)>& fx, double t) {
    ScalarField field;
    field.f = [&f, t](double x) { return f(x, t); };
    field.d1 = [&fx, t](double x) { return fx(x, t); };
    return field;
}

}  // namespace

const char* family_name(MeshFamily family) {
    switch (family) {
        case MeshFamily::uniform: return "uniform";
        case MeshFamily::quasi_a: return "quasi-a";
        default: return "quasi-b";
    }
}

MeshFamily parse_family(std::string_view name) {
    if (name == "uniform") return MeshFamily::uniform;
    if (name == "quasi-a") return MeshFamily::quasi_a;
    if (name == "quasi-b") return MeshFamily::quasi_b;
    throw std::invalid_argument("unknown mesh family: " + std::string(name));
}

Mesh make_mesh(MeshFamily family, int num_elements) {
    switch (family) {
        case MeshFamily::uniform: return Mesh::uniform(num_elements);
        case MeshFamily::quasi_a: return Mesh::quasiuniform_a(num_elements);
        default: return Mesh::quasiuniform_b(num_elements);
    }
}

std::pair<double, int> TimeSpec::resolve(double h_max, double T) const {
    const int engaged = (lambda ? 1 : 0) + (k ? 1 : 0) + (steps ? 1 : 0);
    if (engaged != 1)
        throw std::invalid_argument("TimeSpec: exactly one of lambda, k, steps must be set");
    if (steps) {
        if (*steps < 1) throw std::invalid_argument("TimeSpec: step count must be positive");
        return {T / *steps, *steps};
    }
    const double k_target = lambda ? *lambda * h_max : *k;
    if (!(k_target > 0.0)) throw std::invalid_argument("TimeSpec: time step must be positive");
    const int m = std::max(1, static_cast<int>(std::ceil(T / k_target - 1e-9)));
    return {T / m, m};
}

double order(double e1, double e2, double m1, double m2) {
    if (!(m1 > 0.0) || !(m2 > 0.0) || m1 == m2)
        throw std::invalid_argument("order: measures must be positive and distinct");
    if (!(e1 > 0.0) || !(e2 > 0.0) || !std::isfinite(e1) || !std::isfinite(e2)) return kNaN;
    return std::log(e1 / e2) / std::log(m1 / m2);
}

bool RateTable::any_diverged() const {
    return std::any_of(diverged.begin(), diverged.end(), [](char d) { return d != 0; });
}

std::vector<std::vector<double>> RateTable::compute_orders() const {
    std::vector<std::vector<double>> orders(errors.size(),
                                            std::vector<double>(columns.size(), kNaN));
    for (std::size_t i = 1; i < errors.size(); ++i) {
        if (diverged[i] || diverged[i - 1]) continue;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            orders[i][c] = order(errors[i - 1][c], errors[i][c], measures[i - 1], measures[i]);
        }
    }
    return orders;
}

void RateTable::write_csv(std::ostream& out) const {
    out << "# generator = swgalerkin " << kVersion << "\n";
    for (const auto& [key, value] : metadata) out << "# " << key << " = " << value << "\n";
    out << "resolution";
    for (const auto& col : columns) out << "," << col << ",rate_" << col;
    out << "\n";
    const auto orders = compute_orders();
    for (int i = 0; i < rows(); ++i) {
        out << resolutions[i];
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (diverged[i]) {
                out << ",diverged,";
                continue;
            }
            out << "," << fmt("%.10e", errors[i][c]) << ",";
            if (std::isfinite(orders[i][c])) out << fmt("%.3f", orders[i][c]);
        }
        out << "\n";
    }
}

void RateTable::write_plot(std::ostream& out) const {
    out << "# generator = swgalerkin " << kVersion << "\n";
    for (const auto& [key, value] : metadata) out << "# " << key << " = " << value << "\n";
    out << "log10_measure";
    for (const auto& col : columns) out << ",log10_" << col;
    out << "\n";
    for (int i = 0; i < rows(); ++i) {
        if (diverged[i]) continue;
        out << fmt("%.10f", std::log10(measures[i]));
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << ",";
            if (errors[i][c] > 0.0 && std::isfinite(errors[i][c]))
                out << fmt("%.10f", std::log10(errors[i][c]));
        }
        out << "\n";
    }
}

void RateTable::print(std::ostream& out) const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%10s", "resolution");
    out << buf;
    for (const auto& col : columns) {
        std::snprintf(buf, sizeof(buf), " %12s %7s", col.c_str(), "rate");
        out << buf;
    }
    out << "\n";
    const auto orders = compute_orders();
    for (int i = 0; i < rows(); ++i) {
        std::snprintf(buf, sizeof(buf), "%10d", resolutions[i]);
        out << buf;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (diverged[i]) {
                std::snprintf(buf, sizeof(buf), " %12s %7s", "diverged", "-");
            } else if (std::isfinite(orders[i][c])) {
                std::snprintf(buf, sizeof(buf), " %12.4e %7.3f", errors[i][c], orders[i][c]);
            } else {
                std::snprintf(buf, sizeof(buf), " %12.4e %7s", errors[i][c], "-");
            }
            out << buf;
        }
        out << "\n";
    }
}

RateTable spatial_study(SpaceParams space, MeshFamily family, std::span<const int> n_list,
                        const TimeSpec& time, double T, int mms_id, const StudyOptions& opts) {
    if (n_list.empty()) throw std::invalid_argument("spatial_study: empty N list");
    if (!(T > 0.0)) throw std::invalid_argument("spatial_study: T must be positive");
    const ManufacturedSolution& mms = manufactured_solution(mms_id);

    RateTable table;
    table.columns = {"L2_eta", "Linf_eta", "H1_eta", "L2_u", "Linf_u", "H1_u"};
    table.resolutions.assign(n_list.begin(), n_list.end());
    const int n_rows = table.rows();
    table.measures.assign(n_rows, 0.0);
    table.errors.assign(n_rows, std::vector<double>(table.columns.size(), kNaN));
    table.diverged.assign(n_rows, 0);
    table.metadata = {{"study", "spatial"},
                      {"space_r", std::to_string(space.r)},
                      {"space_mu", std::to_string(space.mu)},
                      {"mesh", family_name(family)},
                      {"T", fmt("%.17g", T)},
                      {"mms", std::to_string(mms_id)}};
    if (time.lambda) table.metadata.emplace_back("lambda", fmt("%.17g", *time.lambda));
    if (time.k) table.metadata.emplace_back("k", fmt("%.17g", *time.k));
    if (time.steps) table.metadata.emplace_back("M", std::to_string(*time.steps));

    // Validate the whole list before spending time on any row.
    for (int n : n_list) make_mesh(family, n);
    {
        const Mesh probe = make_mesh(family, n_list[0]);
        time.resolve(probe.h_max(), T);
    }

    parallel_rows(n_rows, opts.threads, [&](int i) {
        const Mesh mesh = make_mesh(family, n_list[i]);
        table.measures[i] = mesh.h_max();
        const SplineSpace eta_space(mesh, space.r, space.mu, false);
        const SplineSpace vel_space(mesh, space.r, space.mu, true);
        const SwSystem sys(eta_space, vel_space, opts.quad_points);
        const auto [k, m] = time.resolve(mesh.h_max(), T);
        const State s0 = sys.initial_state([&](double x) { return mms.eta(x, 0.0); },
                                           [&](double x) { return mms.u(x, 0.0); });
        try {
            const State sT = sys.evolve(s0, k, m, &mms.forcing);
            const ErrorNorms ee = error_norms(sT.eta, exact_component_at(mms.eta, mms.eta_x, T),
                                              1, opts.linf_samples, opts.quad_points);
            const ErrorNorms eu = error_norms(sT.vel, exact_component_at(mms.u, mms.u_x, T), 1,
                                              opts.linf_samples, opts.quad_points);
            table.errors[i] = {ee.l2, ee.linf, ee.h1, eu.l2, eu.linf, eu.h1};
        } catch (const BlowUpError&) {
            table.diverged[i] = 1;
            table.errors[i].assign(table.columns.size(), kInf);
        }
    });
    return table;
}

RateTable temporal_study(SpaceParams space, MeshFamily family, int n,
                         std::span<const int> m_list, int m_ref, double T, int mms_id,
                         const StudyOptions& opts) {
    if (m_list.empty()) throw std::invalid_argument("temporal_study: empty M list");
    if (!(T > 0.0)) throw std::invalid_argument("temporal_study: T must be positive");
    for (int m : m_list) {
        if (m < 1) throw std::invalid_argument("temporal_study: M values must be positive");
        if (m_ref <= m)
            throw std::invalid_argument("temporal_study: M_ref must exceed every M in the list");
    }
    const ManufacturedSolution& mms = manufactured_solution(mms_id);

    const Mesh mesh = make_mesh(family, n);
    const SplineSpace eta_space(mesh, space.r, space.mu, false);
    const SplineSpace vel_space(mesh, space.r, space.mu, true);
    const SwSystem sys(eta_space, vel_space, opts.quad_points);
    const State s0 = sys.initial_state([&](double x) { return mms.eta(x, 0.0); },
                                       [&](double x) { return mms.u(x, 0.0); });

    // The one reference evolution; its spatial error is what E* cancels.
    const State ref = sys.evolve(s0, T / m_ref, m_ref, &mms.forcing);
    const ErrorNorms ref_eta = error_norms(ref.eta, exact_component_at(mms.eta, mms.eta_x, T), 0,
                                           opts.linf_samples, opts.quad_points);
    const ErrorNorms ref_u = error_norms(ref.vel, exact_component_at(mms.u, mms.u_x, T), 0,
                                         opts.linf_samples, opts.quad_points);

    RateTable table;
    table.columns = {"Estar_eta", "Estar_u"};
    table.resolutions.assign(m_list.begin(), m_list.end());
    const int n_rows = table.rows();
    table.measures.assign(n_rows, 0.0);
    table.errors.assign(n_rows, std::vector<double>(table.columns.size(), kNaN));
    table.diverged.assign(n_rows, 0);
    table.metadata = {{"study", "temporal"},
                      {"space_r", std::to_string(space.r)},
                      {"space_mu", std::to_string(space.mu)},
                      {"mesh", family_name(family)},
                      {"N", std::to_string(n)},
                      {"T", fmt("%.17g", T)},
                      {"mms", std::to_string(mms_id)},
                      {"M_ref", std::to_string(m_ref)},
                      {"E_ref_eta", fmt("%.10e", ref_eta.l2)},
                      {"E_ref_u", fmt("%.10e", ref_u.l2)}};

    parallel_rows(n_rows, opts.threads, [&](int i) {
        const int m = m_list[i];
        const double k = T / m;
        table.measures[i] = k;
        try {
            const State s = sys.evolve(s0, k, m, &mms.forcing);
            std::vector<double> diff = s.eta.coeffs;
            for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= ref.eta.coeffs[j];
            const double estar_eta = std::sqrt(sys.eta_mass().quadratic_form(diff));
            diff = s.vel.coeffs;
            for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= ref.vel.coeffs[j];
            const double estar_u = std::sqrt(sys.vel_mass().quadratic_form(diff));
            table.errors[i] = {estar_eta, estar_u};
        } catch (const BlowUpError&) {
            table.diverged[i] = 1;
            table.errors[i].assign(table.columns.size(), kInf);
        }
    });
    return table;
}

RateTable projection_study(SpaceParams space, MeshFamily family, std::span<const int> n_list,
                           ProjectionTarget target, const StudyOptions& opts) {
    if (n_list.empty()) throw std::invalid_argument("projection_study: empty N list");
    if (space.r < 4)
        throw std::invalid_argument("projection_study: H^3 norms need degree >= 3 (r >= 4)");
    const ScalarField field = target == ProjectionTarget::smooth
                                  ? smooth_projection_target()
                                  : NonSmoothV().as_field();

    RateTable table;
    table.columns = {"L2", "H1", "H2", "H3", "H3full", "Linf"};
    table.resolutions.assign(n_list.begin(), n_list.end());
    const int n_rows = table.rows();
    table.measures.assign(n_rows, 0.0);
    table.errors.assign(n_rows, std::vector<double>(table.columns.size(), kNaN));
    table.diverged.assign(n_rows, 0);
    table.metadata = {{"study", "projection"},
                      {"space_r", std::to_string(space.r)},
                      {"space_mu", std::to_string(space.mu)},
                      {"mesh", family_name(family)},
                      {"target", target == ProjectionTarget::smooth ? "smooth" : "nonsmooth"}};

    for (int n : n_list) make_mesh(family, n);

    parallel_rows(n_rows, opts.threads, [&](int i) {
        const Mesh mesh = make_mesh(family, n_list[i]);
        table.measures[i] = mesh.h_max();
        const SplineSpace sp(mesh, space.r, space.mu, false);
        const ProjectedFunction pf = project(sp, field.f, field.breaks, opts.quad_points);
        const ErrorNorms en = error_norms(pf, field, 3, opts.linf_samples, opts.quad_points);
        table.errors[i] = {en.l2, en.h1, en.h2, en.h3, en.h3_full, en.linf};
    });
    return table;
}

}  // namespace swg
