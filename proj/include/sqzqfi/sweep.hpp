#ifndef SQZQFI_SWEEP_HPP
#define SQZQFI_SWEEP_HPP

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sqzqfi/csv.hpp"
#include "sqzqfi/dynamics.hpp"
#include "sqzqfi/metrology.hpp"
#include "sqzqfi/reservoir.hpp"

namespace sqzqfi {

enum class SweepOutput { qfi_analytic, qfi_eigen, qfi_thermal, qfi_bloch, advantage };

inline const char* to_string(SweepOutput o) {
    switch (o) {
        case SweepOutput::qfi_analytic: return "qfi_analytic";
        case SweepOutput::qfi_eigen: return "qfi_eigen";
        case SweepOutput::qfi_thermal: return "qfi_thermal";
        case SweepOutput::qfi_bloch: return "qfi_bloch";
        case SweepOutput::advantage: return "advantage";
    }
    return "?";
}

/// A Cartesian parameter sweep. Axis and fixed-parameter names are drawn from
/// {gamma_t, phi, theta, r, kT, lambda}. When phase_matched_delta is set the
/// squeezing phase is slaved to the estimated phase, theta = 2 (phi - delta),
/// and any explicit theta entry is ignored.
struct SweepSpec {
    std::vector<std::pair<std::string, std::vector<double>>> axes;
    std::map<std::string, double> fixed;
    EvolutionMode mode = EvolutionMode::nonMarkovian;
    std::vector<SweepOutput> outputs{SweepOutput::qfi_analytic};
    std::optional<double> phase_matched_delta;
};

/// Rectangular result table; rows are ordered lexicographically by the axis
/// values (axes sorted ascending, first axis outermost).
struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void write_csv(std::ostream& os) const {
        write_csv_header(os, columns);
        for (const auto& row : rows) write_csv_row(os, row);
    }
};

namespace detail {

inline const std::vector<std::string>& sweep_parameter_names() {
    static const std::vector<std::string> names{"gamma_t", "phi", "theta", "r", "kT", "lambda"};
    return names;
}

inline void check_parameter_name(const std::string& name) {
    const auto& names = sweep_parameter_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw std::invalid_argument("sweep: unknown parameter '" + name + "'");
}

struct SweepPoint {
    double gamma_t = 0.0, phi = 0.0, theta = 0.0, r = 0.0, kT = 0.0, lambda = 1.0;

    void set(const std::string& name, double v) {
        if (name == "gamma_t") gamma_t = v;
        else if (name == "phi") phi = v;
        else if (name == "theta") theta = v;
        else if (name == "r") r = v;
        else if (name == "kT") kT = v;
        else if (name == "lambda") lambda = v;
        else throw std::invalid_argument("sweep: unknown parameter '" + name + "'");
    }
};

inline std::vector<double> evaluate_point(SweepPoint p, const SweepSpec& spec) {
    if (spec.phase_matched_delta) p.theta = 2.0 * (p.phi - *spec.phase_matched_delta);

    ReservoirSpec bath;
    bath.lambda_over_gamma = p.lambda;
    bath.r = p.r;
    bath.theta = p.theta;
    bath.kT_over_omega = p.kT;
    bath.validate();

    const double n = bath.mean_photon_number();
    const double vt = vartheta(p.gamma_t, bath, spec.mode);
    const auto coeffs = solution_coefficients(vt, n, p.r);

    std::vector<double> out;
    out.reserve(spec.outputs.size());
    for (SweepOutput o : spec.outputs) {
        switch (o) {
            case SweepOutput::qfi_analytic:
                out.push_back(qfi_analytic(p.phi, p.theta, coeffs));
                break;
            case SweepOutput::qfi_eigen: {
                const QubitState rho = closed_form_state(p.phi, p.theta, coeffs);
                out.push_back(qfi_eigen(rho, drho_analytic(p.phi, p.theta, coeffs)));
                break;
            }
            case SweepOutput::qfi_thermal:
                out.push_back(qfi_thermal(vt, n));
                break;
            case SweepOutput::qfi_bloch: {
                const QubitState rho = closed_form_state(p.phi, p.theta, coeffs);
                out.push_back(qfi_bloch(bloch_vector(rho),
                                        bloch_derivative(drho_analytic(p.phi, p.theta, coeffs))));
                break;
            }
            case SweepOutput::advantage:
                out.push_back(squeezing_advantage(p.phi, p.theta, coeffs, n).advantage ? 1.0 : 0.0);
                break;
        }
    }
    return out;
}

inline unsigned sweep_thread_count(std::size_t n_rows) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("QFI_THREADS")) {
        const long v = std::strtol(cap, nullptr, 10);
        if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(n_rows, 1)));
}

} // namespace detail

/// Evaluate the Cartesian product of the axes. Rows may be computed in
/// parallel (capped by QFI_THREADS) but each row owns its slot, so the table
/// is byte-identical regardless of the schedule.
inline SweepTable run_sweep(const SweepSpec& spec, unsigned force_threads = 0) {
    std::vector<std::pair<std::string, std::vector<double>>> axes = spec.axes;
    for (auto& [name, values] : axes) {
        detail::check_parameter_name(name);
        if (values.empty()) throw std::invalid_argument("sweep: axis '" + name + "' is empty");
        std::sort(values.begin(), values.end());
    }
    for (const auto& [name, value] : spec.fixed) {
        detail::check_parameter_name(name);
        (void)value;
    }
    {
        std::vector<std::string> seen;
        for (const auto& [name, values] : axes) {
            if (std::find(seen.begin(), seen.end(), name) != seen.end())
                throw std::invalid_argument("sweep: duplicate axis '" + name + "'");
            seen.push_back(name);
        }
    }

    SweepTable table;
    for (const auto& [name, values] : axes) table.columns.push_back(name);
    for (SweepOutput o : spec.outputs) table.columns.push_back(to_string(o));

    std::size_t n_rows = 1;
    for (const auto& [name, values] : axes) n_rows *= values.size();
    table.rows.resize(n_rows);

    const std::size_t n_axes = axes.size();
    auto fill_row = [&](std::size_t row) {
        detail::SweepPoint p;
        for (const auto& [name, value] : spec.fixed) p.set(name, value);
        std::vector<double> axis_vals(n_axes);
        std::size_t rem = row;
        for (std::size_t a = n_axes; a-- > 0;) {
            const auto& values = axes[a].second;
            axis_vals[a] = values[rem % values.size()];
            rem /= values.size();
        }
        for (std::size_t a = 0; a < n_axes; ++a) p.set(axes[a].first, axis_vals[a]);

        std::vector<double> out;
        try {
            out = detail::evaluate_point(p, spec);
        } catch (const singularity_error& e) {
            throw singularity_error(std::string(e.what()) + " [sweep row " + std::to_string(row) +
                                    "]");
        }
        auto& slot = table.rows[row];
        slot = std::move(axis_vals);
        slot.insert(slot.end(), out.begin(), out.end());
    };

    const unsigned n_threads =
        force_threads ? force_threads : detail::sweep_thread_count(n_rows);
    if (n_threads <= 1 || n_rows < 2) {
        for (std::size_t i = 0; i < n_rows; ++i) fill_row(i);
        return table;
    }

    std::vector<std::thread> workers;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < n_threads; ++w) {
        workers.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n_rows; i += n_threads) fill_row(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return table;
}

inline std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 2) return {lo};
    std::vector<double> v(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        v[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) /
                                                  static_cast<double>(points - 1);
    return v;
}

inline const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids{"fig2a", "fig2b", "fig3a", "fig3b", "fig4a",
                                              "fig4b", "fig4c", "fig4d", "fig5",  "fig6"};
    return ids;
}

/// Canned sweep for one of the reference figures. `points` samples each
/// continuous axis; curve-family axes keep their enumerated values.
///
/// fig2a/b: QFI vs gamma_t and phi (resp. theta), lambda = 0.1, r = 1.5,
///          kT = 0.5.
/// fig3a/b: thermal curves (r = 0) vs gamma_t at kT in {0, 0.5, 1, 2};
///          (a) lambda = 0.1, (b) markovian.
/// fig4a-d: QFI vs phi at kT = 0 for r in {0, 0.2, 0.5, 1}; (a) gamma_t = 5,
///          lambda = 0.1, (b) markovian gamma_t = 0.8; (c,d) additionally
///          phase-matched with delta = 0.01.
/// fig5:    QFI vs kT and r at gamma_t = 10, lambda = 0.1, delta = 0.01
///          (axis ranges kT in [0,2], r in [0,1.5] to match the other
///          figures).
/// fig6:    QFI vs gamma_t for lambda in {0.05, 0.1, 0.5, 2}, r = 0.5,
///          kT = 0.5, delta = 0.01. kT is in units of omega0 here as
///          everywhere else.
inline SweepSpec figure_preset(const std::string& id, int points = 201) {
    if (points < 2) throw std::invalid_argument("figure_preset: points must be >= 2");
    SweepSpec spec;
    const std::vector<double> gamma_t = linspace(0.0, 10.0, points);
    const double two_pi = 2.0 * M_PI;

    if (id == "fig2a") {
        spec.axes = {{"gamma_t", gamma_t}, {"phi", linspace(0.0, two_pi, points)}};
        spec.fixed = {{"theta", 0.0}, {"r", 1.5}, {"kT", 0.5}, {"lambda", 0.1}};
    } else if (id == "fig2b") {
        spec.axes = {{"gamma_t", gamma_t}, {"theta", linspace(0.0, two_pi, points)}};
        spec.fixed = {{"phi", 0.0}, {"r", 1.5}, {"kT", 0.5}, {"lambda", 0.1}};
    } else if (id == "fig3a" || id == "fig3b") {
        spec.axes = {{"gamma_t", gamma_t}, {"kT", {0.0, 0.5, 1.0, 2.0}}};
        spec.fixed = {{"r", 0.0}, {"phi", 0.0}, {"theta", 0.0}, {"lambda", 0.1}};
        if (id == "fig3b") spec.mode = EvolutionMode::markovian;
    } else if (id == "fig4a" || id == "fig4b" || id == "fig4c" || id == "fig4d") {
        spec.axes = {{"phi", linspace(0.0, two_pi, points)}, {"r", {0.0, 0.2, 0.5, 1.0}}};
        spec.fixed = {{"kT", 0.0}, {"lambda", 0.1}};
        if (id == "fig4a" || id == "fig4c") {
            spec.fixed["gamma_t"] = 5.0;
        } else {
            spec.fixed["gamma_t"] = 0.8;
            spec.mode = EvolutionMode::markovian;
        }
        if (id == "fig4c" || id == "fig4d") spec.phase_matched_delta = 0.01;
        else spec.fixed["theta"] = 0.0;
    } else if (id == "fig5") {
        spec.axes = {{"kT", linspace(0.0, 2.0, points)}, {"r", linspace(0.0, 1.5, points)}};
        spec.fixed = {{"gamma_t", 10.0}, {"lambda", 0.1}, {"phi", 0.01}};
        spec.phase_matched_delta = 0.01;
    } else if (id == "fig6") {
        spec.axes = {{"gamma_t", gamma_t}, {"lambda", {0.05, 0.1, 0.5, 2.0}}};
        spec.fixed = {{"r", 0.5}, {"kT", 0.5}, {"phi", 0.01}};
        spec.phase_matched_delta = 0.01;
    } else {
        std::string known;
        for (const auto& k : figure_ids()) known += (known.empty() ? "" : ", ") + k;
        throw std::invalid_argument("figure_preset: unknown id '" + id + "' (known: " + known +
                                    ")");
    }
    return spec;
}

} // namespace sqzqfi

#endif
