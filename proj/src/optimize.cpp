#include "tomo/optimize.hpp"

#include "tomo/errors.hpp"
#include "tomo/ewv.hpp"
#include "tomo/measmat.hpp"
#include "tomo/povm.hpp"
#include "tomo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tomo {

namespace {

double simplex_diameter(const std::vector<Eigen::VectorXd>& vertices) {
    double diam = 0.0;
    for (size_t i = 0; i < vertices.size(); ++i)
        for (size_t j = i + 1; j < vertices.size(); ++j)
            diam = std::max(diam, (vertices[i] - vertices[j]).cwiseAbs().maxCoeff());
    return diam;
}

double wrap_angle(double phi) {
    const double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(phi, two_pi);
    if (w < 0.0) w += two_pi;
    return w;
}

} // namespace

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& start, const NelderMeadOptions& options) {
    const int n = static_cast<int>(start.size());
    if (n < 1) throw std::invalid_argument("nelder_mead: empty start point");

    std::vector<Eigen::VectorXd> x(static_cast<size_t>(n) + 1, start);
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i) + 1](i) += options.initial_step;

    std::vector<double> f(x.size());
    int evals = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        f[i] = objective(x[i]);
        ++evals;
    }

    std::vector<size_t> order(x.size());
    NelderMeadResult result;
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return f[a] < f[b]; });
        {
            std::vector<Eigen::VectorXd> xs(x.size());
            std::vector<double> fs(f.size());
            for (size_t i = 0; i < order.size(); ++i) {
                xs[i] = x[order[i]];
                fs[i] = f[order[i]];
            }
            x.swap(xs);
            f.swap(fs);
        }
        if (simplex_diameter(x) < options.diameter_tol) {
            result.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (size_t i = 0; i + 1 < x.size(); ++i) centroid += x[i];
        centroid /= static_cast<double>(n);

        const size_t worst = x.size() - 1;
        const Eigen::VectorXd reflected = centroid + (centroid - x[worst]);
        const double f_reflected = objective(reflected);
        ++evals;

        if (f_reflected < f[0]) {
            const Eigen::VectorXd expanded = centroid + 2.0 * (reflected - centroid);
            const double f_expanded = objective(expanded);
            ++evals;
            if (f_expanded < f_reflected) {
                x[worst] = expanded;
                f[worst] = f_expanded;
            } else {
                x[worst] = reflected;
                f[worst] = f_reflected;
            }
        } else if (f_reflected < f[worst - 1]) {
            x[worst] = reflected;
            f[worst] = f_reflected;
        } else {
            const bool outside = f_reflected < f[worst];
            const Eigen::VectorXd& toward = outside ? reflected : x[worst];
            const Eigen::VectorXd contracted = centroid + 0.5 * (toward - centroid);
            const double f_contracted = objective(contracted);
            ++evals;
            if (f_contracted < (outside ? f_reflected : f[worst])) {
                x[worst] = contracted;
                f[worst] = f_contracted;
            } else {
                for (size_t i = 1; i < x.size(); ++i) {
                    x[i] = x[0] + 0.5 * (x[i] - x[0]);
                    f[i] = objective(x[i]);
                    ++evals;
                }
            }
        }
    }

    size_t best = 0;
    for (size_t i = 1; i < x.size(); ++i)
        if (f[i] < f[best]) best = i;
    result.x = x[best];
    result.value = f[best];
    result.iterations = iter;
    result.evaluations = evals;
    return result;
}

double golden_section_min(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

ScenarioAResult scenario_a(int num_settings, int grid_points) {
    if (num_settings < 3) throw std::invalid_argument("scenario_a: need at least 3 settings");
    if (grid_points < 16) throw std::invalid_argument("scenario_a: need at least 16 grid points");

    const HermitianBasis basis(2);
    const double n_total = static_cast<double>(num_settings); // ncal = 1
    const auto scaled_ewv = [&](double beta) {
        const MeasurementMatrix m(ftt_scheme(beta, num_settings, 1.0), basis);
        if (!m.complete()) return std::numeric_limits<double>::infinity();
        return ewv_average(m) * n_total;
    };

    ScenarioAResult result;
    result.beta_grid.resize(grid_points);
    result.ewv_curve.resize(grid_points);
    int best = 0;
    for (int k = 0; k < grid_points; ++k) {
        const double beta = std::numbers::pi * (k + 1) / (grid_points + 1);
        result.beta_grid(k) = beta;
        result.ewv_curve(k) = scaled_ewv(beta);
        if (result.ewv_curve(k) < result.ewv_curve(best)) best = k;
    }

    const double step = std::numbers::pi / (grid_points + 1);
    const double lo = std::max(result.beta_grid(best) - step, step * 0.5);
    const double hi = std::min(result.beta_grid(best) + step, std::numbers::pi - step * 0.5);
    result.beta_opt = golden_section_min(scaled_ewv, lo, hi, 1e-6);
    result.ewv_opt = scaled_ewv(result.beta_opt);
    return result;
}

ScenarioBResult scenario_b(double beta, int restarts, std::uint64_t seed) {
    if (std::abs(std::remainder(beta, std::numbers::pi)) < 1e-12)
        throw DegenerateSchemeError("scenario_b: retardance at a multiple of pi");
    if (restarts < 1) throw std::invalid_argument("scenario_b: need at least one restart");

    const HermitianBasis basis(2);
    const double n_total = 3.0; // three PVMs at ncal = 1
    const auto objective = [&](const Eigen::VectorXd& phis) {
        const Scheme scheme =
            two_waveplate_scheme(beta, {{0.0, 0.0}, {phis(0), phis(1)}, {phis(2), phis(3)}}, 1.0);
        const MeasurementMatrix m(scheme, basis);
        if (!m.complete()) return std::numeric_limits<double>::infinity();
        return ewv_average(m) * n_total;
    };

    ScenarioBResult result;
    result.beta = beta;
    result.ewv_opt = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_x;
    for (int r = 0; r < restarts; ++r) {
        auto eng = substream(seed, static_cast<std::uint64_t>(r));
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        Eigen::VectorXd start(4);
        for (int i = 0; i < 4; ++i) start(i) = angle(eng);

        const NelderMeadResult run = nelder_mead(objective, start);
        result.restarts.push_back({start, run.value, run.iterations});
        if (run.value < result.ewv_opt) {
            result.ewv_opt = run.value;
            result.best_restart = r;
            best_x = run.x;
        }
    }

    result.angles[0] = {0.0, 0.0};
    result.angles[1] = {wrap_angle(best_x(0)), wrap_angle(best_x(1))};
    result.angles[2] = {wrap_angle(best_x(2)), wrap_angle(best_x(3))};
    return result;
}

} // namespace tomo
