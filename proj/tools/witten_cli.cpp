// Scenario-driven front end: coeff, verify, sweep, oracle.
#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "witten/coefficients.hpp"
#include "witten/expansion.hpp"
#include "witten/oracle.hpp"
#include "witten/scenario.hpp"

using namespace witten;
namespace fs = std::filesystem;

namespace {

constexpr int kPass = 0, kToleranceFailure = 1, kConfigError = 2;

struct Options {
    std::string scenario;
    std::string out = ".";
    int jobs = 1;
    double tol = 1e-2;
};

std::ofstream open_out(const Options& o, const std::string& name) {
    fs::create_directories(o.out);
    std::ofstream f(fs::path(o.out) / name);
    if (!f) throw std::runtime_error("cannot write " + (fs::path(o.out) / name).string());
    f.precision(17);
    return f;
}

// map i -> g(i) on up to `jobs` threads, results in index order
template <class T, class G>
std::vector<T> parallel_map(size_t n, int jobs, G g) {
    std::vector<T> out(n);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < n; i = next++) out[i] = g(i);
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < std::min<int>(jobs, static_cast<int>(n)); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

int cmd_coeff(const Scenario& sc, const Options& o) {
    auto table = CoeffTable::for_model(sc.model, sc.M);
    auto f = open_out(o, "coefficients.txt");
    table.write(f);
    std::cout << "coeff: " << table.entries.size() << " entries -> " << (fs::path(o.out) / "coefficients.txt").string()
              << '\n';
    return kPass;
}

int cmd_sweep(const Scenario& sc, const Options& o) {
    auto results = parallel_map<ExpansionResult>(sc.zeta_values.size(), o.jobs, [&](size_t i) {
        return expand(sc.model, sc.amplitude, sc.sigma, sc.zeta_values[i], sc.M);
    });
    auto f = open_out(o, "sweep.csv");
    f << "zeta,j,functional,re,im\n";
    for (size_t i = 0; i < results.size(); ++i) {
        std::ostringstream rows;
        results[i].write_csv(rows);
        std::istringstream in(rows.str());
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) f << sc.zeta_values[i] << ',' << line << '\n';
    }
    std::cout << "sweep: " << results.size() << " zeta values -> " << (fs::path(o.out) / "sweep.csv").string() << '\n';
    return kPass;
}

int cmd_oracle(const Scenario& sc, const Options& o) {
    auto f = open_out(o, "oracle.csv");
    f << "zeta,epsilon,re,im,method\n";
    for (double z : sc.zeta_values) {
        auto samples = sample_grid(sc.model, sc.amplitude, sc.sigma, z, sc.oracle, o.jobs);
        std::ostringstream rows;
        rows.precision(17);
        write_samples_csv(rows, samples, sc.oracle.method);
        std::istringstream in(rows.str());
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) f << z << ',' << line << '\n';
    }
    std::cout << "oracle: " << sc.zeta_values.size() << " x " << sc.oracle.epsilon_grid.size() << " samples -> "
              << (fs::path(o.out) / "oracle.csv").string() << '\n';
    return kPass;
}

int cmd_verify(const Scenario& sc, const Options& o) {
    auto coeffs = open_out(o, "verify_coefficients.csv");
    auto slopes = open_out(o, "verify_slopes.csv");
    coeffs << "zeta,j,expansion_re,expansion_im,fit_re,fit_im,rel_err,status\n";
    slopes << "zeta,M,kind,slope,points,status\n";
    int failures = 0, floor_rows = 0, rows = 0;

    for (double z : sc.zeta_values) {
        auto samples = sample_grid(sc.model, sc.amplitude, sc.sigma, z, sc.oracle, o.jobs);
        auto ex = expand(sc.model, sc.amplitude, sc.sigma, z, sc.M);
        bool empty = ex.leading_order == ExpansionResult::kEmpty;

        // coefficients against a least-squares fit of the samples
        if (!empty) {
            // six points leave room for four coefficients; higher rows are reported unfitted
            const int j_max = std::min(sc.M + 2, 3);
            FitResult fit;
            bool fitted = true;
            try {
                fit = fit_samples(samples, j_max);
            } catch (const FitError&) {
                fitted = false;
            }
            double scale = 0.0;
            for (const auto& c : ex.coefficients) scale = std::max(scale, std::abs(c.total()));
            for (const auto& c : ex.coefficients) {
                ++rows;
                std::complex<double> a = c.total();
                coeffs << z << ',' << c.j << ',' << a.real() << ',' << a.imag() << ',';
                if (!fitted || c.j > j_max) {
                    coeffs << ",,,unfitted\n";
                    continue;
                }
                std::complex<double> b = fit.coefficients[static_cast<size_t>(c.j)];
                // coefficients that vanish are compared on the scale of the largest one
                double rel = std::abs(a - b) / std::max(std::abs(a), 1e-3 * scale);
                bool ok = rel <= o.tol;
                failures += !ok;
                coeffs << b.real() << ',' << b.imag() << ',' << rel << ',' << (ok ? "pass" : "fail") << '\n';
            }
        }

        // remainder slopes, or plain decay when the level set is empty
        std::vector<std::complex<double>> ps(samples.size());
        for (int m = 0; m <= sc.M; ++m) {
            ++rows;
            for (size_t i = 0; i < samples.size(); ++i) ps[i] = empty ? 0.0 : ex.partial_sum(samples[i].epsilon, m);
            auto r = remainder_slope(samples, ps);
            const char* kind = empty ? "superpolynomial decay" : "remainder";
            slopes << z << ',' << m << ',' << kind << ',';
            if (r.floor_limited) {
                ++floor_rows;
                slopes << ',' << r.points_used << ",floor\n";
                continue;
            }
            bool ok = r.slope >= m + 1.8;
            failures += !ok;
            slopes << r.slope << ',' << r.points_used << ',' << (ok ? "pass" : "fail") << '\n';
        }
    }

    bool has_zero = std::find(sc.zeta_values.begin(), sc.zeta_values.end(), 0.0) != sc.zeta_values.end();
    if (has_zero) {
        auto jump = open_out(o, "verify_jump.csv");
        jump << "j,above_re,above_im,below_re,below_im,jump_re,jump_im\n";
        for (int j = 0; j <= sc.M; ++j) {
            auto up = one_sided_limits(sc.model, sc.amplitude, sc.sigma, j, 1);
            auto dn = one_sided_limits(sc.model, sc.amplitude, sc.sigma, j, -1);
            auto d = up - dn;
            jump << j << ',' << up.real() << ',' << up.imag() << ',' << dn.real() << ',' << dn.imag() << ','
                 << d.real() << ',' << d.imag() << '\n';
        }
    }

    auto report = open_out(o, "verify_report.txt");
    std::ostringstream msg;
    msg << "verify: " << rows << " rows, " << failures << " failed, " << floor_rows << " at the noise floor"
        << (has_zero ? ", jump table written" : "") << '\n';
    report << msg.str();
    std::cout << msg.str();
    return failures ? kToleranceFailure : kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Asymptotic expansion of localized oscillatory integrals near a fixed component"};
    app.require_subcommand(1);
    Options opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--scenario", opt.scenario, "scenario file")->required();
        sub->add_option("--out", opt.out, "output directory")->capture_default_str();
        sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--tol", opt.tol, "relative tolerance for coefficient comparisons")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };
    auto* coeff = app.add_subcommand("coeff", "dump the exact coefficient tables");
    auto* verify = app.add_subcommand("verify", "compare the expansion with the oracle");
    auto* sweep = app.add_subcommand("sweep", "expansion coefficients across zeta_values");
    auto* oracle = app.add_subcommand("oracle", "sample the oracle on the epsilon grid");
    for (auto* s : {coeff, verify, sweep, oracle}) add_common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    Scenario sc;
    try {
        sc = load_scenario(opt.scenario);
    } catch (const ScenarioError& e) {
        std::cerr << opt.scenario << ": " << e.what() << '\n';
        return kConfigError;
    }

    try {
        if (*coeff) return cmd_coeff(sc, opt);
        if (*sweep) return cmd_sweep(sc, opt);
        if (*oracle) return cmd_oracle(sc, opt);
        return cmd_verify(sc, opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
}
