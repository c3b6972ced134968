// Command-line front end: dynamical/parameter plane rendering, escape-case
// classification sweeps, root inventories, itineraries and invariant suites.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blaschke/critical_finder.hpp"
#include "blaschke/fatou_classifier.hpp"
#include "blaschke/orbit_engine.hpp"
#include "blaschke/render.hpp"
#include "blaschke/suites.hpp"
#include "blaschke/symbolic_dynamics.hpp"

namespace {

using blaschke::Complex;

Complex parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return Complex(std::stod(s), 0.0);
    return Complex(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

void parse_res(const std::string& s, int& nx, int& ny) {
    const auto x = s.find('x');
    if (x == std::string::npos) {
        nx = ny = std::stoi(s);
        return;
    }
    nx = std::stoi(s.substr(0, x));
    ny = std::stoi(s.substr(x + 1));
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path);
    return file;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app {"dynamics of singularly perturbed Blaschke products"};
    app.require_subcommand(1);

    std::string a_str = "0.5,0";
    std::vector<std::string> lambda_strs;
    std::string center_str = "0,0";
    double width = 2.4, height = 0.0;
    std::string res_str = "512x512";
    int max_iter = 0;
    std::string out_path;
    int threads = 0;
    double rho = blaschke::kDefaultRho;
    int depth = 6;
    std::vector<std::string> point_strs;
    int samples = 0;
    std::string suite;

    auto add_shared = [&](CLI::App* cmd, bool wants_lambda) {
        cmd->add_option("--a", a_str, "parameter a as re,im (default 0.5,0)");
        if (wants_lambda) cmd->add_option("--lambda", lambda_strs, "parameter lambda as re,im");
        cmd->add_option("--center", center_str, "window center as re,im");
        cmd->add_option("--width", width, "window width");
        cmd->add_option("--height", height, "window height (defaults to width)");
        cmd->add_option("--res", res_str, "resolution NXxNY");
        cmd->add_option("--max-iter", max_iter, "iteration budget");
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
        cmd->add_option("--rho", rho, "small-annulus widening factor");
    };

    CLI::App* rd = app.add_subcommand("render-dynamical", "escape-time image of the dynamical plane");
    add_shared(rd, true);
    CLI::App* rp = app.add_subcommand("render-parameter", "escape image of the lambda plane for fixed a");
    add_shared(rp, false);
    CLI::App* cl = app.add_subcommand("classify", "escape-case classification, one CSV line per lambda");
    add_shared(cl, true);
    CLI::App* cp = app.add_subcommand("critical-points", "root and critical-point inventory");
    add_shared(cp, true);
    CLI::App* it = app.add_subcommand("itinerary", "annulus labels and symbolic itineraries");
    add_shared(it, true);
    it->add_option("--depth", depth, "label depth cap");
    it->add_option("--point", point_strs, "itinerary start point re,im (repeatable)");
    it->add_option("--samples", samples, "extra random band samples");
    CLI::App* vf = app.add_subcommand("verify", "run a named invariant suite");
    vf->add_option("suite", suite, "inventory|lemma|asymptotics|classify3|topology|itinerary|all")
        ->required();
    vf->add_option("--threads", threads, "worker threads (0 = all cores)");

    CLI11_PARSE(app, argc, argv);

    try {
        const Complex a = parse_complex(a_str);
        if (height <= 0.0) height = width;
        int nx = 0, ny = 0;
        parse_res(res_str, nx, ny);
        const blaschke::Window window {parse_complex(center_str), width, height};
        std::ofstream file;

        if (rd->parsed()) {
            if (lambda_strs.empty()) lambda_strs.push_back("0,0");
            const blaschke::ParameterPair p {a, parse_complex(lambda_strs.front())};
            if (max_iter <= 0) max_iter = blaschke::kDynamicalMaxIter;
            const blaschke::ImageBuffer img =
                blaschke::render_dynamical(p, window, nx, ny, max_iter, {}, rho, threads);
            blaschke::write_ppm(open_out(file, out_path), img);
            return 0;
        }

        if (rp->parsed()) {
            if (max_iter <= 0) max_iter = blaschke::kClassifyMaxIter;
            const blaschke::ImageBuffer img =
                blaschke::render_parameter(a, window, nx, ny, max_iter, {}, rho, threads);
            blaschke::write_ppm(open_out(file, out_path), img);
            return 0;
        }

        if (cl->parsed()) {
            if (lambda_strs.empty()) throw std::runtime_error("classify needs at least one --lambda");
            if (max_iter <= 0) max_iter = blaschke::kClassifyMaxIter;
            std::ostream& os = open_out(file, out_path);
            for (const std::string& ls : lambda_strs) {
                const blaschke::ParameterPair p {a, parse_complex(ls)};
                blaschke::ClassifierBudget budget;
                budget.max_iter = max_iter;
                budget.rho = rho;
                const blaschke::FatouCase c = blaschke::classify(p, budget);

                const blaschke::CriticalInventory inv = blaschke::full_inventory(p);
                const blaschke::EscapeScan scan =
                    blaschke::escape_scan(p, inv.c_minus, max_iter, rho);
                int connectivity = -1;
                if (scan.escaped()) {
                    const blaschke::EscapeGrid grid = blaschke::escape_grid(
                        p, window, nx, ny, blaschke::kDynamicalMaxIter, rho, threads);
                    int ix = 0, iy = 0;
                    if (grid.pixel_of(inv.c_minus, ix, iy) && grid.at(ix, iy).escaped())
                        connectivity = blaschke::component_stats(grid, ix, iy).connectivity;
                }
                char line[160];
                std::snprintf(line, sizeof line, "%.17g,%.17g,%s,%d,%d\n", p.lambda.real(),
                              p.lambda.imag(), blaschke::to_string(c), scan.escape_index,
                              connectivity);
                os << line;
            }
            return 0;
        }

        if (cp->parsed()) {
            if (lambda_strs.empty()) throw std::runtime_error("critical-points needs --lambda");
            const blaschke::ParameterPair p {a, parse_complex(lambda_strs.front())};
            const blaschke::CriticalInventory inv = blaschke::full_inventory(p);
            blaschke::write_inventory(open_out(file, out_path), p, inv);
            return 0;
        }

        if (it->parsed()) {
            if (lambda_strs.empty()) throw std::runtime_error("itinerary needs --lambda");
            const blaschke::ParameterPair p {a, parse_complex(lambda_strs.front())};
            blaschke::PolarResolution pres;   // --res overrides the polar raster
            if (it->count("--res") > 0) {
                pres.n_theta = nx;
                pres.n_r = ny;
            }
            const blaschke::LabelTable table =
                blaschke::label_annuli(p, depth, pres, {}, threads);
            std::ostream& os = open_out(file, out_path);
            blaschke::write_labels(os, table);

            std::vector<Complex> starts;
            for (const std::string& ps : point_strs) starts.push_back(parse_complex(ps));
            if (starts.empty() && samples <= 0) samples = 4;
            const int n_labels = static_cast<int>(table.labels().size());
            for (int s = 0; s < samples; ++s) {
                const int id = n_labels > 1 ? 1 + s % (n_labels - 1) : 0;
                const Complex z = table.sample_point(id, (s * 331) % table.n_theta());
                if (z != Complex(0.0, 0.0)) starts.push_back(z);
            }
            for (const Complex z : starts) {
                const blaschke::Itinerary itin = blaschke::compute_itinerary(p, table, z, 64);
                os << "point " << z.real() << ' ' << z.imag() << " :";
                for (const int s : itin.symbols) os << ' ' << s;
                switch (itin.terminal) {
                    case blaschke::ItineraryTerminal::Escaped: os << " (escaped)"; break;
                    case blaschke::ItineraryTerminal::BudgetExhausted: os << " (budget)"; break;
                    case blaschke::ItineraryTerminal::LeftLabeledSet: os << " (left)"; break;
                }
                os << '\n';
            }
            return 0;
        }

        if (vf->parsed()) {
            const bool ok = blaschke::run_suite(suite, std::cout, threads);
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
