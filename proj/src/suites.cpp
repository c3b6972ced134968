#include "blaschke/suites.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "blaschke/critical_finder.hpp"
#include "blaschke/fatou_classifier.hpp"
#include "blaschke/orbit_engine.hpp"
#include "blaschke/rational_map.hpp"
#include "blaschke/symbolic_dynamics.hpp"

namespace blaschke {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// mt19937_64 with a portable uniform; identical streams on every platform.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    Complex disk(double radius) {
        const double r = radius * std::sqrt(uniform());
        return std::polar(r, kTwoPi * uniform());
    }
    Complex annulus(double r0, double r1) {
        const double r = std::sqrt(r0 * r0 + uniform() * (r1 * r1 - r0 * r0));
        return std::polar(r, kTwoPi * uniform());
    }
};

struct Report {
    std::ostream& os;
    bool ok = true;

    void check(bool cond, const std::string& name, const std::string& detail = "") {
        os << (cond ? "PASS " : "FAIL ") << name;
        if (!detail.empty()) os << ": " << detail;
        os << '\n';
        ok = ok && cond;
    }
};

bool suite_inventory(Report& rep) {
    const Complex a {0.5, 0.0};
    for (const double lam : {1e-5, 1e-6, 1e-7}) {
        const ParameterPair p {a, Complex(lam, 0.0)};
        std::ostringstream tag;
        tag << "inventory lambda=" << lam;
        try {
            const CriticalInventory inv = full_inventory(p);
            double worst_zero = 0.0, worst_crit = 0.0;
            for (const Complex w : inv.small_zeros) {
                const double scale = std::max(1.0, lam / std::norm(w));
                worst_zero = std::max(worst_zero, zero_residual(p, w) / scale);
            }
            worst_zero = std::max(worst_zero,
                                  zero_residual(p, inv.z0) / std::max(1.0, lam / std::norm(inv.z0)));
            for (const Complex c : inv.small_crits) {
                const double scale = std::max(1.0, lam / std::pow(std::abs(c), 3));
                worst_crit = std::max(worst_crit, crit_residual(p, c) / scale);
            }
            worst_crit = std::max(worst_crit, crit_residual(p, inv.c_minus));
            worst_crit = std::max(worst_crit, crit_residual(p, inv.c_plus));
            rep.check(worst_zero < 1e-9 && worst_crit < 1e-9, tag.str() + " residuals");
            rep.check(check_annulus(p, inv), tag.str() + " annulus containment");
            rep.check(std::abs(inv.c_minus) < 1.0 && std::abs(inv.c_plus) > 1.0,
                      tag.str() + " c-/c+ split");
            rep.check(inv.pole_z_inf == Complex(2.0, 0.0), tag.str() + " pole exact");
        } catch (const std::exception& e) {
            rep.check(false, tag.str(), e.what());
        }
    }
    return rep.ok;
}

bool suite_lemma(Report& rep) {
    const ParameterPair p {Complex(0.5, 0.0), Complex(1e-5, 0.0)};
    const double throat = std::sqrt(std::abs(p.lambda) / 3.0);
    Rng rng(20240501);

    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const Complex z = rng.disk(throat);
        if (!(eval(p, z).modulus() > 2.0)) ++bad;
    }
    rep.check(bad == 0, "lemma pole-throat 1000 samples map past |z|=2");

    bad = 0;
    for (int i = 0; i < 1000; ++i) {
        ExtendedComplex z = rng.annulus(2.0, 4.0);
        for (int k = 0; k < 10; ++k) {
            z = eval(p, z);
            if (!(z.modulus() > 2.0)) {
                ++bad;
                break;
            }
        }
    }
    rep.check(bad == 0, "lemma far-field 1000 samples stay past |z|=2 for 10 iterations");

    bad = 0;
    int used = 0;
    for (int i = 0; used < 100 && i < 10000; ++i) {
        const Complex z0 = rng.disk(1.5);
        const OrbitRecord rec = iterate_orbit(p, z0, kDynamicalMaxIter);
        if (!rec.escaped) continue;
        ++used;
        ExtendedComplex z = z0;
        bool above = false;
        for (int k = 0; k <= *rec.escape_index + 10 && k < kDynamicalMaxIter; ++k) {
            if (above && !(z.modulus() > 2.0)) {
                ++bad;
                break;
            }
            if (z.modulus() > 2.0) above = true;
            z = eval(p, z);
        }
    }
    rep.check(used == 100 && bad == 0, "lemma monotone confirmation on 100 escaping orbits");

    const ParameterPair p0 {Complex(0.5, 0.0), Complex(0.0, 0.0)};
    bad = 0;
    for (int i = 0; i < 1000; ++i) {
        ExtendedComplex z = rng.disk(0.99);
        bool small = false;
        for (int k = 0; k < kDynamicalMaxIter; ++k) {
            z = eval(p0, z);
            if (z.modulus() < 1e-6) {
                small = true;
                break;
            }
        }
        if (!small) ++bad;
    }
    rep.check(bad == 0, "lambda=0 interior orbits contract to the origin");

    bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const Complex z = rng.annulus(1.01, 1.5);
        if (!escape_scan(p0, z, kDynamicalMaxIter).escaped()) ++bad;
    }
    rep.check(bad == 0, "lambda=0 exterior orbits escape");
    return rep.ok;
}

bool suite_asymptotics(Report& rep) {
    const Complex a {0.5, 0.0};
    std::vector<double> seed_err, rot_err;
    for (const double lam : {1e-5, 1e-7, 1e-9}) {
        const ParameterPair p {a, Complex(lam, 0.0)};
        const CriticalInventory inv = full_inventory(p);
        const auto seeds = small_zero_seeds(p);
        double werr = 0.0;
        for (int k = 0; k < 5; ++k) werr = std::max(werr, std::abs(inv.small_zeros[k] - seeds[k]));
        seed_err.push_back(werr / std::pow(lam, 0.2));

        const Complex base = std::exp(std::log(p.lambda / p.a) / 5.0);
        double rerr = 0.0;
        for (const Complex w : inv.small_zeros) {
            const Complex q = w / base;
            double best = INFINITY;
            for (int k = 0; k < 5; ++k)
                best = std::min(best, std::abs(q - std::polar(1.0, kTwoPi * k / 5.0)));
            rerr = std::max(rerr, best);
        }
        rot_err.push_back(rerr);
    }
    rep.check(seed_err[0] > seed_err[1] && seed_err[1] > seed_err[2],
              "normalized seed error strictly decreasing across lambda = 1e-5, 1e-7, 1e-9");
    rep.check(rot_err[0] > rot_err[1] && rot_err[1] > rot_err[2],
              "fifth-roots-of-unity deviation decreasing");
    return rep.ok;
}

bool suite_classify3(Report& rep) {
    const Complex a {0.5, 0.0};
    const struct {
        Complex lambda;
        FatouCase want;
    } cases[] = {
        {{3.022e-5, 0.0}, FatouCase::CaseA},
        {{2.8e-5, 8.4e-7}, FatouCase::CaseB},
        {{1e-5, 0.0}, FatouCase::CaseC},
    };
    for (const auto& c : cases) {
        const FatouCase got = classify({a, c.lambda});
        std::ostringstream tag;
        tag << "classify lambda=(" << c.lambda.real() << "," << c.lambda.imag() << ")";
        rep.check(got == c.want, tag.str(),
                  std::string("got ") + to_string(got) + ", want " + to_string(c.want));
    }
    return rep.ok;
}

EscapeGrid synthetic_grid(int nx, int ny) {
    EscapeGrid g;
    g.window = {Complex(0.0, 0.0), 2.2, 2.2};
    g.nx = nx;
    g.ny = ny;
    g.cells.assign(static_cast<std::size_t>(nx) * ny, GridCell {});
    return g;
}

bool suite_topology(Report& rep, int n_threads) {
    // Filled disk and annulus sanity shapes.
    {
        EscapeGrid g = synthetic_grid(128, 128);
        for (int y = 0; y < 128; ++y)
            for (int x = 0; x < 128; ++x) {
                const Complex z = g.center(x, y);
                const double r = std::abs(z);
                if (r < 0.8) g.cells[static_cast<std::size_t>(y) * 128 + x] = {1, 0};
            }
        const ComponentStats disk = component_stats(g, 64, 64);
        rep.check(disk.connectivity == 1 && disk.surrounds_origin,
                  "synthetic disk has connectivity 1");
        EscapeGrid h = synthetic_grid(128, 128);
        for (int y = 0; y < 128; ++y)
            for (int x = 0; x < 128; ++x) {
                const double r = std::abs(h.center(x, y));
                if (r > 0.5 && r < 0.9) h.cells[static_cast<std::size_t>(y) * 128 + x] = {1, 0};
            }
        int ix = 0, iy = 0;
        h.pixel_of(Complex(0.7, 0.0), ix, iy);
        const ComponentStats ann = component_stats(h, ix, iy);
        rep.check(ann.connectivity == 2 && ann.surrounds_origin,
                  "synthetic annulus has connectivity 2");
    }

    // Degree-j covering harness: rasterize the z -> z^j preimage of an
    // m-connected annulus-with-pockets and compare against j(m-2)+2.
    for (const auto& [j, m] : {std::pair {2, 3}, std::pair {3, 3}, std::pair {2, 4}}) {
        EscapeGrid g = synthetic_grid(512, 512);
        const int pockets = m - 2;
        auto in_image = [&](Complex w) {
            const double r = std::abs(w);
            if (r < 0.5 || r > 0.95) return false;
            for (int k = 0; k < pockets; ++k) {
                const Complex c = std::polar(0.72, kTwoPi * k / pockets + 0.9);
                if (std::abs(w - c) < 0.08) return false;
            }
            return true;
        };
        for (int y = 0; y < 512; ++y)
            for (int x = 0; x < 512; ++x) {
                Complex z = g.center(x, y);
                Complex w = 1.0;
                for (int k = 0; k < j; ++k) w *= z;
                if (in_image(w)) g.cells[static_cast<std::size_t>(y) * 512 + x] = {1, 0};
            }
        int ix = 0, iy = 0;
        g.pixel_of(std::polar(std::pow(0.7, 1.0 / j), 0.05), ix, iy);
        const ComponentStats st = component_stats(g, ix, iy);
        const int want = j * (m - 2) + 2;
        std::ostringstream tag;
        tag << "covering harness j=" << j << " m=" << m << " connectivity " << want;
        std::ostringstream det;
        det << "got " << st.connectivity;
        rep.check(st.connectivity == want, tag.str(), det.str());
    }

    // CaseC witnesses on the real map.
    {
        const ParameterPair p {Complex(0.5, 0.0), Complex(1e-5, 0.0)};
        const CriticalInventory inv = full_inventory(p);
        const Window w {Complex(0.0, 0.0), 2.4, 2.4};
        const EscapeGrid g = escape_grid(p, w, 2048, 2048, kDynamicalMaxIter, kDefaultRho, n_threads);
        int ix = 0, iy = 0;
        g.pixel_of(inv.c_minus, ix, iy);
        const ComponentStats cm = component_stats(g, ix, iy);
        rep.check(cm.connectivity == 3, "CaseC component of c_- has connectivity 3",
                  "got " + std::to_string(cm.connectivity));
        rep.check(cm.surrounds_origin, "CaseC component of c_- surrounds the origin");

        // Any escaped component of connectivity >= 4.
        std::vector<std::uint8_t> visited(g.cells.size(), 0);
        bool found = false;
        for (int y = 0; y < g.ny && !found; ++y) {
            for (int x = 0; x < g.nx && !found; ++x) {
                const std::size_t i = static_cast<std::size_t>(y) * g.nx + x;
                if (visited[i] || !g.cells[i].escaped()) continue;
                // flood to mark visited, remember size
                std::vector<std::int32_t> stack {static_cast<std::int32_t>(i)};
                std::vector<std::int32_t> cells;
                visited[i] = 1;
                const GridCell sig = g.cells[i];
                while (!stack.empty()) {
                    const std::int32_t cur = stack.back();
                    stack.pop_back();
                    cells.push_back(cur);
                    const int cy = cur / g.nx, cx = cur % g.nx;
                    const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
                    for (int k = 0; k < 4; ++k) {
                        const int x2 = cx + dx[k], y2 = cy + dy[k];
                        if (x2 < 0 || x2 >= g.nx || y2 < 0 || y2 >= g.ny) continue;
                        const std::size_t i2 = static_cast<std::size_t>(y2) * g.nx + x2;
                        if (visited[i2] || !(g.cells[i2] == sig)) continue;
                        visited[i2] = 1;
                        stack.push_back(static_cast<std::int32_t>(i2));
                    }
                }
                if (cells.size() < 100) continue;
                const ComponentStats st = component_stats(g, x, y);
                if (st.connectivity >= 4) found = true;
            }
        }
        rep.check(found, "CaseC plane holds an escaped component of connectivity >= 4");
    }

    // CaseA: fifty random escaped seeds, connectivity at most 2.
    {
        const ParameterPair p {Complex(0.5, 0.0), Complex(3.022e-5, 0.0)};
        const Window w {Complex(0.0, 0.0), 2.4, 2.4};
        const EscapeGrid g = escape_grid(p, w, 1024, 1024, kDynamicalMaxIter, kDefaultRho, n_threads);
        Rng rng(777);
        int bad = 0;
        for (int s = 0; s < 50; ++s) {
            int ix = 0, iy = 0;
            do {
                ix = static_cast<int>(rng.uniform() * g.nx);
                iy = static_cast<int>(rng.uniform() * g.ny);
            } while (!g.at(ix, iy).escaped());
            const ComponentStats st = component_stats(g, ix, iy);
            if (st.connectivity > 2) ++bad;
        }
        rep.check(bad == 0, "CaseA 50 random escaped components have connectivity <= 2");
    }
    return rep.ok;
}

bool suite_itinerary(Report& rep, int n_threads) {
    const ParameterPair p {Complex(0.5, 0.0), Complex(1e-5, 0.0)};
    LabelTable table = [&] {
        return label_annuli(p, 4, PolarResolution {}, ClassifierBudget {}, n_threads);
    }();
    const auto& labels = table.labels();

    int depth1 = 0, max_depth_seen = 0;
    for (const AnnulusLabel& l : labels) {
        if (l.depth == 1) ++depth1;
        max_depth_seen = std::max(max_depth_seen, l.depth);
    }
    rep.check(depth1 == 2, "exactly two depth-1 labels", "got " + std::to_string(depth1));
    rep.check(max_depth_seen >= 4, "labels found down to depth 4",
              "deepest " + std::to_string(max_depth_seen));
    rep.check(labels[0].id == 0 && labels[0].depth == 0, "label 0 is the filled critical annulus");

    auto band_point = [&](int id, int angle_bin) { return table.sample_point(id, angle_bin); };

    int computed = 0, violations = 0, no_zero_recurrence = 0;
    for (int trial = 0; computed < 100 && trial < 400; ++trial) {
        const int id = 1 + trial % (static_cast<int>(labels.size()) - 1);
        const int angle = static_cast<int>((trial * 37) % table.n_theta());
        const Complex z = band_point(id, angle);
        if (z == Complex(0.0, 0.0)) continue;
        const Itinerary it = compute_itinerary(p, table, z, 64);
        if (it.symbols.empty()) continue;
        ++computed;
        violations += static_cast<int>(check_itinerary(table, it).size());
        for (std::size_t u = 0; u < it.symbols.size(); ++u) {
            const int s = it.symbols[u];
            if (s <= 0) continue;
            const int d = labels[static_cast<std::size_t>(s)].depth;
            if (u + static_cast<std::size_t>(d) >= it.symbols.size()) continue;
            bool zero = false;
            for (std::size_t v = u + 1; v <= u + static_cast<std::size_t>(d); ++v)
                if (it.symbols[v] == 0) zero = true;
            if (!zero) ++no_zero_recurrence;
        }
    }
    rep.check(computed == 100, "computed 100 itineraries from labeled bands",
              "got " + std::to_string(computed));
    rep.check(violations == 0, "100 itineraries pass the realizability checks",
              std::to_string(violations) + " violations");
    rep.check(no_zero_recurrence == 0, "0 recurs within depth(i) steps after every symbol i");

    // Image-link consistency: 50 interior samples per band land in s(i).
    bool links_ok = true;
    std::ostringstream link_detail;
    for (const AnnulusLabel& l : labels) {
        if (l.id == 0) continue;
        int good = 0;
        for (int s = 0; s < 50; ++s) {
            const int angle = static_cast<int>((s * 211 + 17) % table.n_theta());
            const Complex z = band_point(l.id, angle);
            if (z == Complex(0.0, 0.0)) continue;
            const ExtendedComplex w = eval(p, z);
            if (!w.is_infinity() && table.find_band(w.value()) == l.image_id) ++good;
        }
        if (good < 50) {
            links_ok = false;
            link_detail << " id" << l.id << "=" << good << "/50";
        }
    }
    rep.check(links_ok, "50 sampled points per band map into the linked image band",
              links_ok ? "" : "short counts:" + link_detail.str());
    return rep.ok;
}

}  // namespace

bool run_suite(const std::string& name, std::ostream& os, int n_threads) {
    Report rep {os};
    if (name == "inventory") return suite_inventory(rep);
    if (name == "lemma") return suite_lemma(rep);
    if (name == "asymptotics") return suite_asymptotics(rep);
    if (name == "classify3") return suite_classify3(rep);
    if (name == "topology") return suite_topology(rep, n_threads);
    if (name == "itinerary") return suite_itinerary(rep, n_threads);
    if (name == "all") {
        bool ok = true;
        for (const char* s : {"inventory", "lemma", "asymptotics", "classify3", "topology", "itinerary"}) {
            os << "== " << s << " ==\n";
            ok = run_suite(s, os, n_threads) && ok;
        }
        return ok;
    }
    os << "unknown suite '" << name
       << "' (expected inventory, lemma, asymptotics, classify3, topology, itinerary, all)\n";
    return false;
}

}  // namespace blaschke
