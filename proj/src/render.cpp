#include "blaschke/render.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "blaschke/critical_finder.hpp"
#include "blaschke/parallel.hpp"
#include "blaschke/rational_map.hpp"

namespace blaschke {

namespace {

constexpr int kTile = 64;

std::uint8_t lerp_channel(std::uint8_t from, std::uint8_t to, double t) {
    return static_cast<std::uint8_t>(std::lround(from + (double(to) - double(from)) * t));
}

struct TileRange {
    int x0, x1, y0, y1;
};

template <typename PixelFn>
ImageBuffer render_tiled(int nx, int ny, int n_threads, PixelFn&& pixel) {
    ImageBuffer img;
    img.width = nx;
    img.height = ny;
    img.pixels.assign(3 * static_cast<std::size_t>(nx) * ny, 0);
    const int tx = (nx + kTile - 1) / kTile;
    const int ty = (ny + kTile - 1) / kTile;
    parallel_for(tx * ty, n_threads, [&](int tile) {
        const int jx = tile % tx, jy = tile / tx;
        const TileRange r {jx * kTile, std::min(nx, (jx + 1) * kTile), jy * kTile,
                           std::min(ny, (jy + 1) * kTile)};
        for (int y = r.y0; y < r.y1; ++y)
            for (int x = r.x0; x < r.x1; ++x) img.set(x, y, pixel(x, y));
    });
    return img;
}

}  // namespace

Rgb escape_color(const Palette& palette, int escape_index, int max_iter) {
    if (escape_index < 0) return palette.non_escaped;
    const double t = std::log1p(static_cast<double>(escape_index)) /
                     std::log1p(static_cast<double>(max_iter));
    return {lerp_channel(palette.escaped_from.r, palette.escaped_to.r, t),
            lerp_channel(palette.escaped_from.g, palette.escaped_to.g, t),
            lerp_channel(palette.escaped_from.b, palette.escaped_to.b, t)};
}

ImageBuffer render_dynamical(const ParameterPair& p, const Window& window, int nx, int ny,
                             int max_iter, const Palette& palette, double rho, int n_threads) {
    require_valid(p);
    if (nx < 1 || ny < 1) throw std::domain_error("blaschke: empty image");
    return render_tiled(nx, ny, n_threads, [&](int x, int y) {
        const double re = window.center.real() - window.width / 2 + (x + 0.5) * window.width / nx;
        const double im = window.center.imag() + window.height / 2 - (y + 0.5) * window.height / ny;
        const EscapeScan s = escape_scan(p, Complex(re, im), max_iter, rho);
        return escape_color(palette, s.escape_index, max_iter);
    });
}

ImageBuffer render_parameter(Complex a, const Window& lambda_window, int nx, int ny, int max_iter,
                             const Palette& palette, double rho, int n_threads) {
    ParameterPair probe {a, Complex(0.0)};
    require_valid(probe);
    if (nx < 1 || ny < 1) throw std::domain_error("blaschke: empty image");
    const Complex cm_seed = blaschke_crits(a).first;
    return render_tiled(nx, ny, n_threads, [&](int x, int y) {
        const double re = lambda_window.center.real() - lambda_window.width / 2 +
                          (x + 0.5) * lambda_window.width / nx;
        const double im = lambda_window.center.imag() + lambda_window.height / 2 -
                          (y + 0.5) * lambda_window.height / ny;
        const ParameterPair p {a, Complex(re, im)};
        Complex cm = cm_seed;
        if (p.lambda != Complex(0.0)) {
            try {
                cm = refine_root(RootFunction::MapDerivative, p, cm_seed);
            } catch (const std::exception&) {
                // keep the unrefined continuation seed; the pixel stays total
            }
        }
        const EscapeScan s = escape_scan(p, cm, max_iter, rho);
        if (!s.escaped()) return palette.parameter_non_escape;
        return escape_color(palette, s.escape_index, max_iter);
    });
}

void write_ppm(std::ostream& os, const ImageBuffer& img) {
    os << "P6\n" << img.width << ' ' << img.height << "\n255\n";
    os.write(reinterpret_cast<const char*>(img.pixels.data()),
             static_cast<std::streamsize>(img.pixels.size()));
}

void write_ppm(const std::string& path, const ImageBuffer& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("blaschke: cannot open " + path);
    write_ppm(out, img);
    if (!out) throw std::runtime_error("blaschke: short write to " + path);
}

}  // namespace blaschke
