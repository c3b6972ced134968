#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "blaschke/orbit_engine.hpp"
#include "blaschke/types.hpp"

namespace blaschke {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb& l, const Rgb& r2) {
        return l.r == r2.r && l.g == r2.g && l.b == r2.b;
    }
};

// Escape colouring runs from yellow to red on log-scaled escape index;
// non-escaped pixels are black on dynamical planes and green on parameter
// planes.
struct Palette {
    Rgb escaped_from {255, 255, 0};
    Rgb escaped_to {200, 0, 0};
    Rgb non_escaped {0, 0, 0};
    Rgb parameter_non_escape {0, 255, 0};
};

struct ImageBuffer {
    int width = 0, height = 0;
    std::vector<std::uint8_t> pixels;   // rgb triples, row major, row 0 on top

    void set(int x, int y, Rgb c) {
        const std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
        pixels[i] = c.r;
        pixels[i + 1] = c.g;
        pixels[i + 2] = c.b;
    }
    Rgb get(int x, int y) const {
        const std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
        return {pixels[i], pixels[i + 1], pixels[i + 2]};
    }
};

// Gradient position log(1+n)/log(1+max_iter); monotone in n.
Rgb escape_color(const Palette& palette, int escape_index, int max_iter);

// Escape-time colouring of the dynamical plane over the window. Rendering is
// tiled 64x64 and byte-identical for any thread count.
ImageBuffer render_dynamical(const ParameterPair& p, const Window& window, int nx, int ny,
                             int max_iter, const Palette& palette = {}, double rho = kDefaultRho,
                             int n_threads = 0);

// Parameter-plane rendering for fixed a: each pixel is a lambda; colour by
// the escape index of the refined critical point c_-(a, lambda), green when
// it does not escape.
ImageBuffer render_parameter(Complex a, const Window& lambda_window, int nx, int ny, int max_iter,
                             const Palette& palette = {}, double rho = kDefaultRho,
                             int n_threads = 0);

// Binary PPM (P6), 8-bit channels, header "P6\n<w> <h>\n255\n".
void write_ppm(std::ostream& os, const ImageBuffer& img);
void write_ppm(const std::string& path, const ImageBuffer& img);

}  // namespace blaschke
