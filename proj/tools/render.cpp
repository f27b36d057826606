#include "render.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mxl {

namespace {

constexpr int kMargin = 40;
constexpr int kSlot = 60;
constexpr int kGap = 40;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

const char* color(int strand) { return kPalette[strand % 8]; }

int y_of(int position) { return kMargin + kGap * position; }

void straight(std::ostringstream& o, int strand, int x0, int x1, int y) {
    o << "    <path d=\"M " << x0 << ' ' << y << " L " << x1 << ' ' << y << "\" stroke=\"" << color(strand)
      << "\" stroke-width=\"3\" fill=\"none\"/>\n";
}

void swap_curve(std::ostringstream& o, int strand, int x0, int x1, int y0, int y1, bool halo) {
    const int xm = (x0 + x1) / 2;
    std::ostringstream d;
    d << "M " << x0 << ' ' << y0 << " C " << xm << ' ' << y0 << ", " << xm << ' ' << y1 << ", " << x1 << ' ' << y1;
    if (halo) o << "      <path d=\"" << d.str() << "\" stroke=\"#ffffff\" stroke-width=\"9\" fill=\"none\"/>\n";
    o << "      <path d=\"" << d.str() << "\" stroke=\"" << color(strand) << "\" stroke-width=\"3\" fill=\"none\"/>\n";
}

}  // namespace

std::string render_word_svg(const BraidWord& w) {
    const int s = std::max(w.strands, 1);
    const int L = static_cast<int>(w.letters.size());
    const int width = 2 * kMargin + kSlot * std::max(L, 1);
    const int height = 2 * kMargin + kGap * (s - 1);
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 " << width << ' ' << height
      << "\" width=\"" << width << "\" height=\"" << height << "\">\n";
    o << "  <title>braid on " << s << " strands: " << (L ? w.to_string() : "trivial") << "</title>\n";
    o << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";

    std::vector<int> order(s);  // position -> starting position of the strand there
    std::iota(order.begin(), order.end(), 0);
    if (L == 0) {
        o << "  <g class=\"slot\">\n";
        for (int p = 0; p < s; ++p) straight(o, order[p], kMargin, width - kMargin, y_of(p));
        o << "  </g>\n";
    }
    for (int i = 0; i < L; ++i) {
        const int x0 = kMargin + kSlot * i, x1 = x0 + kSlot;
        const int l = w.letters[i];
        const int j = std::abs(l) - 1;
        o << "  <g class=\"slot\">\n";
        for (int p = 0; p < s; ++p)
            if (p != j && p != j + 1) straight(o, order[p], x0, x1, y_of(p));
        o << "    <g class=\"crossing\" data-letter=\"" << l << "\">\n";
        const int down = order[j], up = order[j + 1];
        if (l > 0) {
            swap_curve(o, up, x0, x1, y_of(j + 1), y_of(j), false);
            swap_curve(o, down, x0, x1, y_of(j), y_of(j + 1), true);
        } else {
            swap_curve(o, down, x0, x1, y_of(j), y_of(j + 1), false);
            swap_curve(o, up, x0, x1, y_of(j + 1), y_of(j), true);
        }
        o << "    </g>\n  </g>\n";
        std::swap(order[j], order[j + 1]);
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace mxl
