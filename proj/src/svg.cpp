#include "frontier_lab/svg.hpp"

#include <sstream>

#include "frontier_lab/occupancy.hpp"

namespace flab {

std::string render_svg(const Walk& walk, const FrontierCurve* frontier,
                       const RenderOptions& options) {
    PathOccupancy occ = build_occupancy(walk);
    const Rect& bb = occ.bbox();
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << bb.x0 << " " << -bb.y1 << " "
        << bb.width() << " " << bb.height() << "\">\n";
    out << "<g stroke=\"#444\" stroke-width=\"" << options.stroke_width
        << "\" stroke-linecap=\"round\">\n";
    for (const auto& [a, b] : occ.edges())
        out << "<line x1=\"" << a.x << "\" y1=\"" << -a.y << "\" x2=\"" << b.x << "\" y2=\""
            << -b.y << "\"/>\n";
    out << "</g>\n";
    if (frontier && options.draw_frontier && !frontier->vertices.empty()) {
        out << "<polyline fill=\"none\" stroke=\"#c22\" stroke-width=\""
            << options.stroke_width * 1.6 << "\" points=\"";
        for (const Vec2i& v : frontier->vertices) out << v.x << "," << -v.y << " ";
        out << "\"/>\n";
    }
    if (options.annulus) {
        const auto& an = *options.annulus;
        for (double r : {an.inner, an.outer})
            out << "<circle cx=\"" << an.center.x << "\" cy=\"" << -an.center.y << "\" r=\"" << r
                << "\" fill=\"none\" stroke=\"#2a6\" stroke-width=\"" << options.stroke_width
                << "\"/>\n";
    }
    if (options.box) {
        const Rect& r = *options.box;
        out << "<rect x=\"" << r.x0 << "\" y=\"" << -r.y1 << "\" width=\"" << r.width() - 1
            << "\" height=\"" << r.height() - 1
            << "\" fill=\"none\" stroke=\"#26c\" stroke-width=\"" << options.stroke_width
            << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace flab
