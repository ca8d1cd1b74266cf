#include <arcline/render.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

namespace arcline {

namespace {

// Fixed two-decimal formatting keeps output byte-stable.
std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

struct Canvas {
    double spacing;
    ArcShape shape;
    Site min_site;
    double baseline_y;

    double x_of(Site s) const {
        return spacing * (1.0 + static_cast<double>(s - min_site));
    }
};

void emit_arc(std::string& out, const Canvas& cv, Site a, Site b, Half half,
              const char* klass) {
    const double x1 = cv.x_of(a);
    const double x2 = cv.x_of(b);
    const double r = (x2 - x1) / 2.0;
    // SVG y grows downward: upper arcs sweep through smaller y.
    if (cv.shape == ArcShape::semicircle) {
        const int sweep = (half == Half::upper) ? 1 : 0;
        out += "  <path class=\"" + std::string(klass) + "\" d=\"M " + num(x1) + " " +
               num(cv.baseline_y) + " A " + num(r) + " " + num(r) + " 0 0 " +
               std::to_string(sweep) + " " + num(x2) + " " + num(cv.baseline_y) + "\"/>\n";
    } else {
        const double apex_y =
            cv.baseline_y + ((half == Half::upper) ? -r : r);
        out += "  <path class=\"" + std::string(klass) + "\" d=\"M " + num(x1) + " " +
               num(cv.baseline_y) + " L " + num((x1 + x2) / 2.0) + " " + num(apex_y) + " L " +
               num(x2) + " " + num(cv.baseline_y) + "\"/>\n";
    }
}

void emit_end(std::string& out, const Canvas& cv, const DanglingEnd& e, const char* klass) {
    const double x = cv.x_of(e.site);
    const double len = cv.spacing * 0.9;
    const double dx = (e.direction == Direction::left) ? -len : len;
    const double dy = (e.half == Half::upper) ? -len : len;
    out += "  <path class=\"" + std::string(klass) + "\" d=\"M " + num(x) + " " +
           num(cv.baseline_y) + " l " + num(dx) + " " + num(dy) + "\"/>\n";
}

std::string document(double width, double height, const std::string& body) {
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
           num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
    // Upper half-plane arcs are drawn above the baseline (smaller y).
    out += "  <style>.base{stroke:#888;stroke-width:1}"
           ".arc{stroke:#1a1a1a;stroke-width:1.2;fill:none}"
           ".hl{stroke:#c62828;stroke-width:2;fill:none}"
           ".end{stroke:#1a6ec6;stroke-width:1.2;fill:none;stroke-dasharray:3 2}</style>\n";
    out += body;
    out += "</svg>\n";
    return out;
}

double height_for(Site min_site, Site max_site, double spacing) {
    const double span = spacing * (static_cast<double>(max_site - min_site) + 2.0);
    return std::max(spacing * 4.0, span + 2.0 * spacing);
}

}  // namespace

std::string render_svg(const Window& w, const RenderStyle& style) {
    if (static_cast<std::uint64_t>(w.size()) > style.max_sites)
        throw SubjectTooLarge("window has too many sites to render");
    const Site min_site = w.lo;
    const Site max_site = w.size() == 0 ? w.lo : w.hi();
    const double width = style.site_spacing * (static_cast<double>(max_site - min_site) + 2.0);
    const double height = height_for(min_site, max_site, style.site_spacing);
    Canvas cv{style.site_spacing, style.arc_shape, min_site, height / 2.0};

    std::string body;
    body += "  <line class=\"base\" x1=\"0\" y1=\"" + num(cv.baseline_y) + "\" x2=\"" +
            num(width) + "\" y2=\"" + num(cv.baseline_y) + "\"/>\n";

    Decomposition d = decompose(w);
    std::unordered_set<Site> highlighted;
    if (style.highlight_origin && w.contains(*style.highlight_origin)) {
        const Site origin = *style.highlight_origin;
        for (const auto& cyc : d.internal_cycles)
            if (std::find(cyc.begin(), cyc.end(), origin) != cyc.end())
                highlighted.insert(cyc.begin(), cyc.end());
        for (const auto& p : d.boundary_paths)
            if (std::find(p.vertices.begin(), p.vertices.end(), origin) != p.vertices.end())
                highlighted.insert(p.vertices.begin(), p.vertices.end());
    }

    auto signs = [&](Half half) {
        std::vector<Sign> out;
        out.reserve(w.sites.size());
        for (const SiteState& st : w.sites) out.push_back(st.sign(half));
        return out;
    };
    for (Half half : {Half::upper, Half::lower}) {
        MatchResult mr = match_parentheses(signs(half), half, w.lo);
        for (const Arc& a : mr.arcs) {
            const bool hl = highlighted.count(a.left) != 0;
            emit_arc(body, cv, a.left, a.right, half, hl ? "hl" : "arc");
        }
        if (style.show_ends) {
            for (const DanglingEnd& e : mr.left_ends) emit_end(body, cv, e, "end");
            for (const DanglingEnd& e : mr.right_ends) emit_end(body, cv, e, "end");
        }
    }
    return document(width, height, body);
}

std::string render_svg(const ClusterTrace& t, const RenderStyle& style) {
    if (t.vertices.size() > style.max_sites)
        throw SubjectTooLarge("trace has too many sites to render");
    if (t.vertices.empty()) {
        Canvas cv{style.site_spacing, style.arc_shape, 0, 2 * style.site_spacing};
        std::string body = "  <line class=\"base\" x1=\"0\" y1=\"" + num(cv.baseline_y) +
                           "\" x2=\"" + num(4 * style.site_spacing) + "\" y2=\"" +
                           num(cv.baseline_y) + "\"/>\n";
        return document(4 * style.site_spacing, 4 * style.site_spacing, body);
    }
    const auto [mn, mx] = std::minmax_element(t.vertices.begin(), t.vertices.end());
    const double width = style.site_spacing * (static_cast<double>(*mx - *mn) + 2.0);
    const double height = height_for(*mn, *mx, style.site_spacing);
    Canvas cv{style.site_spacing, style.arc_shape, *mn, height / 2.0};

    std::string body;
    body += "  <line class=\"base\" x1=\"0\" y1=\"" + num(cv.baseline_y) + "\" x2=\"" +
            num(width) + "\" y2=\"" + num(cv.baseline_y) + "\"/>\n";
    for (const Arc& a : t.edges) emit_arc(body, cv, a.left, a.right, a.half, "hl");
    return document(width, height, body);
}

std::string render_svg(const MeanderDiagram& m, const RenderStyle& style) {
    const std::size_t points = m.upper.size();
    if (points > style.max_sites) throw SubjectTooLarge("meander has too many points to render");
    const Site max_site = points == 0 ? 1 : static_cast<Site>(points);
    const double width = style.site_spacing * (static_cast<double>(max_site) + 1.0);
    const double height = height_for(1, max_site, style.site_spacing);
    Canvas cv{style.site_spacing, style.arc_shape, 1, height / 2.0};

    std::string body;
    body += "  <line class=\"base\" x1=\"0\" y1=\"" + num(cv.baseline_y) + "\" x2=\"" +
            num(width) + "\" y2=\"" + num(cv.baseline_y) + "\"/>\n";
    for (std::size_t i = 0; i < points; ++i) {
        const auto j = static_cast<std::size_t>(m.upper[i]);
        if (j > i) emit_arc(body, cv, static_cast<Site>(i + 1), static_cast<Site>(j + 1),
                            Half::upper, "arc");
    }
    for (std::size_t i = 0; i < points; ++i) {
        const auto j = static_cast<std::size_t>(m.lower[i]);
        if (j > i) emit_arc(body, cv, static_cast<Site>(i + 1), static_cast<Site>(j + 1),
                            Half::lower, "arc");
    }
    return document(width, height, body);
}

}  // namespace arcline
